#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "twinbeam/grid.hpp"

namespace twinbeam {

struct GridFile {
    Eigen::MatrixXd data;  // rows x cols
    Axis rows, cols;
};

// One-line ASCII header "rows cols x0 dx y0 dy", then little-endian float64 row-major.
void write_grid_bin(const std::string& path, const GridFile& g);
GridFile read_grid_bin(const std::string& path);
// units: one comment line naming the axes and the value
void write_grid_csv(const std::string& path, const GridFile& g, const std::string& units);

struct CsvTable {
    std::string units;  // written as the first comment line
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add(std::vector<std::string> r) { rows.push_back(std::move(r)); }
    void write(const std::string& path) const;
};

std::string num(double v);

}  // namespace twinbeam
