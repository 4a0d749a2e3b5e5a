#include "twinbeam/io.hpp"

#include <bit>
#include <cstring>
#include <fmt/format.h>
#include <fstream>
#include <sstream>

#include "twinbeam/errors.hpp"

namespace twinbeam {

std::string num(double v) { return fmt::format("{:.10g}", v); }

namespace {

std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::out) {
    std::ofstream f(path, mode);
    if (!f) throw std::runtime_error(fmt::format("cannot write {}", path));
    return f;
}

uint64_t to_le(uint64_t v) {
    if constexpr (std::endian::native == std::endian::little) return v;
    uint64_t r = 0;
    for (int i = 0; i < 8; ++i) r |= ((v >> (8 * i)) & 0xff) << (8 * (7 - i));
    return r;
}

}  // namespace

void write_grid_bin(const std::string& path, const GridFile& g) {
    auto f = open_out(path, std::ios::out | std::ios::binary);
    f << fmt::format("{} {} {:.17g} {:.17g} {:.17g} {:.17g}\n", g.data.rows(), g.data.cols(), g.rows.start,
                     g.rows.step, g.cols.start, g.cols.step);
    for (Eigen::Index r = 0; r < g.data.rows(); ++r)
        for (Eigen::Index c = 0; c < g.data.cols(); ++c) {
            const uint64_t bits = to_le(std::bit_cast<uint64_t>(g.data(r, c)));
            f.write(reinterpret_cast<const char*>(&bits), 8);
        }
}

GridFile read_grid_bin(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error(fmt::format("cannot read {}", path));
    std::string header;
    std::getline(f, header);
    std::istringstream hs(header);
    long rows = 0, cols = 0;
    GridFile g;
    if (!(hs >> rows >> cols >> g.rows.start >> g.rows.step >> g.cols.start >> g.cols.step))
        throw ConfigError(fmt::format("{}: malformed grid header", path));
    g.rows.n = int(rows);
    g.cols.n = int(cols);
    g.data.resize(rows, cols);
    for (long r = 0; r < rows; ++r)
        for (long c = 0; c < cols; ++c) {
            uint64_t bits;
            if (!f.read(reinterpret_cast<char*>(&bits), 8)) throw ConfigError(fmt::format("{}: truncated payload", path));
            g.data(r, c) = std::bit_cast<double>(to_le(bits));
        }
    return g;
}

void write_grid_csv(const std::string& path, const GridFile& g, const std::string& units) {
    auto f = open_out(path);
    f << "# " << units << "\n";
    f << fmt::format("# rows {} start {:.10g} step {:.10g}; cols {} start {:.10g} step {:.10g}\n", g.data.rows(),
                     g.rows.start, g.rows.step, g.data.cols(), g.cols.start, g.cols.step);
    for (Eigen::Index r = 0; r < g.data.rows(); ++r) {
        for (Eigen::Index c = 0; c < g.data.cols(); ++c) f << (c ? "," : "") << num(g.data(r, c));
        f << "\n";
    }
}

void CsvTable::write(const std::string& path) const {
    auto f = open_out(path);
    if (!units.empty()) f << "# " << units << "\n";
    for (size_t i = 0; i < columns.size(); ++i) f << (i ? "," : "") << columns[i];
    f << "\n";
    for (const auto& r : rows) {
        for (size_t i = 0; i < r.size(); ++i) f << (i ? "," : "") << r[i];
        f << "\n";
    }
}

}  // namespace twinbeam
