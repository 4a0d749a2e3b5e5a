#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "twinbeam/gaussian.hpp"
#include "twinbeam/grid.hpp"

namespace twinbeam {

double overlap(const Eigen::VectorXd& f, const Eigen::VectorXd& g, const Grid2D& grid);
double overlap(const Eigen::VectorXcd& f, const Eigen::VectorXcd& g, double weight);

struct OverlapRow {
    int n = 0;  // 1-based linear mode number
    int i = 0, k = 0;
    double value = 0;
};

struct OverlapTable {
    std::vector<OverlapRow> rows;
    double mean_first_six = 0;
};

// Numerical mode n paired with the analytic mode of its classified orders.
OverlapTable overlap_table(const ModeSet& num, const GaussianModel& m, int count);

struct SeriesStructure {
    int first_bend = 0;                // number of values before the first slope change
    std::vector<int> bends;            // cumulative borders; entries after the first are extrapolated
    std::vector<int> series_sizes;     // M, 2M, 3M, ...
};

// Two-segment linear least-squares fit on the first differences of ln(s_n / s_1),
// breakpoint scanned exhaustively over the first `window` values.
SeriesStructure series_structure(const std::vector<double>& s, int window = 200);

// Complex field on a centred (x, t) grid; rows = x, cols = t.
struct SpatioTemporalMode {
    Axis x, t;
    Eigen::MatrixXcd F;
    int parent = -1;
};

// Input lives on the union domain (signal block then mirrored idler block) of `grid`,
// or on the signal block only (size N).
// F(x, t) = (1/2pi) sum f(q, W) exp(i (q x - W t)) hq hW
SpatioTemporalMode to_spacetime(const Eigen::VectorXcd& f, const Grid2D& grid, int pad = 2);

// Analytic F for the (i, 0) f+ mode of the Gaussian model at g -> general g.
std::complex<double> analytic_f_plus_i0(const GaussianModel& m, int i, double x, double t);

double field_norm2(const SpatioTemporalMode& st);
// sigma_1 / ||A||_F for A = |F|
double rank1_fraction(const SpatioTemporalMode& st);

struct RidgeDeflection {
    double edge_frequency = 0;  // rad/fs
    double delta_q = 0;         // argmax shift from q_d
    double width = 0;           // 2 sigma of the amplitude across q at W = 0
    double ratio = 0;
    double expected = 0;        // (2k + 3/2) g
};

// Peak of |C| along q_x at W = sqrt(4k+3)/tau, refined by a parabola through the three top samples.
RidgeDeflection ridge_deflection(const Eigen::VectorXd& C, const Grid2D& g, const GaussianModel& m, int k);

}  // namespace twinbeam
