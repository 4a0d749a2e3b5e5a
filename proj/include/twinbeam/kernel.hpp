#pragma once

#include <Eigen/Dense>

#include "twinbeam/grid.hpp"
#include "twinbeam/setup.hpp"

namespace twinbeam {

// J[signal point (q, W), idler point (-q', W')], both indexed through the same Grid2D.
struct KernelMatrix {
    Eigen::MatrixXd J;
    Grid2D grid;
    bool weighted = false;
};

double pump_amplitude(const PumpSpec& p, QVec q_sum, double W_sum);

// Exact dispersion, q_y = q_y' = 0.
KernelMatrix build_jsa(const Grid2D& grid, const Setup& s);
KernelMatrix apply_quadrature(KernelMatrix k);

// Weighted kernel in one step without keeping the unweighted copy.
KernelMatrix build_weighted_jsa(const Grid2D& grid, const Setup& s);

// max |J - J^T| / max |J|
double symmetry_residual(const Eigen::MatrixXd& J);

}  // namespace twinbeam
