#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "twinbeam/kernel.hpp"

namespace twinbeam {

struct Eigenpairs {
    Eigen::VectorXd lambda;  // sorted by |lambda| descending
    Eigen::MatrixXd W;       // orthonormal columns (discrete, weighted space)
    Grid2D grid;
    double symmetry_residual = 0;
};

enum class PhaseTag { real, imaginary };

// Modal functions are continuous-normalized: sum |C|^2 hq hW = 1.
// C follows the sign convention (largest entry positive); D(-q, W) = sign(lambda) C(q, W),
// stored at the index of the signal point (q, W) it mirrors, so that J = sum s C D^T.
struct ModeSet {
    Grid2D grid;
    Eigen::VectorXd s;
    Eigen::VectorXd lambda;
    std::vector<PhaseTag> tag;
    Eigen::MatrixXd C;
    Eigen::MatrixXd D;

    int size() const { return int(s.size()); }
    double sign(int l) const { return lambda(l) < 0 ? -1.0 : 1.0; }
    // union-domain vectors: signal block then idler block
    Eigen::VectorXcd f_plus(int l) const;
    Eigen::VectorXcd f_minus(int l) const;
    Eigen::VectorXd signal_union(int l) const;
    Eigen::VectorXd idler_union(int l) const;
};

Eigenpairs spectral_decompose(const KernelMatrix& k);
// Eigenvalues only, sorted by |lambda| descending; consumes the matrix.
Eigen::VectorXd spectral_values(KernelMatrix&& k);

ModeSet takagi_reduce(const Eigenpairs& e);

struct SqueezingPair {
    Eigen::VectorXcd plus, minus;
};
// C and D given on the union domain with disjoint supports.
SqueezingPair squeezing_modes(const Eigen::VectorXd& C, const Eigen::VectorXd& D);

struct UnionModes {
    std::vector<Eigen::VectorXcd> modes;
};
// Multiplies each union-domain mode by exp(i k_z(q, W) length / 2).
UnionModes propagate_to_output(const UnionModes& in, const Grid2D& g, const Dispersion& d, double length);
UnionModes squeezing_spectrum(const ModeSet& m, int count);

Eigen::VectorXd svd_values(const Eigen::MatrixXd& J);

// ||J - sum_{l<count} s C D^T w|| / ||J|| on the weighted kernel
double reconstruction_error(const KernelMatrix& weighted, const ModeSet& m, int count);
// ||sum C C^T - W^{-1}|| / ||W^{-1}|| over all modes
double completeness_error(const ModeSet& m);
double orthonormality_error(const ModeSet& m, int count);

struct Orders {
    int i = 0, k = 0;
};
// spatial order from sign changes along q_x on the strongest Omega column,
// temporal order from sign changes of the ridge value along Omega
Orders classify_orders(const ModeSet& m, int l);

}  // namespace twinbeam
