#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "twinbeam/decomposition.hpp"
#include "twinbeam/grid.hpp"
#include "twinbeam/setup.hpp"

namespace twinbeam {

struct GaussianModel {
    double mu = 0;
    double r_x = 0, r_t = 0;
    double xi_x = 0, xi_t = 0;
    double u = 0;    // um
    double tau = 0;  // fs
    double g = 0;
    double norm = 0;  // 2D normalization, units of A0
    double q_d = 0;
    // y dimension, present only when r_y > 1
    std::optional<double> r_y, xi_y, v;
};

GaussianModel model_params(const Setup& s, double mu);
// g from pump and crystal parameters, using sin(theta_s) and k0''
double coupling_from_experiment(const Setup& s, double mu);

std::vector<double> mehler_singular_values(double xi, int n_max);
// (1/sqrt(pi)) exp(-(1+xi)/(1-xi) (x+y)^2/4 - (1-xi)/(1+xi) (x-y)^2/4)
double double_gaussian(double xi, double x, double y);

struct ModeLabel {
    int i = 0, k = 0;
    double value = 0;  // s / N
};
// analytic singular values N xi_x^i xi_t^k (j = 0) sorted descending
std::vector<ModeLabel> analytic_spectrum(const GaussianModel& m, int count);

// Unit-norm (continuous) modal functions on the signal grid; the idler function is
// evaluated at the mirrored points (-q_x, W) and stored at the signal index.
Eigen::VectorXd analytic_signal(const GaussianModel& m, const Grid2D& g, int i, int k);
Eigen::VectorXd analytic_idler(const GaussianModel& m, const Grid2D& g, int i, int k);

struct SchmidtReport {
    // K is the x-t product; y stays in its zeroth-order mode in the 2D reduction
    double K_x = 0, K_t = 0, K = 0;
    std::optional<double> K_y;
    double K_3d = 0;             // K times K_y when the y filter admits more than one mode
    bool y_single_mode = true;   // K_y below the 2D rounding threshold
    double K0 = 0, K0p = 0;
    double M = 0;
    std::vector<int> predicted_bends;  // cumulative series borders M, 3M, 6M, ...
    double s_dis_1d = 0, s_dis_2d = 0;
};

double schmidt_number(double xi);
SchmidtReport schmidt_numbers(const GaussianModel& m);

struct Thresholds {
    double K0 = 0, K0p = 0;
    double xi_x = 0, xi_y = 0;  // xi = sqrt((K-1)/(K+1))
};
Thresholds rounding_thresholds();

struct Disregarded {
    double one_d = 0, one_d_limit = 0;
    double two_d = 0, two_d_limit = 0;
};
// 1D: ((K-1)/(K+1))^{K/2}; 2D: xi_x^{sqrt(2) K_x} with xi_x from K_x
Disregarded disregarded_values(double K, double K_x);

struct MuFit {
    double mu = 0;
    double mean_overlap = 0;
    std::vector<double> overlaps;
    bool at_boundary = false;
    // bend-matching alternative
    int numerical_bend = 0;
    double mu_bend = 0;
    double M_bend = 0;
};

struct MuFitOptions {
    double lo = 0.3, hi = 5.0;
    int modes = 6;
    double scan_step = 0.05;
};

double mean_overlap(const ModeSet& num, const Setup& s, double mu, int modes, std::vector<double>* each = nullptr);
MuFit fit_mu(const ModeSet& num, const Setup& s, const MuFitOptions& o = {});
// mu such that floor(M) + 1 equals the numerical first-series length
double mu_for_bend(const Setup& s, int first_series);

}  // namespace twinbeam
