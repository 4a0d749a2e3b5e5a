#pragma once

#include "twinbeam/dispersion.hpp"
#include "twinbeam/specs.hpp"

namespace twinbeam {

struct PqdaParams {
    double gamma = 0;      // rad
    double q_d = 0;        // rad/um
    double theta_s = 0;    // rad
    double Omega0 = 0;     // rad/fs
    double Q0 = 0;         // rad/um
    double eta_s = 0;      // rad/um
    double Omega_max = 0;  // rad/fs
    double tau0 = 0;       // fs
    double w0 = 0;         // um
};

enum class Model { exact, pqda };

// Filter-independent part: Omega_max and tau0 are left at zero.
PqdaParams pqda_geometry(const DispersionCoeffs& c, double length);
PqdaParams pqda_params(const DispersionCoeffs& c, double length, const FilterSpec& filter);

// Mirror regions q_d - 2 eta_s .. q_d + 2 Q0, cutoff at the matched frequency of the outer edge.
FilterSpec default_filter(const PqdaParams& geom, double qy_max);

double mismatch(const Dispersion& d, QVec q, double W, QVec q2, double W2);
double phi0(const Dispersion& d, const PqdaParams& p, QVec q, double W, Model m = Model::exact);
double omega_pm(const PqdaParams& p, double q_abs);
double qx_pm(const PqdaParams& p, double qy, double W);

// |q| on the exact matched surface Delta(q, W, -q, -W) = 0.
double exact_matched_q(const Dispersion& d, double W);

double sinc(double x);

}  // namespace twinbeam
