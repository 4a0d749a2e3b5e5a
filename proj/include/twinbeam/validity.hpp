#pragma once

#include "twinbeam/setup.hpp"

namespace twinbeam {

inline constexpr double pass_threshold = 1.0;
inline constexpr double comfortable_threshold = 2.0;
inline constexpr double quoted_w_npmpa = 21.4;  // um, value quoted for the BBO case

struct ValidityReport {
    double tau_wo_max = 0;  // fs
    double x_wo_max = 0;    // um
    double y_wo_max = 0;    // um
    double rho_p = 0;       // rad, closed form with indices at omega0
    double rho_p_L = 0;     // um
    double rho_p_pump = 0;  // rad, same closed form with indices at omega_p
    double tau_npmpa = 0;   // fs
    double w_npmpa = 0;     // um

    // filled by npmpa_bounds for a given pump
    double tau_ratio = 0, w_ratio = 0;
    bool tau_pass = false, w_pass = false;
    bool tau_comfortable = false, w_comfortable = false;
    bool w_discrepancy = false;  // w_npmpa differs from the quoted value by more than 10%
};

// x_wo(q, W) = k0' W q L / k0^2 for signal point (q, W)
double x_walkoff(const Setup& s, double q, double W);
double walkoff_angle(const Dispersion& d, double omega);

ValidityReport walkoff_quantities(const Setup& s);
ValidityReport npmpa_bounds(ValidityReport r, const PumpSpec& p);

}  // namespace twinbeam
