#include "twinbeam/validity.hpp"

#include <algorithm>
#include <cmath>

#include "twinbeam/units.hpp"

namespace twinbeam {

double x_walkoff(const Setup& s, double q, double W) {
    const auto& c = s.coeffs;
    return c.k0p * W * q * s.length() / (c.k0 * c.k0);
}

double walkoff_angle(const Dispersion& d, double omega) {
    const double th = d.crystal().cut_angle;
    const double no = d.n_o(omega), ne = d.n_e(omega), nz = d.n_z(omega);
    return -nz * nz * (1 / (ne * ne) - 1 / (no * no)) * std::sin(th) * std::cos(th);
}

ValidityReport walkoff_quantities(const Setup& s) {
    ValidityReport r;
    const double L = s.length();
    const auto& c = s.coeffs;
    const auto& f = s.filter;
    r.tau_wo_max = std::abs(c.k0p - c.kpp) * L;
    r.x_wo_max = std::abs(x_walkoff(s, f.qx_max, f.Omega_max));
    r.y_wo_max = std::abs(c.k0p * f.Omega_max * f.qy_max * L / (c.k0 * c.k0));
    r.rho_p = walkoff_angle(s.disp, s.disp.omega0());
    r.rho_p_pump = walkoff_angle(s.disp, s.disp.omega_p());
    r.rho_p_L = r.rho_p * L;
    r.tau_npmpa = std::sqrt(2 * std::log(2.0)) / pi * r.tau_wo_max;
    // the y term is maximized by the sign of y_wo that adds to the pump walk-off
    const double y_term = r.y_wo_max + std::abs(r.rho_p_L);
    r.w_npmpa = std::max(r.x_wo_max, y_term) / pi;
    r.w_discrepancy = std::abs(r.w_npmpa - quoted_w_npmpa) > 0.1 * quoted_w_npmpa;
    return r;
}

ValidityReport npmpa_bounds(ValidityReport r, const PumpSpec& p) {
    r.tau_ratio = p.duration / r.tau_npmpa;
    r.w_ratio = p.waist / r.w_npmpa;
    r.tau_pass = r.tau_ratio >= pass_threshold;
    r.w_pass = r.w_ratio >= pass_threshold;
    r.tau_comfortable = r.tau_ratio >= comfortable_threshold;
    r.w_comfortable = r.w_ratio >= comfortable_threshold;
    return r;
}

}  // namespace twinbeam
