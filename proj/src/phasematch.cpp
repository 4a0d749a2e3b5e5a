#include "twinbeam/phasematch.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <fmt/format.h>

#include "twinbeam/errors.hpp"
#include "twinbeam/units.hpp"

namespace twinbeam {

double PumpSpec::Omega_p() const { return std::sqrt(2 * std::log(2.0)) / duration; }

void PumpSpec::validate() const {
    if (!(wavelength > 0)) throw ConfigError("pump wavelength must be positive");
    if (!(duration > 0)) throw ConfigError("pump duration must be positive");
    if (!(waist > 0)) throw ConfigError("pump waist must be positive");
}

void FilterSpec::validate() const {
    if (!(qx_min > 0)) throw ConfigError(fmt::format("qx_min must be positive, got {}", qx_min));
    if (!(qx_min < qx_max))
        throw ConfigError(fmt::format("qx_min ({}) must be below qx_max ({})", qx_min, qx_max));
    if (!(Omega_max > 0)) throw ConfigError("omega_max must be positive");
    if (qy_max < 0) throw ConfigError("qy_max must be non-negative");
}

double sinc(double x) {
    if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

PqdaParams pqda_geometry(const DispersionCoeffs& c, double length) {
    if (!(length > 0)) throw ConfigError("crystal length must be positive");
    PqdaParams p;
    p.gamma = (2 * c.k0 - c.kp) * length / 2;
    if (c.kp > 2 * c.k0) throw DomainError("pump wave-number exceeds 2 k0: no noncollinear matching");
    p.theta_s = std::acos(c.kp / (2 * c.k0));
    p.Q0 = std::sqrt(c.k0 / length);
    p.Omega0 = std::sqrt(1.0 / (c.k0pp * length));
    p.q_d = std::sqrt(2 * p.gamma) * p.Q0;
    p.eta_s = std::sqrt(2.0) * sigma_s * p.Q0 * p.Q0 / p.q_d;
    p.w0 = 1.0 / p.eta_s;
    return p;
}

PqdaParams pqda_params(const DispersionCoeffs& c, double length, const FilterSpec& filter) {
    PqdaParams p = pqda_geometry(c, length);
    p.Omega_max = filter.Omega_max;
    p.tau0 = std::sqrt(2 * std::log(2.0)) / p.Omega_max;
    return p;
}

FilterSpec default_filter(const PqdaParams& g, double qy_max) {
    FilterSpec f;
    f.qx_min = g.q_d - 2 * g.eta_s;
    f.qx_max = g.q_d + 2 * g.Q0;
    f.qy_max = qy_max;
    f.Omega_max = omega_pm(g, f.qx_max);
    return f;
}

double mismatch(const Dispersion& d, QVec q, double W, QVec q2, double W2) {
    return d.k_z(q, W) + d.k_z(q2, W2) - d.k_pz({q.x + q2.x, q.y + q2.y}, W + W2);
}

double phi0(const Dispersion& d, const PqdaParams& p, QVec q, double W, Model m) {
    if (m == Model::pqda) {
        const double q2 = q.x * q.x + q.y * q.y;
        return sinc(p.gamma + W * W / (2 * p.Omega0 * p.Omega0) - q2 / (2 * p.Q0 * p.Q0));
    }
    const double L = d.crystal().length;
    return sinc(mismatch(d, q, W, {-q.x, -q.y}, -W) * L / 2);
}

double omega_pm(const PqdaParams& p, double q_abs) {
    if (q_abs < p.q_d) throw DomainError(fmt::format("|q| = {} below q_d = {}: no matched frequency", q_abs, p.q_d));
    return p.Omega0 * std::sqrt(std::max(0.0, q_abs * q_abs / (p.Q0 * p.Q0) - 2 * p.gamma));
}

double qx_pm(const PqdaParams& p, double qy, double W) {
    return p.q_d + p.Q0 * p.Q0 / (2 * p.Omega0 * p.Omega0 * p.q_d) * W * W - qy * qy / (2 * p.q_d);
}

double exact_matched_q(const Dispersion& d, double W) {
    auto f = [&](double q) { return mismatch(d, {q, 0}, W, {-q, 0}, -W); };
    double lo = 0.0, hi = 0.5 * std::min(d.k(W), d.k(-W));
    if (f(lo) * f(hi) > 0) throw DomainError("no exact matched transverse wave-vector at this frequency");
    std::uintmax_t iters = 200;
    auto r = boost::math::tools::toms748_solve(f, lo, hi, boost::math::tools::eps_tolerance<double>(50), iters);
    return 0.5 * (r.first + r.second);
}

}  // namespace twinbeam
