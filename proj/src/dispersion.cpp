#include "twinbeam/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "twinbeam/errors.hpp"
#include "twinbeam/units.hpp"

namespace twinbeam {

double Sellmeier::n(double lambda_um) const {
    const double l2 = lambda_um * lambda_um;
    return std::sqrt(A + B / (l2 - C) - D * l2);
}

void CrystalSpec::validate() const {
    if (!(length > 0)) throw ConfigError(fmt::format("crystal length must be positive, got {}", length));
    if (!(cut_angle > 0 && cut_angle < pi / 2))
        throw ConfigError(fmt::format("cut angle must lie in (0, pi/2), got {} rad", cut_angle));
    if (!(lambda_min > 0 && lambda_min < lambda_max))
        throw ConfigError("Sellmeier validity range is empty");
}

CrystalSpec CrystalSpec::bbo_eimerl87(double length_um, double cut_angle_rad) {
    CrystalSpec c;
    c.name = "BBO-Eimerl87";
    c.length = length_um;
    c.cut_angle = cut_angle_rad;
    c.ordinary = {2.7405, 0.0184, 0.0179, 0.0155};
    c.extraordinary = {2.3730, 0.0128, 0.0156, 0.0044};
    c.lambda_min = 0.22;
    c.lambda_max = 1.06;
    return c;
}

Dispersion::Dispersion(CrystalSpec crystal, double pump_wavelength_um)
    : crystal_(std::move(crystal)), omega_p_(2 * pi * c_light / pump_wavelength_um) {
    crystal_.validate();
}

double Dispersion::index(const Sellmeier& s, double omega) const {
    const double lambda = 2 * pi * c_light / omega;
    if (!(omega > 0) || lambda < crystal_.lambda_min || lambda > crystal_.lambda_max)
        throw DomainError(fmt::format("wavelength {:.4f} um outside Sellmeier range [{}, {}] um", lambda,
                                      crystal_.lambda_min, crystal_.lambda_max));
    return s.n(lambda);
}

double Dispersion::n_o(double omega) const { return index(crystal_.ordinary, omega); }
double Dispersion::n_e(double omega) const { return index(crystal_.extraordinary, omega); }

double Dispersion::n_z(double omega) const {
    const double s = std::sin(crystal_.cut_angle), c = std::cos(crystal_.cut_angle);
    const double no = n_o(omega), ne = n_e(omega);
    return 1.0 / std::sqrt(s * s / (ne * ne) + c * c / (no * no));
}

double Dispersion::k(double Omega) const {
    const double w = omega0() + Omega;
    return n_o(w) * w / c_light;
}

double Dispersion::k_z(QVec q, double Omega) const {
    const double kk = k(Omega);
    const double arg = kk * kk - q.x * q.x - q.y * q.y;
    if (arg < 0) throw DomainError(fmt::format("evanescent wave: |q| exceeds k = {}", kk));
    return std::sqrt(arg);
}

double Dispersion::k_pz(QVec q, double Omega) const {
    const double w = omega_p_ + Omega;
    const double no = n_o(w), ne = n_e(w);
    const double nz = n_z(w);
    const double s = std::sin(crystal_.cut_angle), c = std::cos(crystal_.cut_angle);
    const double nz2 = nz * nz, no2 = no * no, ne2 = ne * ne;
    const double arg = nz2 * w * w / (c_light * c_light) - nz2 * q.x * q.x / ne2 - nz2 * nz2 * q.y * q.y / (no2 * ne2);
    if (arg < 0) throw DomainError("pump wave-vector: negative discriminant");
    return (nz2 / no2 - nz2 / ne2) * q.y * s * c + std::sqrt(arg);
}

namespace {

struct Deriv {
    double d0, d1, d2;
};

template <class F>
Deriv central(F f, double h) {
    const double fm = f(-h), f0 = f(0.0), fp = f(h);
    return {f0, (fp - fm) / (2 * h), (fp - 2 * f0 + fm) / (h * h)};
}

double rel_change(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

DispersionCoeffs taylor_coefficients(const Dispersion& d, double h0) {
    auto ks = [&](double W) { return d.k(W); };
    auto kp = [&](double W) { return d.k_pz({}, W); };
    double h = h0;
    Deriv a = central(ks, h), b = central(kp, h);
    double last = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 12; ++it) {
        const double hh = h / 2;
        Deriv a2 = central(ks, hh), b2 = central(kp, hh);
        const double change = std::max({rel_change(a2.d1, a.d1), rel_change(a2.d2, a.d2), rel_change(b2.d1, b.d1)});
        // stop halving once rounding error starts to dominate
        if (change >= last) break;
        a = a2;
        b = b2;
        h = hh;
        last = change;
        if (change < 1e-6) break;
    }
    DispersionCoeffs r;
    r.k0 = a.d0;
    r.k0p = a.d1;
    r.k0pp = a.d2;
    r.kp = b.d0;
    r.kpp = b.d1;
    r.step = h;
    return r;
}

}  // namespace twinbeam
