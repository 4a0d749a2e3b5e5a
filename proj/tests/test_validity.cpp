#include <doctest.h>

#include "common.hpp"
#include "twinbeam/validity.hpp"

using namespace twinbeam;

namespace {

// extraordinary index at propagation angle th, from the index ellipse
double n_theta(const Dispersion& d, double omega, double th) {
    const double no = d.n_o(omega), ne = d.n_e(omega);
    return 1 / std::sqrt(std::cos(th) * std::cos(th) / (no * no) + std::sin(th) * std::sin(th) / (ne * ne));
}

}  // namespace

TEST_CASE("walk-off quantities for the BBO crystal") {
    const ValidityReport r = walkoff_quantities(long_setup());
    CHECK(r.tau_npmpa == doctest::Approx(141).epsilon(0.05));
    CHECK(r.x_wo_max == doctest::Approx(15).epsilon(0.10));
    CHECK(r.y_wo_max == doctest::Approx(0.24).epsilon(0.15));
    CHECK(r.rho_p < 0);
    CHECK(r.rho_p_pump < 0);
    CHECK(r.tau_npmpa == doctest::Approx(std::sqrt(2 * std::log(2.0)) / pi * r.tau_wo_max));
}

TEST_CASE("pump walk-off angle agrees with the slope of the index ellipse") {
    const Dispersion& d = long_setup().disp;
    const double th = d.crystal().cut_angle, h = 1e-6;
    for (double w : {d.omega0(), d.omega_p()}) {
        const double slope = (n_theta(d, w, th + h) - n_theta(d, w, th - h)) / (2 * h);
        CHECK(walkoff_angle(d, w) == doctest::Approx(slope / n_theta(d, w, th)).epsilon(1e-6));
    }
}

TEST_CASE("w bound follows the printed formula and is flagged against the quoted value") {
    const ValidityReport r = walkoff_quantities(long_setup());
    const double y_term = r.y_wo_max + std::abs(r.rho_p * long_setup().length());
    const double w = std::max(r.x_wo_max, y_term) / pi;
    CHECK(r.w_npmpa == doctest::Approx(w).epsilon(1e-12));
    MESSAGE("w bound " << r.w_npmpa << " um, quoted " << quoted_w_npmpa << " um, delta " << r.w_npmpa - quoted_w_npmpa);
    CHECK(r.w_discrepancy);
}

TEST_CASE("walk-off quantities scale linearly with crystal length") {
    const Setup a = make_setup(CrystalSpec::bbo_eimerl87(2000, deg(29.62)), long_setup().pump, {});
    const Setup b = make_setup(CrystalSpec::bbo_eimerl87(4000, deg(29.62)), long_setup().pump, {});
    // keep the filter fixed so only L changes
    Setup b2 = b;
    b2.filter = a.filter;
    const ValidityReport ra = walkoff_quantities(a), rb = walkoff_quantities(b2);
    CHECK(rb.tau_wo_max == doctest::Approx(2 * ra.tau_wo_max));
    CHECK(rb.x_wo_max == doctest::Approx(2 * ra.x_wo_max));
    CHECK(rb.y_wo_max == doctest::Approx(2 * ra.y_wo_max));
    CHECK(rb.rho_p_L == doctest::Approx(2 * ra.rho_p_L));
}

TEST_CASE("largest spatial walk-off sits at the filter corner") {
    const Setup& s = long_setup();
    const double corner = std::abs(x_walkoff(s, s.filter.qx_max, s.filter.Omega_max));
    double best = 0;
    for (int i = 0; i <= 20; ++i)
        for (int j = 0; j <= 20; ++j) {
            const double q = s.filter.qx_min + (s.filter.qx_max - s.filter.qx_min) * i / 20.0;
            const double W = -s.filter.Omega_max + 2 * s.filter.Omega_max * j / 20.0;
            best = std::max(best, std::abs(x_walkoff(s, q, W)));
        }
    CHECK(best == doctest::Approx(corner));
    CHECK(walkoff_quantities(s).x_wo_max == doctest::Approx(corner));
}

TEST_CASE("pass and comfortable flags") {
    const ValidityReport l = npmpa_bounds(walkoff_quantities(long_setup()), long_setup().pump);
    CHECK(l.tau_pass);
    CHECK(l.w_pass);
    CHECK(l.w_comfortable);
    CHECK(l.tau_ratio == doctest::Approx(280 / l.tau_npmpa));
    const ValidityReport s = npmpa_bounds(walkoff_quantities(short_setup()), short_setup().pump);
    CHECK_FALSE(s.tau_pass);
    CHECK(s.tau_ratio < 1);
    MESSAGE("short pump: tau ratio " << s.tau_ratio << ", w ratio " << s.w_ratio);
}
