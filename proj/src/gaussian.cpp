#include "twinbeam/gaussian.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <fmt/format.h>
#include <queue>

#include "twinbeam/analysis.hpp"
#include "twinbeam/errors.hpp"
#include "twinbeam/hermite.hpp"
#include "twinbeam/units.hpp"

namespace twinbeam {

namespace {
double xi_of(double r) { return (r - 1) / (r + 1); }
}  // namespace

GaussianModel model_params(const Setup& s, double mu) {
    if (!(mu > 0)) throw DomainError("mu must be positive");
    const PqdaParams& p = s.pqda;
    const double qp = s.pump.q_p(), Wp = s.pump.Omega_p();
    GaussianModel m;
    m.mu = mu;
    m.q_d = p.q_d;
    m.r_x = p.eta_s / qp;
    m.r_t = mu * p.Omega_max / Wp;
    if (m.r_x <= 1)
        throw ModelInapplicable(fmt::format("r_x = {:.4f} <= 1: pump waist below the phase-matching width", m.r_x));
    if (m.r_t <= 1)
        throw ModelInapplicable(fmt::format("r_t = {:.4f} <= 1: pump bandwidth exceeds the filtered band", m.r_t));
    m.xi_x = xi_of(m.r_x);
    m.xi_t = xi_of(m.r_t);
    m.u = 1.0 / std::sqrt(p.eta_s * qp);
    m.tau = 1.0 / std::sqrt(mu * p.Omega_max * Wp);
    m.g = m.u * p.Q0 * p.Q0 / (2 * m.tau * m.tau * p.Omega0 * p.Omega0 * p.q_d);
    m.norm = pi * s.pump.amplitude * std::sqrt((1 - m.xi_x * m.xi_x) * (1 - m.xi_t * m.xi_t)) / (m.u * m.tau);
    const double ry = mu * s.filter.qy_max / qp;
    if (ry > 1) {
        m.r_y = ry;
        m.xi_y = xi_of(ry);
        m.v = 1.0 / std::sqrt(mu * s.filter.qy_max * qp);
    }
    return m;
}

double coupling_from_experiment(const Setup& s, double mu) {
    const double N0 = pi * std::sqrt(std::log(2.0) / (std::pow(2.0, 1.5) * sigma_s));
    return N0 * s.coeffs.k0pp * mu * std::sqrt(s.pump.waist * s.length()) * s.pqda.Omega_max /
           (pi * s.pump.duration * std::sqrt(std::sin(s.pqda.theta_s)));
}

std::vector<double> mehler_singular_values(double xi, int n_max) {
    if (!(xi >= 0 && xi < 1)) throw DomainError(fmt::format("xi = {} outside [0, 1)", xi));
    std::vector<double> s(n_max + 1);
    const double a = std::sqrt(1 - xi * xi);
    for (int n = 0; n <= n_max; ++n) s[n] = a * std::pow(xi, n);
    return s;
}

double double_gaussian(double xi, double x, double y) {
    const double p = (x + y) * (x + y), m = (x - y) * (x - y);
    return std::exp(-0.25 * (1 + xi) / (1 - xi) * p - 0.25 * (1 - xi) / (1 + xi) * m) / std::sqrt(pi);
}

std::vector<ModeLabel> analytic_spectrum(const GaussianModel& m, int count) {
    // merge of the geometric rows i = 0, 1, 2, ...
    std::vector<ModeLabel> out;
    auto cmp = [](const ModeLabel& a, const ModeLabel& b) {
        if (a.value != b.value) return a.value < b.value;
        return a.i > b.i;
    };
    std::priority_queue<ModeLabel, std::vector<ModeLabel>, decltype(cmp)> pq(cmp);
    pq.push({0, 0, 1.0});
    while (int(out.size()) < count && !pq.empty()) {
        ModeLabel t = pq.top();
        pq.pop();
        out.push_back(t);
        pq.push({t.i, t.k + 1, t.value * m.xi_t});
        if (t.k == 0) pq.push({t.i + 1, 0, t.value * m.xi_x});
    }
    return out;
}

namespace {

Eigen::VectorXd modal(const GaussianModel& m, const Grid2D& g, int i, int k, bool idler) {
    if (i > max_hermite_order || k > max_hermite_order)
        throw DomainError(fmt::format("Hermite order ({}, {}) exceeds {}", i, k, max_hermite_order));
    Eigen::VectorXd f(g.size());
    const double amp = std::sqrt(m.u * m.tau);
    const double sgn = ((i + k) % 2) ? -1.0 : 1.0;
    for (int j = 0; j < g.nW(); ++j) {
        const double W = g.Omega(j);
        const double hk = hermite_functions(k, m.tau * W).back();
        const double bend = m.g * m.tau * m.tau * W * W;
        for (int a = 0; a < g.nq(); ++a) {
            const double q = g.q(a);
            double v;
            if (!idler)
                v = hermite_functions(i, m.u * q - m.u * m.q_d - bend).back();
            else
                v = sgn * hermite_functions(i, m.u * (-q) + m.u * m.q_d + bend).back();
            f(g.index(a, j)) = v * hk * amp;
        }
    }
    return f;
}

}  // namespace

Eigen::VectorXd analytic_signal(const GaussianModel& m, const Grid2D& g, int i, int k) {
    return modal(m, g, i, k, false);
}

Eigen::VectorXd analytic_idler(const GaussianModel& m, const Grid2D& g, int i, int k) {
    return modal(m, g, i, k, true);
}

double schmidt_number(double xi) { return (1 + xi * xi) / (1 - xi * xi); }

Thresholds rounding_thresholds() {
    using boost::math::tools::toms748_solve;
    auto rhs = [](double K) { return std::sqrt((K - 1) / (K + 1)); };
    auto f0 = [&](double K) { return std::exp(-K) - rhs(K); };
    auto f1 = [&](double K) { return std::exp(-std::sqrt(2 * K)) - rhs(K); };
    boost::math::tools::eps_tolerance<double> tol(40);
    std::uintmax_t it = 200;
    auto r0 = toms748_solve(f0, 1.0 + 1e-12, 3.0, tol, it);
    it = 200;
    auto r1 = toms748_solve(f1, 1.0 + 1e-12, 3.0, tol, it);
    Thresholds t;
    t.K0 = 0.5 * (r0.first + r0.second);
    t.K0p = 0.5 * (r1.first + r1.second);
    t.xi_x = rhs(t.K0);
    t.xi_y = rhs(t.K0p);
    return t;
}

Disregarded disregarded_values(double K, double K_x) {
    Disregarded d;
    d.one_d = std::pow((K - 1) / (K + 1), K / 2);
    d.one_d_limit = std::exp(-1.0);
    d.two_d = std::pow(std::sqrt((K_x - 1) / (K_x + 1)), std::sqrt(2.0) * K_x);
    d.two_d_limit = std::exp(-std::sqrt(2.0));
    return d;
}

SchmidtReport schmidt_numbers(const GaussianModel& m) {
    SchmidtReport r;
    r.K_x = schmidt_number(m.xi_x);
    r.K_t = schmidt_number(m.xi_t);
    r.K = r.K_x * r.K_t;
    r.K_3d = r.K;
    if (m.xi_y) {
        r.K_y = schmidt_number(*m.xi_y);
        r.K_3d *= *r.K_y;
    }
    Thresholds t = rounding_thresholds();
    r.K0 = t.K0;
    r.K0p = t.K0p;
    r.y_single_mode = !r.K_y || *r.K_y < t.K0p;
    r.M = std::log(m.xi_x) / std::log(m.xi_t);
    int total = 0;
    for (int j = 1; j <= 4; ++j) {
        total += int(std::round(j * r.M));
        r.predicted_bends.push_back(total);
    }
    Disregarded d = disregarded_values(r.K, r.K_x);
    r.s_dis_1d = d.one_d;
    r.s_dis_2d = d.two_d;
    return r;
}

double mean_overlap(const ModeSet& num, const Setup& s, double mu, int modes, std::vector<double>* each) {
    GaussianModel m = model_params(s, mu);
    std::vector<ModeLabel> labels = analytic_spectrum(m, modes);
    double sum = 0;
    if (each) each->clear();
    for (int n = 0; n < modes; ++n) {
        Eigen::VectorXd a = analytic_signal(m, num.grid, labels[n].i, labels[n].k);
        a /= std::sqrt(a.squaredNorm() * num.grid.weight());
        const double o = overlap(num.C.col(n), a, num.grid);
        if (each) each->push_back(o);
        sum += o;
    }
    return sum / modes;
}

double mu_for_bend(const Setup& s, int first_series) {
    GaussianModel m = model_params(s, 1.0);
    const double M = first_series - 0.5;
    const double xi_t = std::exp(std::log(m.xi_x) / M);
    const double r_t = (1 + xi_t) / (1 - xi_t);
    return r_t * s.pump.Omega_p() / s.pqda.Omega_max;
}

MuFit fit_mu(const ModeSet& num, const Setup& s, const MuFitOptions& o) {
    auto objective = [&](double mu) {
        try {
            return -mean_overlap(num, s, mu, o.modes);
        } catch (const ModelInapplicable&) {
            return 0.0;
        }
    };
    double best = o.lo, fbest = objective(o.lo);
    const int steps = int(std::ceil((o.hi - o.lo) / o.scan_step));
    for (int t = 1; t <= steps; ++t) {
        const double mu = std::min(o.hi, o.lo + t * o.scan_step);
        const double f = objective(mu);
        if (f < fbest) fbest = f, best = mu;
    }
    MuFit r;
    const double a = std::max(o.lo, best - o.scan_step), b = std::min(o.hi, best + o.scan_step);
    std::uintmax_t it = 100;
    auto res = boost::math::tools::brent_find_minima(objective, a, b, 30, it);
    r.mu = res.second < fbest ? res.first : best;
    r.at_boundary = std::abs(r.mu - o.lo) < 1e-3 || std::abs(r.mu - o.hi) < 1e-3;
    r.mean_overlap = mean_overlap(num, s, r.mu, o.modes, &r.overlaps);

    std::vector<double> sv(num.s.data(), num.s.data() + std::min(num.size(), 400));
    SeriesStructure st = series_structure(sv);
    r.numerical_bend = st.first_bend;
    r.mu_bend = mu_for_bend(s, st.first_bend);
    r.M_bend = st.first_bend - 0.5;
    return r;
}

}  // namespace twinbeam
