#include "twinbeam/analysis.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "twinbeam/errors.hpp"
#include "twinbeam/hermite.hpp"
#include "twinbeam/units.hpp"

namespace twinbeam {

double overlap(const Eigen::VectorXd& f, const Eigen::VectorXd& g, const Grid2D& grid) {
    if (f.size() != g.size() || (f.size() != grid.size() && f.size() != 2 * grid.size()))
        throw ContractError("overlap of modes on different grids");
    return std::abs(f.dot(g) * grid.weight());
}

double overlap(const Eigen::VectorXcd& f, const Eigen::VectorXcd& g, double weight) {
    if (f.size() != g.size()) throw ContractError("overlap of modes on different grids");
    return std::abs(f.dot(g) * weight);
}

OverlapTable overlap_table(const ModeSet& num, const GaussianModel& m, int count) {
    OverlapTable t;
    count = std::min(count, num.size());
    double six = 0;
    for (int n = 0; n < count; ++n) {
        Orders o = classify_orders(num, n);
        Eigen::VectorXd a = analytic_signal(m, num.grid, o.i, o.k);
        a /= std::sqrt(a.squaredNorm() * num.grid.weight());
        OverlapRow r{n + 1, o.i, o.k, overlap(num.C.col(n), a, num.grid)};
        if (n < 6) six += r.value;
        t.rows.push_back(r);
    }
    t.mean_first_six = six / std::min(6, std::max(count, 1));
    return t;
}

namespace {

// residual of the best two-parameter line through y[a, b)
double line_residual(const std::vector<double>& y, int a, int b) {
    const int n = b - a;
    if (n < 2) return 0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = a; i < b; ++i) sx += i, sy += y[i], sxx += double(i) * i, sxy += i * y[i];
    const double den = n * sxx - sx * sx;
    const double slope = (n * sxy - sx * sy) / den, icpt = (sy - slope * sx) / n;
    double r = 0;
    for (int i = a; i < b; ++i) {
        const double e = y[i] - slope * i - icpt;
        r += e * e;
    }
    return r;
}

}  // namespace

SeriesStructure series_structure(const std::vector<double>& s, int window) {
    if (s.size() < 10) throw InsufficientData(fmt::format("series analysis needs >= 10 values, got {}", s.size()));
    const int n = std::min<int>(window, int(s.size()));
    std::vector<double> d(n - 1);
    for (int i = 0; i + 1 < n; ++i) {
        if (!(s[i] > 0 && s[i + 1] > 0)) throw DomainError("singular values must be positive for series analysis");
        if (s[i + 1] > s[i] * (1 + 1e-9) + 1e-13 * s[0]) throw DomainError("singular values must be descending");
        d[i] = std::log(s[i + 1]) - std::log(s[i]);
    }
    const int m = int(d.size());
    int best = 3;
    double rbest = INFINITY;
    for (int b = 3; b <= m - 3; ++b) {
        const double r = line_residual(d, 0, b) + line_residual(d, b, m);
        if (r < rbest) rbest = r, best = b;
    }
    SeriesStructure st;
    // d[best] = ln s_{best+1} - ln s_best is the first changed step
    st.first_bend = best + 1;
    int total = 0;
    for (int j = 1; j <= 4; ++j) {
        st.series_sizes.push_back(j * st.first_bend);
        total += j * st.first_bend;
        st.bends.push_back(total);
    }
    return st;
}

namespace {

void check_uniform(const Grid2D& g) {
    for (int i = 1; i < g.nq(); ++i)
        if (std::abs(g.q(i) - g.q(i - 1) - g.hq) > 1e-9 * g.hq) throw ContractError("q axis is not uniform");
    for (int j = 1; j < g.nW(); ++j)
        if (std::abs(g.Omega(j) - g.Omega(j - 1) - g.hW) > 1e-9 * g.hW)
            throw ContractError("frequency axis is not uniform");
}

}  // namespace

SpatioTemporalMode to_spacetime(const Eigen::VectorXcd& f, const Grid2D& g, int pad) {
    check_uniform(g);
    const int N = g.size();
    if (f.size() != N && f.size() != 2 * N) throw ContractError("mode size does not match the grid");
    if (pad < 1) throw ContractError("padding factor must be >= 1");
    if (g.q_offset < 0) throw ContractError("signal grid must lie at positive q_x");

    const long K = g.q_offset + g.nq();  // union lattice (m + 1/2) hq, m in [-K, K)
    const int Px = int(2 * K) * pad, Pt = 2 * ((g.nW() * pad + 1) / 2);
    const double sgn[2] = {1.0, -1.0};

    fftw_complex* buf = fftw_alloc_complex(size_t(Px) * Pt);
    std::fill(reinterpret_cast<double*>(buf), reinterpret_cast<double*>(buf) + 2 * size_t(Px) * Pt, 0.0);
    auto put = [&](long m, int l, std::complex<double> v) {
        const long a = m + K;
        const int lr = (Pt - l) % Pt;  // reversed time axis turns the backward transform into a forward one
        v *= sgn[a & 1] * sgn[l & 1];
        buf[size_t(a) * Pt + lr][0] = v.real();
        buf[size_t(a) * Pt + lr][1] = v.imag();
    };
    for (int i = 0; i < g.nq(); ++i)
        for (int j = 0; j < g.nW(); ++j) {
            const long m = g.q_offset + i;
            put(m, j, f(g.index(i, j)));
            if (f.size() == 2 * N) put(-m - 1, j, f(N + g.index(i, j)));
        }
    fftw_plan plan = fftw_plan_dft_2d(Px, Pt, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);

    SpatioTemporalMode st;
    st.x = {-0.5 * Px * 2 * pi / (Px * g.hq), 2 * pi / (Px * g.hq), Px};
    st.t = {-0.5 * Pt * 2 * pi / (Pt * g.hW), 2 * pi / (Pt * g.hW), Pt};
    st.F.resize(Px, Pt);
    const double scale = g.hq * g.hW / (2 * pi);
    const double cW = 0.5 * (g.nW() - 1);
    for (int b = 0; b < Px; ++b) {
        const std::complex<double> px = std::polar(1.0, 2 * pi * (0.5 - double(K)) * (b - 0.5 * Px) / Px);
        for (int n = 0; n < Pt; ++n) {
            const std::complex<double> pt = std::polar(1.0, 2 * pi * cW * (n - 0.5 * Pt) / Pt);
            const auto& z = buf[size_t(b) * Pt + n];
            st.F(b, n) = std::complex<double>(z[0], z[1]) * px * pt * scale;
        }
    }
    fftw_free(buf);
    return st;
}

std::complex<double> analytic_f_plus_i0(const GaussianModel& m, int i, double x, double t) {
    using cd = std::complex<double>;
    const cd I(0, 1);
    const cd a = 1.0 - 2.0 * I * m.g * x / m.u;
    const cd E = std::exp(I * m.q_d * x - (t / m.tau) * (t / m.tau) / (2.0 * a)) / std::sqrt(a);
    const cd ii = std::pow(I, i);
    const double par = (i % 2) ? -1.0 : 1.0;
    return ii * hermite_function(i, x / m.u) / (std::sqrt(2.0) * std::pow(pi, 0.25) * std::sqrt(m.u * m.tau)) *
           (E + par * std::conj(E));
}

double field_norm2(const SpatioTemporalMode& st) { return st.F.squaredNorm() * st.x.step * st.t.step; }

double rank1_fraction(const SpatioTemporalMode& st) {
    Eigen::MatrixXd A = st.F.cwiseAbs();
    Eigen::BDCSVD<Eigen::MatrixXd> svd(A);
    return svd.singularValues()(0) / A.norm();
}

namespace {

// Gaussian (log-parabola) refinement of the |C| peak along q at column j
double peak_q(const Eigen::VectorXd& C, const Grid2D& g, int j) {
    int best = 0;
    for (int i = 1; i < g.nq(); ++i)
        if (std::abs(C(g.index(i, j))) > std::abs(C(g.index(best, j)))) best = i;
    if (best == 0 || best == g.nq() - 1) return g.q(best);
    const double y0 = std::log(std::abs(C(g.index(best - 1, j))));
    const double y1 = std::log(std::abs(C(g.index(best, j))));
    const double y2 = std::log(std::abs(C(g.index(best + 1, j))));
    const double den = y0 - 2 * y1 + y2;
    if (!(den < 0) || !std::isfinite(den)) return g.q(best);
    return g.q(best) + 0.5 * g.hq * (y0 - y2) / den;
}

double peak_at(const Eigen::VectorXd& C, const Grid2D& g, double W) {
    const double pos = (W - g.Omega(0)) / g.hW;
    const int j = std::clamp(int(std::floor(pos)), 0, g.nW() - 2);
    const double fr = pos - j;
    return (1 - fr) * peak_q(C, g, j) + fr * peak_q(C, g, j + 1);
}

}  // namespace

RidgeDeflection ridge_deflection(const Eigen::VectorXd& C, const Grid2D& g, const GaussianModel& m, int k) {
    RidgeDeflection r;
    r.edge_frequency = std::sqrt(4.0 * k + 3.0) / m.tau;
    if (r.edge_frequency > -g.Omega(0)) throw DomainError("edge frequency outside the grid");
    const double q_edge = 0.5 * (peak_at(C, g, r.edge_frequency) + peak_at(C, g, -r.edge_frequency));
    r.delta_q = q_edge - m.q_d;
    // amplitude sigma along q from the second moment on the strongest column
    int jbest = 0;
    double ebest = -1;
    for (int j = 0; j < g.nW(); ++j) {
        double e = 0;
        for (int i = 0; i < g.nq(); ++i) e += C(g.index(i, j)) * C(g.index(i, j));
        if (e > ebest) ebest = e, jbest = j;
    }
    double s0 = 0, s1 = 0, s2 = 0;
    for (int i = 0; i < g.nq(); ++i) {
        const double p = C(g.index(i, jbest)) * C(g.index(i, jbest));
        s0 += p, s1 += p * g.q(i), s2 += p * g.q(i) * g.q(i);
    }
    const double var = s2 / s0 - (s1 / s0) * (s1 / s0);
    r.width = 2 * std::sqrt(2 * var);
    r.ratio = r.delta_q / r.width;
    r.expected = (2 * k + 1.5) * m.g;
    return r;
}

}  // namespace twinbeam
