#include <doctest.h>

#include "common.hpp"
#include "twinbeam/analysis.hpp"
#include "twinbeam/errors.hpp"

using namespace twinbeam;

namespace {

Eigen::VectorXcd analytic_f_plus(const GaussianModel& m, const Grid2D& g, int i, int k) {
    const int N = g.size();
    Eigen::VectorXd C = Eigen::VectorXd::Zero(2 * N), D = Eigen::VectorXd::Zero(2 * N);
    C.head(N) = analytic_signal(m, g, i, k);
    D.tail(N) = analytic_idler(m, g, i, k);
    return squeezing_modes(C, D).plus;
}

// direct evaluation of the discrete Fourier sum at one point
std::complex<double> direct_sum(const Eigen::VectorXcd& f, const Grid2D& g, double x, double t) {
    const int N = g.size();
    std::complex<double> s = 0;
    for (int i = 0; i < g.nq(); ++i)
        for (int j = 0; j < g.nW(); ++j) {
            const double q = g.q(i), W = g.Omega(j);
            s += f(g.index(i, j)) * std::polar(1.0, q * x - W * t);
            if (f.size() == 2 * N) s += f(N + g.index(i, j)) * std::polar(1.0, -q * x - W * t);
        }
    return s * g.hq * g.hW / (2 * pi);
}

}  // namespace

TEST_CASE("overlap is symmetric, bounded and sign blind") {
    const auto& g = small_long().modes.grid;
    std::mt19937 rng(7);
    std::normal_distribution<double> nd;
    Eigen::VectorXd a(g.size()), b(g.size());
    for (int n = 0; n < g.size(); ++n) a(n) = nd(rng), b(n) = nd(rng);
    a /= std::sqrt(a.squaredNorm() * g.weight());
    b /= std::sqrt(b.squaredNorm() * g.weight());
    CHECK(overlap(a, b, g) == doctest::Approx(overlap(b, a, g)));
    CHECK(overlap(a, b, g) <= 1.0);
    CHECK(overlap(a, -a, g) == doctest::Approx(1.0));
    const Eigen::VectorXcd ac = a.cast<std::complex<double>>() * std::polar(1.0, 0.7);
    CHECK(overlap(ac, a.cast<std::complex<double>>(), g.weight()) == doctest::Approx(1.0));
}

TEST_CASE("series structure needs enough values") {
    CHECK_THROWS_AS(series_structure({1.0, 0.5, 0.2}), InsufficientData);
}

TEST_CASE("series structure of the analytic long-pump spectrum") {
    const GaussianModel m = model_params(long_setup(), 2.6721);
    std::vector<double> s;
    for (const auto& l : analytic_spectrum(m, 400)) s.push_back(l.value);
    const SeriesStructure st = series_structure(s);
    CHECK(std::abs(st.first_bend - 73) <= 2);
    REQUIRE(st.series_sizes.size() >= 2);
    CHECK(st.series_sizes[1] == 2 * st.series_sizes[0]);
}

TEST_CASE("series structure of a pure geometric sequence has no early bend") {
    // two geometric runs joined at n = 40
    std::vector<double> s;
    for (int n = 0; n < 40; ++n) s.push_back(std::pow(0.99, n));
    for (int n = 0; n < 160; ++n) s.push_back(s.back() * 0.9);
    CHECK(series_structure(s).first_bend == 40);
}

TEST_CASE("numerical long-pump series bends near the analytic prediction") {
    const SeriesStructure st = series_structure(std::vector<double>(
        default_long().modes.s.data(), default_long().modes.s.data() + default_long().modes.size()));
    MESSAGE("first bend " << st.first_bend);
    CHECK(std::abs(st.first_bend - 57) <= 2);
}

TEST_CASE("spacetime transform: Parseval and direct summation") {
    const auto& m = small_long().modes;
    const auto& g = m.grid;
    for (int l : {0, 3}) {
        const Eigen::VectorXcd f = m.f_plus(l);
        const double norm_q = f.squaredNorm() * g.weight();
        for (int pad : {1, 2}) {
            const SpatioTemporalMode st = to_spacetime(f, g, pad);
            CHECK(field_norm2(st) == doctest::Approx(norm_q).epsilon(1e-6));
            for (auto [b, n] : std::vector<std::pair<int, int>>{{0, 0}, {st.x.n / 2, st.t.n / 2}, {7, st.t.n - 3}}) {
                const auto ref = direct_sum(f, g, st.x.at(b), st.t.at(n));
                CHECK(std::abs(st.F(b, n) - ref) < 1e-10 * (1 + std::abs(ref)));
            }
        }
    }
    // signal block only
    const Eigen::VectorXcd half = m.C.col(0).cast<std::complex<double>>();
    const SpatioTemporalMode st = to_spacetime(half, g, 2);
    CHECK(field_norm2(st) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK_THROWS_AS(to_spacetime(Eigen::VectorXcd::Zero(5), g, 2), ContractError);
}

TEST_CASE("spacetime transform rejects non-uniform grids") {
    Grid2D g = small_long().modes.grid;
    g.q[3] += 0.1 * g.hq;
    CHECK_THROWS_AS(to_spacetime(Eigen::VectorXcd::Zero(2 * g.size()), g, 2), ContractError);
}

TEST_CASE("analytic (i,0) squeezing modes in space and time") {
    const Setup& s = long_setup();
    const GaussianModel m = model_params(s, 2.6721);
    const Grid2D g = Grid2D::make(s.filter, 64, 192);
    for (int i = 0; i <= 2; ++i) {
        const SpatioTemporalMode st = to_spacetime(analytic_f_plus(m, g, i, 0), g, 2);
        double err = 0, peak = 0;
        for (int b = 0; b < st.x.n; ++b)
            for (int n = 0; n < st.t.n; ++n) {
                const auto ref = analytic_f_plus_i0(m, i, st.x.at(b), st.t.at(n));
                err = std::max(err, std::abs(st.F(b, n) - ref));
                peak = std::max(peak, std::abs(ref));
            }
        MESSAGE("i = " << i << ": max abs error " << err << ", peak " << peak);
        CHECK(err < 1e-3);
        CHECK(err < 1e-2 * peak);
    }
}

TEST_CASE("separability of analytic modes") {
    const Setup& s = long_setup();
    GaussianModel m = model_params(s, 2.6721);
    const Grid2D g = Grid2D::make(s.filter, 48, 160);
    m.g = 0;
    CHECK(rank1_fraction(to_spacetime(analytic_f_plus(m, g, 0, 0), g, 2)) > 0.999);
}

TEST_CASE("separability of numerical long-pump modes") {
    const auto& m = default_long().modes;
    const double f00 = rank1_fraction(to_spacetime(m.f_plus(0), m.grid, 2));
    const double f03 = rank1_fraction(to_spacetime(m.f_plus(3), m.grid, 2));
    MESSAGE("rank-1 fraction (0,0) " << f00 << ", (0,3) " << f03);
    CHECK(f03 < 0.99);
    CHECK(f03 < f00);
}

TEST_CASE("overlap table pairs modes by their orders") {
    const auto& num = default_long().modes;
    const GaussianModel m = model_params(long_setup(), 2.6134);
    const OverlapTable t = overlap_table(num, m, 60);
    REQUIRE(t.rows.size() == 60);
    for (int n = 0; n < 4; ++n) CHECK(t.rows[n].value == doctest::Approx(1.0).epsilon(0.01));
    for (const auto& r : t.rows) {
        CHECK(r.value >= 0);
        CHECK(r.value <= 1.0 + 1e-12);
    }
    CHECK(t.mean_first_six > 0.98);
}

TEST_CASE("numerical ridge deflection tracks the coupling") {
    const auto& num = default_long().modes;
    const GaussianModel m = model_params(long_setup(), 2.6134);
    for (int k = 1; k <= 3; ++k) {
        const RidgeDeflection r = ridge_deflection(num.C.col(k), num.grid, m, k);
        MESSAGE("k = " << k << ": ratio " << r.ratio << ", expected " << r.expected);
        CHECK(r.ratio == doctest::Approx(r.expected).epsilon(0.15));
    }
}
