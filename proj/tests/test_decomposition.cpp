#include <doctest.h>

#include "common.hpp"
#include "twinbeam/decomposition.hpp"
#include "twinbeam/errors.hpp"
#include "twinbeam/gaussian.hpp"

using namespace twinbeam;

namespace {

Grid2D unit_grid(int nq, int nW) {
    Grid2D g;
    g.hq = g.hW = 1.0;
    g.q_offset = 0;
    g.q.resize(nq);
    g.Omega.resize(nW);
    for (int i = 0; i < nq; ++i) g.q(i) = i + 0.5;
    for (int j = 0; j < nW; ++j) g.Omega(j) = j - 0.5 * (nW - 1);
    return g;
}

KernelMatrix toy(const Eigen::MatrixXd& J, int nq, int nW) { return KernelMatrix{J, unit_grid(nq, nW), true}; }

}  // namespace

TEST_CASE("2x2 off-diagonal toy kernel") {
    const double a = 0.7;
    Eigen::MatrixXd J(2, 2);
    J << 0, a, a, 0;
    const Eigenpairs e = spectral_decompose(toy(J, 1, 2));
    CHECK(std::abs(e.lambda(0)) == doctest::Approx(a));
    CHECK(e.lambda(0) * e.lambda(1) == doctest::Approx(-a * a));
    const ModeSet m = takagi_reduce(e);
    CHECK(m.s(0) == doctest::Approx(a));
    CHECK(m.s(1) == doctest::Approx(a));
    int imag = 0;
    for (auto t : m.tag) imag += t == PhaseTag::imaginary;
    CHECK(imag == 1);
}

TEST_CASE("negative eigenvalue maps to an imaginary phase tag") {
    Eigen::MatrixXd J(1, 1);
    J << -0.3;
    const ModeSet m = takagi_reduce(spectral_decompose(toy(J, 1, 1)));
    CHECK(m.s(0) == doctest::Approx(0.3));
    CHECK(m.tag[0] == PhaseTag::imaginary);
    CHECK(m.D(0, 0) == doctest::Approx(-m.C(0, 0)));
}

TEST_CASE("positive-definite kernel gives only real tags") {
    Eigen::MatrixXd B = Eigen::MatrixXd::Random(6, 6);
    const Eigen::MatrixXd J = B * B.transpose() + Eigen::MatrixXd::Identity(6, 6);
    const ModeSet m = takagi_reduce(spectral_decompose(toy(J, 2, 3)));
    for (auto t : m.tag) CHECK(t == PhaseTag::real);
}

TEST_CASE("asymmetric kernel is a contract error") {
    Eigen::MatrixXd J(2, 2);
    J << 0, 1, 1.001, 0;
    CHECK_THROWS_AS(spectral_decompose(toy(J, 1, 2)), ContractError);
}

TEST_CASE("degenerate eigenvalues ordered by frequency centre of mass") {
    // three equal eigenvalues localized at different frequencies
    Eigen::MatrixXd J = Eigen::MatrixXd::Identity(3, 3);
    const Eigenpairs e = spectral_decompose(toy(J, 1, 3));
    Eigen::Index i0, i1, i2;
    e.W.col(0).cwiseAbs().maxCoeff(&i0);
    e.W.col(1).cwiseAbs().maxCoeff(&i1);
    e.W.col(2).cwiseAbs().maxCoeff(&i2);
    CHECK(i0 == 0);
    CHECK(i1 == 1);
    CHECK(i2 == 2);
}

TEST_CASE("solver contracts on the BBO kernel") {
    const auto& d = small_long();
    const auto& e = d.eig;
    const Eigen::Index n = e.W.cols();
    CHECK((e.W.transpose() * e.W - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-8);
    const Eigen::MatrixXd R = d.kernel.J - e.W * e.lambda.asDiagonal() * e.W.transpose();
    CHECK(R.norm() / d.kernel.J.norm() < 1e-8);
    const Eigen::VectorXd sv = svd_values(d.kernel.J);
    CHECK((sv - e.lambda.cwiseAbs()).cwiseAbs().maxCoeff() < 1e-10 * sv(0));
    for (Eigen::Index l = 1; l < n; ++l)
        CHECK(std::abs(e.lambda(l)) <= std::abs(e.lambda(l - 1)) * (1 + 1e-10) + 1e-14 * std::abs(e.lambda(0)));
}

TEST_CASE("mode set invariants") {
    const auto& d = small_long();
    const ModeSet& m = d.modes;
    CHECK(orthonormality_error(m, m.size()) < 1e-8);
    CHECK(completeness_error(m) < 1e-6);
    CHECK(reconstruction_error(d.kernel, m, m.size()) < 1e-6);
    for (int l = 0; l < m.size(); ++l) {
        CHECK(m.D.col(l).squaredNorm() * m.grid.weight() == doctest::Approx(1.0).epsilon(1e-8));
        Eigen::Index imax;
        m.C.col(l).cwiseAbs().maxCoeff(&imax);
        CHECK(m.C(imax, l) > 0);
    }
    // singular-function relation J^T C = s D (continuous normalization)
    for (int l = 0; l < 10; ++l) {
        const Eigen::VectorXd lhs = d.kernel.J.transpose() * m.C.col(l);
        CHECK((lhs - m.s(l) * m.D.col(l)).norm() < 1e-8 * m.s(l) * m.D.col(l).norm());
        // mirrored idler function equals +-C
        CHECK(std::min((m.D.col(l) - m.C.col(l)).cwiseAbs().maxCoeff(), (m.D.col(l) + m.C.col(l)).cwiseAbs().maxCoeff()) <
              1e-6 * m.C.col(l).cwiseAbs().maxCoeff());
    }
}

TEST_CASE("truncation to the analytic number of principal modes") {
    const auto& d = default_long();
    const GaussianModel g = model_params(long_setup(), 2.6721);
    const int K = int(std::round(schmidt_numbers(g).K));
    const double err = reconstruction_error(d.kernel, d.modes, K);
    MESSAGE("relative Frobenius error with " << K << " modes: " << err);
    CHECK(err < 1.0);
    CHECK(reconstruction_error(d.kernel, d.modes, 2 * K) < err);
}

TEST_CASE("eigenvalue signs follow the temporal order in mirrored coordinates") {
    const auto& m = default_long().modes;
    int checked = 0;
    for (int l = 0; l < 70; ++l) {
        const Orders o = classify_orders(m, l);
        const double expected = (o.k % 2) ? -1.0 : 1.0;
        CHECK(m.sign(l) == expected);
        ++checked;
    }
    CHECK(checked == 70);
    // analytic idler functions carry the same sign relation
    const GaussianModel g = model_params(long_setup(), 2.6721);
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 4; ++k) {
            const Eigen::VectorXd C = analytic_signal(g, m.grid, i, k), D = analytic_idler(g, m.grid, i, k);
            CHECK((D - ((k % 2) ? -1.0 : 1.0) * C).cwiseAbs().maxCoeff() < 1e-12 * C.cwiseAbs().maxCoeff());
        }
}

TEST_CASE("squeezing eigenmodes") {
    const ModeSet& m = small_long().modes;
    const double w = m.grid.weight();
    for (int l = 0; l < 5; ++l) {
        const SqueezingPair p = squeezing_modes(m.signal_union(l), m.idler_union(l));
        CHECK(p.plus.squaredNorm() * w == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(p.minus.squaredNorm() * w == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(std::abs(p.plus.dot(p.minus)) * w < 1e-12);
    }
    CHECK(squeezing_spectrum(m, 7).modes.size() == 14);
    Eigen::VectorXd a = m.signal_union(0), b = m.signal_union(1);
    CHECK_THROWS_AS(squeezing_modes(a, b), ContractError);
}

TEST_CASE("propagation to the crystal output") {
    const Setup& s = long_setup();
    const ModeSet& m = small_long().modes;
    const UnionModes in = squeezing_spectrum(m, 3);
    const UnionModes zero = propagate_to_output(in, m.grid, s.disp, 0.0);
    const UnionModes once = propagate_to_output(in, m.grid, s.disp, s.length());
    const UnionModes half = propagate_to_output(in, m.grid, s.disp, s.length() / 2);
    const UnionModes twice = propagate_to_output(half, m.grid, s.disp, s.length() / 2);
    for (size_t i = 0; i < in.modes.size(); ++i) {
        CHECK((zero.modes[i] - in.modes[i]).cwiseAbs().maxCoeff() == 0.0);
        CHECK((once.modes[i].cwiseAbs() - in.modes[i].cwiseAbs()).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((twice.modes[i] - once.modes[i]).cwiseAbs().maxCoeff() < 1e-9);
    }
}
