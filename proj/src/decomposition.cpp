#include "twinbeam/decomposition.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numeric>

#include "twinbeam/errors.hpp"

namespace twinbeam {

namespace {

constexpr double symmetry_tol = 1e-8;
constexpr double degeneracy_tol = 1e-10;

void check_symmetric(const KernelMatrix& k, double& residual) {
    if (k.J.rows() != k.J.cols() || k.J.rows() != k.grid.size())
        throw ContractError("kernel matrix does not match its grid");
    residual = symmetry_residual(k.J);
    if (residual > symmetry_tol)
        throw ContractError(fmt::format(
            "kernel asymmetric in mirrored coordinates (residual {:.3g}); check grid mirroring", residual));
}

void syevd(Eigen::MatrixXd& A, Eigen::VectorXd& w, bool vectors) {
    const lapack_int n = lapack_int(A.rows());
    w.resize(n);
    // symmetrize tiny residuals by reading the upper triangle only
    const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, vectors ? 'V' : 'N', 'U', n, A.data(), n, w.data());
    if (info != 0) throw std::runtime_error(fmt::format("dsyevd failed with info = {}", info));
}

double com(const Eigen::VectorXd& v, const Grid2D& g, bool frequency) {
    double num = 0, den = 0;
    for (int i = 0; i < g.nq(); ++i)
        for (int j = 0; j < g.nW(); ++j) {
            const double p = v(g.index(i, j)) * v(g.index(i, j));
            num += p * (frequency ? g.Omega(j) : g.q(i));
            den += p;
        }
    return den > 0 ? num / den : 0.0;
}

std::vector<int> order_by_magnitude(const Eigen::VectorXd& w) {
    std::vector<int> idx(w.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return std::abs(w(a)) > std::abs(w(b)); });
    return idx;
}

bool degenerate(double a, double b, double scale) {
    return std::abs(std::abs(a) - std::abs(b)) <= degeneracy_tol * std::max({std::abs(a), std::abs(b), 1e-300}) ||
           std::abs(std::abs(a) - std::abs(b)) <= 1e-15 * scale;
}

}  // namespace

Eigenpairs spectral_decompose(const KernelMatrix& k) {
    Eigenpairs e;
    check_symmetric(k, e.symmetry_residual);
    e.grid = k.grid;
    Eigen::MatrixXd A = k.J;
    Eigen::VectorXd w;
    syevd(A, w, true);

    std::vector<int> idx = order_by_magnitude(w);
    const double scale = w.size() ? std::abs(w(idx[0])) : 0.0;
    // degenerate groups ordered by centre of mass in Omega, then in q_x
    for (size_t a = 0; a < idx.size();) {
        size_t b = a + 1;
        while (b < idx.size() && degenerate(w(idx[a]), w(idx[b]), scale)) ++b;
        if (b - a > 1) {
            std::vector<std::pair<std::pair<double, double>, int>> keys;
            for (size_t t = a; t < b; ++t) {
                Eigen::VectorXd v = A.col(idx[t]);
                keys.push_back({{com(v, k.grid, true), com(v, k.grid, false)}, idx[t]});
            }
            std::stable_sort(keys.begin(), keys.end(), [](auto& x, auto& y) { return x.first < y.first; });
            for (size_t t = a; t < b; ++t) idx[t] = keys[t - a].second;
        }
        a = b;
    }

    e.lambda.resize(w.size());
    e.W.resize(A.rows(), A.cols());
    for (size_t t = 0; t < idx.size(); ++t) {
        e.lambda(t) = w(idx[t]);
        e.W.col(t) = A.col(idx[t]);
    }
    return e;
}

Eigen::VectorXd spectral_values(KernelMatrix&& k) {
    double r = 0;
    check_symmetric(k, r);
    Eigen::VectorXd w;
    syevd(k.J, w, false);
    k.J.resize(0, 0);
    std::vector<int> idx = order_by_magnitude(w);
    Eigen::VectorXd out(w.size());
    for (size_t t = 0; t < idx.size(); ++t) out(t) = w(idx[t]);
    return out;
}

ModeSet takagi_reduce(const Eigenpairs& e) {
    ModeSet m;
    m.grid = e.grid;
    const Eigen::Index n = e.lambda.size();
    m.lambda = e.lambda;
    m.s = e.lambda.cwiseAbs();
    m.tag.resize(n);
    m.C.resize(e.W.rows(), n);
    m.D.resize(e.W.rows(), n);
    for (Eigen::Index l = 0; l < n; ++l) {
        m.tag[l] = e.lambda(l) >= 0 ? PhaseTag::real : PhaseTag::imaginary;
        Eigen::VectorXd v = e.W.col(l);
        Eigen::Index imax;
        v.cwiseAbs().maxCoeff(&imax);
        if (v(imax) < 0) v = -v;
        const double nrm = std::sqrt(v.squaredNorm() * e.grid.weight());
        m.C.col(l) = v / nrm;
        m.D.col(l) = m.C.col(l) * (e.lambda(l) < 0 ? -1.0 : 1.0);
    }
    return m;
}

Eigen::VectorXd ModeSet::signal_union(int l) const {
    const int N = grid.size();
    Eigen::VectorXd u = Eigen::VectorXd::Zero(2 * N);
    u.head(N) = C.col(l);
    return u;
}

Eigen::VectorXd ModeSet::idler_union(int l) const {
    const int N = grid.size();
    Eigen::VectorXd u = Eigen::VectorXd::Zero(2 * N);
    u.tail(N) = D.col(l);
    return u;
}

Eigen::VectorXcd ModeSet::f_plus(int l) const { return squeezing_modes(signal_union(l), idler_union(l)).plus; }
Eigen::VectorXcd ModeSet::f_minus(int l) const { return squeezing_modes(signal_union(l), idler_union(l)).minus; }

SqueezingPair squeezing_modes(const Eigen::VectorXd& C, const Eigen::VectorXd& D) {
    if (C.size() != D.size()) throw ContractError("signal and idler modes live on different domains");
    for (Eigen::Index i = 0; i < C.size(); ++i)
        if (C(i) != 0 && D(i) != 0) throw ContractError("signal and idler supports overlap");
    const double r = 1.0 / std::sqrt(2.0);
    SqueezingPair p;
    p.plus = ((C + D) * r).cast<std::complex<double>>();
    p.minus = ((C - D) * r).cast<std::complex<double>>() * std::complex<double>(0, 1);
    return p;
}

UnionModes squeezing_spectrum(const ModeSet& m, int count) {
    UnionModes u;
    for (int l = 0; l < std::min(count, m.size()); ++l) {
        auto p = squeezing_modes(m.signal_union(l), m.idler_union(l));
        u.modes.push_back(p.plus);
        u.modes.push_back(p.minus);
    }
    return u;
}

UnionModes propagate_to_output(const UnionModes& in, const Grid2D& g, const Dispersion& d, double length) {
    const int N = g.size();
    Eigen::VectorXcd phase(2 * N);
    for (int i = 0; i < g.nq(); ++i)
        for (int j = 0; j < g.nW(); ++j) {
            // k_z is even in q_x, so the mirrored idler point shares the phase
            const std::complex<double> p = std::polar(1.0, d.k_z({g.q(i), 0}, g.Omega(j)) * length / 2);
            phase(g.index(i, j)) = p;
            phase(N + g.index(i, j)) = p;
        }
    UnionModes out;
    for (const auto& f : in.modes) {
        if (f.size() != 2 * N) throw ContractError("mode does not live on the union domain of this grid");
        out.modes.push_back(f.cwiseProduct(phase));
    }
    return out;
}

Eigen::VectorXd svd_values(const Eigen::MatrixXd& J) {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(J);
    return svd.singularValues();
}

double reconstruction_error(const KernelMatrix& k, const ModeSet& m, int count) {
    if (!k.weighted) throw ContractError("reconstruction compares against the weighted kernel");
    count = std::min(count, m.size());
    const double w = m.grid.weight();
    Eigen::MatrixXd R = k.J;
    R.noalias() -= m.C.leftCols(count) * (m.s.head(count) * w).asDiagonal() * m.D.leftCols(count).transpose();
    return R.norm() / k.J.norm();
}

double completeness_error(const ModeSet& m) {
    const double w = m.grid.weight();
    Eigen::MatrixXd S = m.C * m.C.transpose() * w;
    S.diagonal().array() -= 1.0;
    return S.norm() / std::sqrt(double(m.grid.size()));
}

double orthonormality_error(const ModeSet& m, int count) {
    count = std::min(count, m.size());
    Eigen::MatrixXd G = m.C.leftCols(count).transpose() * m.C.leftCols(count) * m.grid.weight();
    G.diagonal().array() -= 1.0;
    return G.cwiseAbs().maxCoeff();
}

Orders classify_orders(const ModeSet& m, int l) {
    const Grid2D& g = m.grid;
    auto at = [&](int i, int j) { return m.C(g.index(i, j), l); };
    Eigen::VectorXd e = Eigen::VectorXd::Zero(g.nW());
    for (int j = 0; j < g.nW(); ++j)
        for (int i = 0; i < g.nq(); ++i) e(j) += at(i, j) * at(i, j);
    Eigen::Index jmax;
    const double emax = e.maxCoeff(&jmax);

    auto changes = [](const std::vector<int>& s) {
        int n = 0;
        for (size_t t = 1; t < s.size(); ++t) n += s[t] != s[t - 1];
        return n;
    };

    Orders o;
    double rmax = 0;
    for (int i = 0; i < g.nq(); ++i) rmax = std::max(rmax, std::abs(at(i, int(jmax))));
    std::vector<int> sq;
    for (int i = 0; i < g.nq(); ++i)
        if (std::abs(at(i, int(jmax))) > 0.1 * rmax) sq.push_back(at(i, int(jmax)) > 0 ? 1 : -1);
    o.i = changes(sq);

    std::vector<int> sw;
    for (int j = 0; j < g.nW(); ++j) {
        if (e(j) < 0.01 * emax) continue;
        double cmax = 0;
        for (int i = 0; i < g.nq(); ++i) cmax = std::max(cmax, std::abs(at(i, j)));
        for (int i = 1; i + 1 < g.nq(); ++i) {
            const double v = std::abs(at(i, j));
            if (v > 0.3 * cmax && v >= std::abs(at(i - 1, j)) && v >= std::abs(at(i + 1, j))) {
                sw.push_back(at(i, j) > 0 ? 1 : -1);
                break;
            }
        }
    }
    o.k = changes(sw);
    return o;
}

}  // namespace twinbeam
