#include "twinbeam/kernel.hpp"

#include <cmath>
#include <vector>

#include "twinbeam/errors.hpp"
#include "twinbeam/phasematch.hpp"

namespace twinbeam {

double pump_amplitude(const PumpSpec& p, QVec q, double W) {
    const double qp = p.q_p(), Wp = p.Omega_p();
    return p.amplitude * std::exp(-(q.x * q.x + q.y * q.y) / (4 * qp * qp) - W * W / (4 * Wp * Wp));
}

namespace {

void check_coverage(const Grid2D& g, const FilterSpec& f) {
    const double tol = 1e-12;
    if (g.q(0) > f.qx_min + tol || g.q(g.nq() - 1) < f.qx_max - tol || -g.Omega(0) < f.Omega_max - tol)
        throw ConfigError("grid does not cover the filter region");
}

void fill(Eigen::MatrixXd& J, const Grid2D& g, const Setup& s, double scale) {
    check_coverage(g, s.filter);
    const int nq = g.nq(), nW = g.nW(), N = g.size();
    const double L = s.length();
    const FilterSpec& f = s.filter;

    std::vector<double> kz(N);
    std::vector<char> pass(N);
    for (int i = 0; i < nq; ++i)
        for (int j = 0; j < nW; ++j) {
            const int a = g.index(i, j);
            kz[a] = s.disp.k_z({g.q(i), 0}, g.Omega(j));
            pass[a] = g.q(i) >= f.qx_min && g.q(i) <= f.qx_max && std::abs(g.Omega(j)) <= f.Omega_max;
        }

    // pump quantities depend on |iq - iq'| and jW + jW' only
    std::vector<double> kp(size_t(nq) * (2 * nW - 1)), amp(kp.size());
    for (int d = 0; d < nq; ++d)
        for (int t = 0; t < 2 * nW - 1; ++t) {
            const double qs = d * g.hq, Ws = g.Omega(0) * 2 + t * g.hW;
            kp[size_t(d) * (2 * nW - 1) + t] = s.disp.k_pz({qs, 0}, Ws);
            amp[size_t(d) * (2 * nW - 1) + t] = scale * pump_amplitude(s.pump, {qs, 0}, Ws);
        }

    J.setZero(N, N);
    for (int ib = 0; ib < nq; ++ib)
        for (int jb = 0; jb < nW; ++jb) {
            const int b = g.index(ib, jb);
            if (!pass[b]) continue;
            double* col = J.col(b).data();
            for (int ia = 0; ia < nq; ++ia) {
                const size_t row = size_t(std::abs(ia - ib)) * (2 * nW - 1) + jb;
                for (int ja = 0; ja < nW; ++ja) {
                    const int a = g.index(ia, ja);
                    if (!pass[a]) continue;
                    const double delta = kz[a] + kz[b] - kp[row + ja];
                    col[a] = amp[row + ja] * sinc(delta * L / 2);
                }
            }
        }
}

}  // namespace

KernelMatrix build_jsa(const Grid2D& grid, const Setup& s) {
    KernelMatrix k;
    k.grid = grid;
    fill(k.J, grid, s, 1.0);
    return k;
}

KernelMatrix build_weighted_jsa(const Grid2D& grid, const Setup& s) {
    KernelMatrix k;
    k.grid = grid;
    fill(k.J, grid, s, grid.weight());
    k.weighted = true;
    return k;
}

KernelMatrix apply_quadrature(KernelMatrix k) {
    if (k.weighted) throw ContractError("quadrature weights already applied");
    // W^{1/2} J W^{1/2} with uniform weights
    k.J *= k.grid.weight();
    k.weighted = true;
    return k;
}

double symmetry_residual(const Eigen::MatrixXd& J) {
    double m = 0, r = 0;
    for (Eigen::Index j = 0; j < J.cols(); ++j)
        for (Eigen::Index i = 0; i < J.rows(); ++i) {
            m = std::max(m, std::abs(J(i, j)));
            if (i < j) r = std::max(r, std::abs(J(i, j) - J(j, i)));
        }
    return m == 0 ? 0 : r / m;
}

}  // namespace twinbeam
