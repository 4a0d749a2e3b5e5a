#include "twinbeam/grid.hpp"

#include <cmath>
#include <fmt/format.h>

#include "twinbeam/errors.hpp"

namespace twinbeam {

bool Grid2D::same_as(const Grid2D& o) const {
    return nq() == o.nq() && nW() == o.nW() && q_offset == o.q_offset && hq == o.hq && hW == o.hW &&
           Omega(0) == o.Omega(0);
}

Grid2D Grid2D::make(const FilterSpec& f, int nq, int nW, double margin) {
    if (nq < 3 || nW < 3) throw ConfigError(fmt::format("grid {}x{} too small", nq, nW));
    if (margin < 0) throw ConfigError("grid margin must be non-negative");
    f.validate();
    const double span = f.qx_max - f.qx_min;
    const double a = f.qx_min - margin * span, b = f.qx_max + margin * span;
    Grid2D g;
    g.hq = (b - a) / (nq - 2);
    g.q_offset = long(std::floor(a / g.hq - 0.5));
    g.q.resize(nq);
    for (int j = 0; j < nq; ++j) g.q(j) = (double(g.q_offset + j) + 0.5) * g.hq;
    if (g.q(0) <= 0)
        throw ConfigError("signal grid reaches q_x <= 0; reduce the margin or raise qx_min");
    const double We = f.Omega_max * (1 + margin);
    g.hW = 2 * We / (nW - 1);
    g.Omega.resize(nW);
    for (int j = 0; j < nW; ++j) g.Omega(j) = (j - 0.5 * (nW - 1)) * g.hW;
    return g;
}

}  // namespace twinbeam
