#include "twinbeam/hermite.hpp"

#include <cmath>
#include <fmt/format.h>

#include "twinbeam/errors.hpp"
#include "twinbeam/units.hpp"

namespace twinbeam {

std::vector<double> hermite_functions(int nmax, double x) {
    if (nmax < 0) throw DomainError("negative Hermite order");
    if (nmax > max_hermite_order)
        throw DomainError(fmt::format("Hermite order {} exceeds the supported maximum {}", nmax, max_hermite_order));
    std::vector<double> h(nmax + 1);
    h[0] = std::pow(pi, -0.25) * std::exp(-x * x / 2);
    if (nmax >= 1) h[1] = std::sqrt(2.0) * x * h[0];
    for (int n = 2; n <= nmax; ++n)
        h[n] = std::sqrt(2.0 / n) * x * h[n - 1] - std::sqrt(double(n - 1) / n) * h[n - 2];
    return h;
}

double hermite_function(int n, double x) { return hermite_functions(n, x).back(); }

}  // namespace twinbeam
