#pragma once

#include <vector>

namespace twinbeam {

inline constexpr int max_hermite_order = 500;

// Normalized Hermite-Gauss function h_n(x) = H_n(x) exp(-x^2/2) / sqrt(2^n n! sqrt(pi)).
double hermite_function(int n, double x);
// h_0(x) .. h_nmax(x)
std::vector<double> hermite_functions(int nmax, double x);

}  // namespace twinbeam
