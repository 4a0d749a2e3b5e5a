#pragma once

#include <cmath>
#include <random>

#include "twinbeam/decomposition.hpp"
#include "twinbeam/kernel.hpp"
#include "twinbeam/setup.hpp"
#include "twinbeam/units.hpp"

namespace tb = twinbeam;

inline const tb::Setup& long_setup() {
    static const tb::Setup s = tb::bbo_setup(280.0, 100.0);
    return s;
}

inline const tb::Setup& short_setup() {
    static const tb::Setup s = tb::bbo_setup(128.0, 49.0);
    return s;
}

struct Decomposed {
    tb::KernelMatrix kernel;
    tb::Eigenpairs eig;
    tb::ModeSet modes;
};

inline Decomposed decompose(const tb::Setup& s, int nq, int nW) {
    Decomposed d;
    d.kernel = tb::build_weighted_jsa(tb::Grid2D::make(s.filter, nq, nW), s);
    d.eig = tb::spectral_decompose(d.kernel);
    d.modes = tb::takagi_reduce(d.eig);
    return d;
}

// small grid shared by the contract tests
inline const Decomposed& small_long() {
    static const Decomposed d = decompose(long_setup(), 12, 32);
    return d;
}

// default production grid
inline const Decomposed& default_long() {
    static const Decomposed d = decompose(long_setup(), 24, 96);
    return d;
}

inline bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }
