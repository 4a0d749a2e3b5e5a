#pragma once

#include <optional>

#include "twinbeam/dispersion.hpp"
#include "twinbeam/phasematch.hpp"
#include "twinbeam/specs.hpp"

namespace twinbeam {

struct FilterOverrides {
    std::optional<double> qx_min, qx_max, qy_max, Omega_max;
};

inline constexpr double default_qy_max = 0.009;  // rad/um

// Everything derived from crystal + pump that the kernel and the models share.
struct Setup {
    Dispersion disp;
    DispersionCoeffs coeffs;
    PqdaParams pqda;
    PumpSpec pump;
    FilterSpec filter;

    double length() const { return disp.crystal().length; }
};

Setup make_setup(const CrystalSpec& crystal, const PumpSpec& pump, const FilterOverrides& f = {});

// 2 mm BBO cut at 29.62 deg, 397.5 nm pump
Setup bbo_setup(double duration_fs, double waist_um);

}  // namespace twinbeam
