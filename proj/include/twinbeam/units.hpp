#pragma once

#include <numbers>

namespace twinbeam {

// lengths in um, times in fs, frequencies in rad/fs, wave-vectors in rad/um
inline constexpr double c_light = 0.299792458;  // um/fs
inline constexpr double pi = std::numbers::pi;
inline constexpr double sigma_s = 1.61;

inline constexpr double deg(double d) { return d * pi / 180.0; }

}  // namespace twinbeam
