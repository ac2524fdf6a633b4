#pragma once

#include <complex>
#include <numbers>

namespace chiral_tmm {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kSpeedOfLight = 299792458.0;       // m/s
inline constexpr double kMu0 = 1.25663706212e-6;           // H/m
inline constexpr double kEps0 = 1.0 / (kMu0 * kSpeedOfLight * kSpeedOfLight);
inline constexpr double kEta0 = kMu0 * kSpeedOfLight;      // ohm

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

/// Free-space wavenumber 2*pi*f/c.
inline double free_space_wavenumber(double freq_hz) {
  return 2.0 * kPi * freq_hz / kSpeedOfLight;
}

}  // namespace chiral_tmm
