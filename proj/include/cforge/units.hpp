// units.hpp - unit conventions.
//
// The core works in angular frequency [rad/ps] and time [ps] throughout.
// User-facing files and the CLI speak ordinary frequency [THz]; conversion
// happens only at the boundary (config loading, report writing). Dephasing
// rates given as THz in input files are half-widths at half maximum and are
// converted with the same 2*pi factor.

#pragma once

namespace cforge {

inline constexpr double kTwoPi = 6.28318530717958647692528676656;

constexpr double thz_to_rad_ps(double f_thz) { return kTwoPi * f_thz; }
constexpr double rad_ps_to_thz(double omega) { return omega / kTwoPi; }

}  // namespace cforge
