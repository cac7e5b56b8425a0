#pragma once

// Physical constants (SI, CODATA 2018 exact/defined values) and numeric
// conventions shared across the library.
//
// Unit convention: every frequency-like quantity stored in the parameter
// structs is an *angular* rate in rad/s.  Configuration files accept ordinary
// frequencies in Hz and are converted on ingest (see config.hpp).

namespace cqnc::constants {

inline constexpr double hbar = 1.054571817e-34;      // reduced Planck constant, J s
inline constexpr double k_boltzmann = 1.380649e-23;  // Boltzmann constant, J/K
inline constexpr double c_light = 299792458.0;       // speed of light, m/s

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double two_pi = 2.0 * pi;

}  // namespace cqnc::constants
