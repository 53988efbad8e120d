#pragma once

// Physical constants (CODATA 2018) used at the SI ingestion boundary.
// All solver math runs in phonon-frequency units and never touches these.
namespace magnomech::constants {

inline constexpr double hbar = 1.054571817e-34;       // J s
inline constexpr double k_boltzmann = 1.380649e-23;   // J / K
inline constexpr double c_light = 2.99792458e8;       // m / s
inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

}  // namespace magnomech::constants
