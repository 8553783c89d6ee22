#pragma once

// SI constants used by every module. Exact where the SI defines them.

namespace casimir::constants {

inline constexpr double pi = 3.14159265358979323846;

inline constexpr double hbar = 1.054571817e-34;          // J s
inline constexpr double c = 2.99792458e8;                // m / s
inline constexpr double k_B = 1.380649e-23;              // J / K
inline constexpr double elementary_charge = 1.602176634e-19;  // C

/// Angular frequency (rad/s) corresponding to a photon energy in eV.
constexpr double ev_to_rad_per_s(double energy_ev) {
  return energy_ev * elementary_charge / hbar;
}

}  // namespace casimir::constants
