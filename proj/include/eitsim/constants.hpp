#pragma once

#include <cmath>

namespace eitsim {

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double two_pi = 2.0 * pi;

// CODATA values, SI units.
inline constexpr double k_boltzmann = 1.380649e-23;      // J/K
inline constexpr double atomic_mass_unit = 1.66053906660e-27; // kg
inline constexpr double speed_of_light = 2.99792458e8;   // m/s

// Mass of a helium-4 atom.
inline constexpr double helium4_mass = 4.002602 * atomic_mass_unit; // kg

// Mean thermal speed sqrt(8 k T / (pi m)) of a gas atom.
inline double mean_thermal_speed(double temperature_k, double mass_kg) {
    return std::sqrt(8.0 * k_boltzmann * temperature_k / (pi * mass_kg));
}

} // namespace eitsim
