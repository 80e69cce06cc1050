#pragma once

#include <cmath>
#include <string>

#include "eitsim/constants.hpp"
#include "eitsim/errors.hpp"

namespace eitsim {

// Unit conventions
// ----------------
// Every rate and detuning inside the library is an angular quantity in rad/s
// (or s^-1 for decay rates, which is the same unit).  "Cyclic" values quoted
// in Hz/kHz/GHz appear only at I/O boundaries and are converted on entry with
// the helpers below.  The Rabi frequency is the full angular oscillation
// frequency of the population (double the half convention), which is why
// Omega^2/4 shows up in the response denominators.

inline double angular_from_hz(double hz) { return two_pi * hz; }
inline double hz_from_angular(double rad_s) { return rad_s / two_pi; }

// Atomic constants of the Lambda transition plus the neighbouring line that
// shares the lower level.  neighbor_offset is the angular frequency of the
// neighbour relative to the working line (negative coupling detunings move
// toward it); neighbor_strength is its relative line strength, and a value
// of zero disables the neighbour entirely.
struct AtomSpec {
    double gamma_opt = 1.4e8;                        // optical coherence decay, s^-1
    double doppler_hwhm = angular_from_hz(0.85e9);   // Doppler HWHM W_D, rad/s
    double wavelength = 1.083e-6;                    // m
    double i_sat = 1.6;                              // saturation intensity, W/m^2
    double neighbor_offset = angular_from_hz(-2.29e9); // rad/s
    double neighbor_strength = 5.0 / 3.0;            // dimensionless

    bool neighbor_enabled() const { return neighbor_strength > 0.0; }
    AtomSpec without_neighbor() const {
        AtomSpec a = *this;
        a.neighbor_strength = 0.0;
        return a;
    }
};

// Cell and vapor parameters.  t0 is the zero-coupling line-center
// transmission, which fixes the opacity; gamma_raman is the Raman coherence
// decay rate (angular, s^-1).
struct MediumSpec {
    double length = 2.5e-2;              // m
    double t0 = 0.5;                     // dimensionless, in (0,1)
    double density = 3.5e16;             // atoms/m^3
    double temperature = 300.0;          // K
    double pressure = 1.0;               // Torr
    double pump_efficiency = 0.8;        // dimensionless, in [0,1]
    double gamma_raman = angular_from_hz(3.2e3); // s^-1
};

// Laser drive parameters.  beam_diameter is at 1/e^2 intensity.
struct DriveSpec {
    double coupling_power = 0.0;   // W
    double probe_power = 0.0;      // W
    double beam_diameter = 1.5e-2; // m
    double delta_raman = 0.0;      // Raman detuning delta, rad/s
    double delta_coupling = 0.0;   // coupling detuning Delta, rad/s
};

// Intensity -> Rabi-frequency calibration: Omega_C^2 = kappa * I.
struct RabiCalibration {
    double kappa = 0.0; // (rad/s)^2 per (W/m^2)
};

inline void validate(const AtomSpec& atom) {
    if (!(atom.gamma_opt > 0.0)) throw InvalidInput("AtomSpec.gamma_opt must be > 0");
    if (!(atom.doppler_hwhm > 0.0)) throw InvalidInput("AtomSpec.doppler_hwhm must be > 0");
    if (!(atom.wavelength > 0.0)) throw InvalidInput("AtomSpec.wavelength must be > 0");
    if (!(atom.i_sat > 0.0)) throw InvalidInput("AtomSpec.i_sat must be > 0");
    if (atom.neighbor_strength < 0.0) throw InvalidInput("AtomSpec.neighbor_strength must be >= 0");
}

inline void validate(const MediumSpec& medium) {
    if (!(medium.length > 0.0)) throw InvalidInput("MediumSpec.length must be > 0");
    if (!(medium.t0 > 0.0 && medium.t0 < 1.0)) throw InvalidInput("MediumSpec.t0 must be in (0,1)");
    if (!(medium.gamma_raman > 0.0)) throw InvalidInput("MediumSpec.gamma_raman must be > 0");
    if (!(medium.pump_efficiency >= 0.0 && medium.pump_efficiency <= 1.0))
        throw InvalidInput("MediumSpec.pump_efficiency must be in [0,1]");
}

// Intensity-weighted mean intensity of a Gaussian beam of total power P and
// 1/e^2 diameter d: P/(pi w^2) with w = d/2, i.e. half the peak intensity.
inline double average_intensity(const DriveSpec& drive) {
    if (!(drive.beam_diameter > 0.0))
        throw InvalidInput("average_intensity: beam_diameter must be > 0");
    if (drive.coupling_power < 0.0)
        throw InvalidInput("average_intensity: coupling_power must be >= 0");
    const double w = 0.5 * drive.beam_diameter;
    return drive.coupling_power / (pi * w * w);
}

// Coupling Rabi frequency from averaged intensity, Omega = sqrt(kappa * I).
inline double rabi_from_intensity(double intensity, const RabiCalibration& cal) {
    if (intensity < 0.0) throw InvalidInput("rabi_from_intensity: intensity must be >= 0");
    if (!(cal.kappa > 0.0)) throw InvalidInput("rabi_from_intensity: kappa must be > 0");
    return std::sqrt(cal.kappa * intensity);
}

// Default calibration: kappa is chosen so that the pumped-linewidth slope
// d(Gamma_EIT/2pi)/dI equals 416 Hz/(W/m^2) for the given atomic constants,
// i.e. kappa = 416 * 2pi * (2 W_D + Gamma).
inline RabiCalibration default_calibration(const AtomSpec& atom) {
    validate(atom);
    return RabiCalibration{416.0 * two_pi * (2.0 * atom.doppler_hwhm + atom.gamma_opt)};
}

// Regime-threshold Rabi frequency Omega_inhom = 2 sqrt(2 Gamma_R / Gamma) W_D
// separating the inhomogeneous (weak-coupling) and Doppler-wide regimes.
inline double omega_inhom(const AtomSpec& atom, double gamma_raman) {
    validate(atom);
    if (!(gamma_raman > 0.0)) throw InvalidInput("omega_inhom: gamma_raman must be > 0");
    return 2.0 * std::sqrt(2.0 * gamma_raman / atom.gamma_opt) * atom.doppler_hwhm;
}

} // namespace eitsim
