#pragma once

#include <cmath>
#include <complex>

#include "eitsim/errors.hpp"
#include "eitsim/units.hpp"

namespace eitsim {

// Parameters of one velocity class of the Lambda system as seen by the probe.
// detune_probe is the one-photon probe detuning for this class (Delta + delta
// + k*v once Doppler-shifted); delta_raman is the two-photon detuning.
struct LambdaState {
    double omega_c = 0.0;      // coupling Rabi frequency, rad/s
    double delta_raman = 0.0;  // rad/s
    double detune_probe = 0.0; // rad/s
    double gamma_opt = 1.4e8;  // s^-1
    double gamma_raman = 0.0;  // s^-1
};

// Steady-state linear probe response of one velocity class,
//
//   chi ~ i Gamma (Gamma_R - i delta) /
//         [ (Gamma_R - i delta)(Gamma - i detune_probe) + Omega_C^2/4 ],
//
// normalized so that Omega_C = 0, detune_probe = 0 gives exactly i (unit
// absorption, no dispersion).  Im(chi) >= 0 for all parameters (passive
// medium); Gamma_R = 0, delta = 0 is an exact dark state (chi = 0).
inline std::complex<double> probe_response(const LambdaState& s) {
    if (!(s.gamma_opt > 0.0)) throw InvalidInput("probe_response: gamma_opt must be > 0");
    if (s.gamma_raman < 0.0) throw InvalidInput("probe_response: gamma_raman must be >= 0");
    if (s.omega_c < 0.0) throw InvalidInput("probe_response: omega_c must be >= 0");

    const std::complex<double> zeta(s.gamma_raman, -s.delta_raman);
    const std::complex<double> opt(s.gamma_opt, -s.detune_probe);
    if (zeta == std::complex<double>(0.0, 0.0)) {
        // Raman resonance with no Raman decoherence: exact dark state when the
        // coupling is on; the bare two-level line otherwise (zeta cancels).
        if (s.omega_c > 0.0) return {0.0, 0.0};
        return std::complex<double>(0.0, s.gamma_opt) / opt;
    }
    const std::complex<double> denom = zeta * opt + 0.25 * s.omega_c * s.omega_c;
    return std::complex<double>(0.0, s.gamma_opt) * zeta / denom;
}

// Bare two-level probe response (no coupling), same normalization.
inline std::complex<double> bare_response(double detune_probe, double gamma_opt) {
    return std::complex<double>(0.0, gamma_opt) /
           std::complex<double>(gamma_opt, -detune_probe);
}

enum class CouplingRegime { weak, intermediate, strong };

// Collisionless-regime EIT width (full width, rad/s).  In the weak regime
// (Omega_C << Omega_inhom) the width grows linearly,
// Gamma_EIT = Omega_C^2/(4 delta_eff) with delta_eff = Omega_C sqrt(Gamma/(8 Gamma_R));
// in the strong regime delta_eff = W_D and the width is quadratic.  The two
// expressions cross exactly at Omega_inhom.  In between, no single formula
// applies, so both bounds are reported along with the regime flag.
struct CollisionlessWidth {
    double weak_bound = 0.0;   // (Omega_C/4) sqrt(8 Gamma_R / Gamma)
    double strong_bound = 0.0; // Omega_C^2 / (4 W_D)
    CouplingRegime regime = CouplingRegime::weak;

    // Width in the regime the input belongs to; in the intermediate regime
    // the two bounds bracket the truth and the weak one is returned.
    double width() const {
        return regime == CouplingRegime::strong ? strong_bound : weak_bound;
    }
};

inline CollisionlessWidth eit_width_collisionless(double omega_c, const AtomSpec& atom,
                                                  double gamma_raman) {
    validate(atom);
    if (!(omega_c > 0.0)) throw InvalidInput("eit_width_collisionless: omega_c must be > 0");
    if (!(gamma_raman > 0.0))
        throw InvalidInput("eit_width_collisionless: gamma_raman must be > 0");

    CollisionlessWidth w;
    w.weak_bound = 0.25 * omega_c * std::sqrt(8.0 * gamma_raman / atom.gamma_opt);
    w.strong_bound = omega_c * omega_c / (4.0 * atom.doppler_hwhm);
    const double ratio = omega_c / omega_inhom(atom, gamma_raman);
    if (ratio < 0.1)
        w.regime = CouplingRegime::weak;
    else if (ratio > 10.0)
        w.regime = CouplingRegime::strong;
    else
        w.regime = CouplingRegime::intermediate;
    return w;
}

} // namespace eitsim
