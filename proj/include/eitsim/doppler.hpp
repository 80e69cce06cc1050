#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "eitsim/errors.hpp"
#include "eitsim/lambda_system.hpp"
#include "eitsim/quadrature.hpp"
#include "eitsim/units.hpp"

namespace eitsim {

// Sampled medium response vs Raman detuning at fixed coupling detuning.
struct Spectrum {
    std::vector<double> raman_detunings;         // delta grid, rad/s (monotone)
    std::vector<std::complex<double>> chi;       // normalized susceptibility
    std::vector<double> transmission;            // T = t0^(Im chi), in (0,1]
    double delta_coupling = 0.0;                 // rad/s
    double omega_c = 0.0;                        // rad/s
};

struct DopplerOptions {
    double rel_tol = 1e-6;       // quadrature relative tolerance
    double halfwidth_sigmas = 8.5; // velocity-integral half-range in Doppler sigmas
    int max_depth = 40;
    std::size_t max_intervals = 20000;
};

// Standard deviation of the Gaussian Doppler detuning distribution whose
// half width at half maximum is W_D.
inline double doppler_sigma(const AtomSpec& atom) {
    return atom.doppler_hwhm / std::sqrt(2.0 * std::log(2.0));
}

// Velocity-averaged medium response.  Every velocity class sees the probe
// detuned by Delta + delta + x (x = k*v, Gaussian-distributed with HWHM W_D);
// a fraction pump_efficiency of each class responds as the pumped Lambda
// system and the rest as a bare absorber.  The neighbouring line enters as a
// second Doppler-broadened bare absorber at neighbor_offset with weight
// neighbor_strength and no coupling-induced transparency.  The result is
// normalized so that Omega_C = 0, Delta = delta = 0 gives Im chi = 1, i.e.
// absorbance exactly -ln(t0).
class DopplerModel {
public:
    DopplerModel(const AtomSpec& atom, const MediumSpec& medium, const DopplerOptions& opt = {})
        : atom_(atom), medium_(medium), opt_(opt) {
        validate(atom);
        validate(medium);
        norm_ = raw_chi(0.0, 0.0, 0.0).imag();
        if (!(norm_ > 0.0))
            throw NumericalError("DopplerModel: non-positive normalization integral");
    }

    const AtomSpec& atom() const { return atom_; }
    const MediumSpec& medium() const { return medium_; }

    // Normalized susceptibility at Raman detuning delta and coupling
    // detuning delta_coupling.
    std::complex<double> chi(double delta, double delta_coupling, double omega_c) const {
        return raw_chi(delta, delta_coupling, omega_c) / norm_;
    }

    // Line transmission through the cell, T = t0^(Im chi).
    double transmission(double delta, double delta_coupling, double omega_c) const {
        return std::exp(std::log(medium_.t0) * chi(delta, delta_coupling, omega_c).imag());
    }

private:
    std::complex<double> raw_chi(double delta, double delta_coupling, double omega_c) const {
        if (!std::isfinite(delta) || !std::isfinite(delta_coupling) || !std::isfinite(omega_c))
            throw InvalidInput("doppler_chi: non-finite input");
        if (omega_c < 0.0) throw InvalidInput("doppler_chi: omega_c must be >= 0");

        const double sigma = doppler_sigma(atom_);
        const double span = opt_.halfwidth_sigmas * sigma;
        const double inv_norm = 1.0 / (sigma * std::sqrt(2.0 * pi));
        const double pump = medium_.pump_efficiency;
        const AtomSpec& a = atom_;
        const MediumSpec& m = medium_;

        auto integrand = [&](double x) -> std::complex<double> {
            const double weight = inv_norm * std::exp(-0.5 * (x / sigma) * (x / sigma));
            const double detune = delta_coupling + delta + x;
            LambdaState s{omega_c, delta, detune, a.gamma_opt, m.gamma_raman};
            std::complex<double> value = pump * probe_response(s);
            if (pump < 1.0)
                value += (1.0 - pump) * bare_response(detune, a.gamma_opt);
            if (a.neighbor_enabled())
                value += a.neighbor_strength *
                         bare_response(detune - a.neighbor_offset, a.gamma_opt);
            return weight * value;
        };

        QuadratureOptions q;
        q.rel_tol = opt_.rel_tol;
        q.max_depth = opt_.max_depth;
        q.max_intervals = opt_.max_intervals;
        try {
            return integrate_adaptive(integrand, -span, span, q);
        } catch (const NumericalError& e) {
            throw NumericalError("doppler_chi(delta=" + std::to_string(delta) +
                                 ", Delta=" + std::to_string(delta_coupling) +
                                 ", omega_c=" + std::to_string(omega_c) + "): " + e.what());
        }
    }

    AtomSpec atom_;
    MediumSpec medium_;
    DopplerOptions opt_;
    double norm_ = 1.0;
};

// One-shot convenience wrapper around DopplerModel.
inline std::complex<double> doppler_chi(double delta, double delta_coupling, double omega_c,
                                        const AtomSpec& atom, const MediumSpec& medium,
                                        const DopplerOptions& opt = {}) {
    return DopplerModel(atom, medium, opt).chi(delta, delta_coupling, omega_c);
}

// Sample the model over a delta grid at fixed coupling detuning.
inline Spectrum compute_spectrum(const std::vector<double>& raman_detunings,
                                 double delta_coupling, double omega_c, const AtomSpec& atom,
                                 const MediumSpec& medium, const DopplerOptions& opt = {}) {
    if (raman_detunings.empty()) throw InvalidInput("compute_spectrum: empty delta grid");
    for (std::size_t i = 1; i < raman_detunings.size(); ++i)
        if (!(raman_detunings[i] > raman_detunings[i - 1]))
            throw InvalidInput("compute_spectrum: delta grid must be strictly increasing");

    DopplerModel model(atom, medium, opt);
    Spectrum out;
    out.raman_detunings = raman_detunings;
    out.delta_coupling = delta_coupling;
    out.omega_c = omega_c;
    out.chi.reserve(raman_detunings.size());
    out.transmission.reserve(raman_detunings.size());
    for (double d : raman_detunings) {
        const std::complex<double> c = model.chi(d, delta_coupling, omega_c);
        out.chi.push_back(c);
        out.transmission.push_back(std::exp(std::log(medium.t0) * c.imag()));
    }
    return out;
}

// Closed-form pumped EIT linewidth (full width, rad/s):
//   Gamma_EIT = 2 Gamma_R + Omega_C^2 / (2 W_D + Gamma).
inline double eit_width_pumped(double omega_c, const AtomSpec& atom, const MediumSpec& medium) {
    validate(atom);
    validate(medium);
    if (omega_c < 0.0) throw InvalidInput("eit_width_pumped: omega_c must be >= 0");
    return 2.0 * medium.gamma_raman +
           omega_c * omega_c / (2.0 * atom.doppler_hwhm + atom.gamma_opt);
}

// Closed-form line-center transmission:
//   ln T = ln(t0) / (1 + Omega_C^2 / (2 Gamma_R (2 W_D + Gamma))).
inline double transmission_line_center(double omega_c, const AtomSpec& atom,
                                       const MediumSpec& medium) {
    validate(atom);
    validate(medium);
    if (omega_c < 0.0) throw InvalidInput("transmission_line_center: omega_c must be >= 0");
    const double sat = omega_c * omega_c /
                       (2.0 * medium.gamma_raman * (2.0 * atom.doppler_hwhm + atom.gamma_opt));
    return std::exp(std::log(medium.t0) / (1.0 + sat));
}

// Closed-form line-center susceptibility consistent with the pumped width and
// transmission formulas above (and, through its dispersion, with the analytic
// group delay):
//   chi(delta) = i (Gamma_R - i delta) A / [ (Gamma_R - i delta) A + Omega_C^2/4 ],
// with A = (2 W_D + Gamma)/2 and the same Im chi(0; Omega=0) = 1 normalization
// as the full model.
inline std::complex<double> closed_form_chi(double delta, double omega_c, const AtomSpec& atom,
                                            const MediumSpec& medium) {
    validate(atom);
    validate(medium);
    if (omega_c < 0.0) throw InvalidInput("closed_form_chi: omega_c must be >= 0");
    const double abar = 0.5 * (2.0 * atom.doppler_hwhm + atom.gamma_opt);
    const std::complex<double> zeta(medium.gamma_raman, -delta);
    return std::complex<double>(0.0, 1.0) * zeta * abar /
           (zeta * abar + 0.25 * omega_c * omega_c);
}

// Least-squares fit of width = Omega_C^2 / (4 delta_eff) to (omega_c, width)
// pairs; linear in 1/(4 delta_eff), so the fit is closed-form.
inline double fit_delta_eff(const std::vector<std::pair<double, double>>& width_data) {
    if (width_data.size() < 2) throw FitError("fit_delta_eff: need at least 2 points");
    double s22 = 0.0, s2w = 0.0;
    bool distinct = false;
    for (const auto& [omega, width] : width_data) {
        if (!(omega > 0.0)) throw InvalidInput("fit_delta_eff: omega_c values must be > 0");
        if (omega != width_data.front().first) distinct = true;
        const double o2 = omega * omega;
        s22 += o2 * o2;
        s2w += o2 * width;
    }
    if (!distinct) throw FitError("fit_delta_eff: degenerate data (all omega_c equal)");
    if (!(s2w > 0.0)) throw FitError("fit_delta_eff: widths must be positive on average");
    return s22 / (4.0 * s2w);
}

} // namespace eitsim
