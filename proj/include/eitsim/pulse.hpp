#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "eitsim/doppler.hpp"
#include "eitsim/errors.hpp"
#include "eitsim/fft.hpp"
#include "eitsim/units.hpp"

namespace eitsim {

// Gaussian probe pulse.  duration is the full width at half maximum of the
// intensity envelope; carrier_raman_detuning offsets the carrier from the
// Raman resonance.
struct PulseSpec {
    double duration = 70e-6;             // s (intensity FWHM)
    double peak_power = 0.0;             // W (informational; probe is perturbative)
    double carrier_raman_detuning = 0.0; // rad/s
};

struct SampledEnvelope {
    std::vector<double> time_s;    // relative to the input-pulse peak
    std::vector<double> intensity; // |field|^2, input peak normalized to 1
};

struct DelayResult {
    double group_delay = 0.0;          // s, envelope-peak shift
    double group_velocity = 0.0;       // m/s, L/tau when tau > 0 (NaN otherwise)
    double delay_bandwidth_product = 0.0;    // tau * Gamma_EIT (angular width)
    double delay_bandwidth_product_hz = 0.0; // tau * Gamma_EIT/(2 pi)
    double energy_ratio = 0.0;         // output / input pulse energy, <= 1
    bool bandwidth_warning = false;    // pulse spectral FWHM >= Gamma_EIT/2
    SampledEnvelope output_pulse;
};

// Analytic line-center group delay of the pumped medium:
//   tau_g = -ln(t0) (2 W_D + Gamma) Omega_C^2 / [2 Gamma_R (2 W_D + Gamma) + Omega_C^2]^2.
inline double group_delay_analytic(double omega_c, const AtomSpec& atom,
                                   const MediumSpec& medium) {
    validate(atom);
    validate(medium);
    if (omega_c < 0.0) throw InvalidInput("group_delay_analytic: omega_c must be >= 0");
    const double wbar = 2.0 * atom.doppler_hwhm + atom.gamma_opt;
    const double denom = 2.0 * medium.gamma_raman * wbar + omega_c * omega_c;
    return -std::log(medium.t0) * wbar * omega_c * omega_c / (denom * denom);
}

struct OptimalCoupling {
    double omega_c = 0.0; // rad/s, maximizer of the analytic delay
    double tau_max = 0.0; // s, -ln(t0)/(8 Gamma_R)
};

// Coupling strength maximizing the analytic group delay:
//   Omega_opt^2 = 2 Gamma_R (2 W_D + Gamma),  tau_max = -ln(t0)/(8 Gamma_R).
inline OptimalCoupling optimal_coupling(const AtomSpec& atom, const MediumSpec& medium) {
    validate(atom);
    validate(medium);
    OptimalCoupling o;
    o.omega_c = std::sqrt(2.0 * medium.gamma_raman *
                          (2.0 * atom.doppler_hwhm + atom.gamma_opt));
    o.tau_max = -std::log(medium.t0) / (8.0 * medium.gamma_raman);
    return o;
}

struct PropagateOptions {
    std::size_t samples = 16384;  // power of two
    double window_factor = 16.0;  // time window = window_factor * duration
    DopplerOptions doppler;
};

// Frequency-domain propagation of a Gaussian probe pulse through the cell.
//
// The field envelope is synthesized as e(t) = sum_k E_k exp(-i w_k t), so the
// analysis step uses the +i exponent and each spectral component is
// multiplied by the medium transfer function
//   H(w) = exp( i * (-ln t0)/2 * chi(delta = carrier + w) ),
// whose magnitude gives the amplitude transmission sqrt(T) and whose phase
// slope gives the group delay.  The delay is the output envelope-peak shift
// located by parabolic interpolation around the maximum sample.
inline DelayResult propagate_pulse(const PulseSpec& pulse, double omega_c, const AtomSpec& atom,
                                   const MediumSpec& medium, const PropagateOptions& opt = {}) {
    validate(atom);
    validate(medium);
    if (!(pulse.duration > 0.0)) throw InvalidInput("propagate_pulse: duration must be > 0");
    if (omega_c < 0.0) throw InvalidInput("propagate_pulse: omega_c must be >= 0");
    if (!is_power_of_two(opt.samples))
        throw InvalidInput("propagate_pulse: samples must be a power of two");
    if (!(opt.window_factor > 2.0))
        throw InvalidInput("propagate_pulse: window_factor must be > 2");

    const std::size_t n = opt.samples;
    const double window = opt.window_factor * pulse.duration;
    const double dt = window / static_cast<double>(n);
    const double ln2 = std::log(2.0);

    // Input field envelope, intensity FWHM = duration, peak at sample n/2.
    std::vector<std::complex<double>> field(n);
    double energy_in = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double t = (static_cast<double>(k) - static_cast<double>(n / 2)) * dt;
        const double e = std::exp(-2.0 * ln2 * (t / pulse.duration) * (t / pulse.duration));
        field[k] = e;
        energy_in += e * e;
    }

    // Analysis with the exp(+i w t) kernel = unscaled inverse-direction FFT.
    fft_radix2(field, +1);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (auto& z : field) z *= inv_n;

    DopplerModel model(atom, medium, opt.doppler);
    const double lnt0 = std::log(medium.t0);
    double max_amp = 0.0;
    for (const auto& z : field) max_amp = std::max(max_amp, std::abs(z));
    const double amp_cutoff = 1e-18 * max_amp;
    for (std::size_t k = 0; k < n; ++k) {
        // Components below the cutoff contribute nothing at double precision;
        // zeroing them skips the (expensive) susceptibility evaluation.
        if (std::abs(field[k]) <= amp_cutoff) {
            field[k] = 0.0;
            continue;
        }
        const double fk = (k < n / 2) ? static_cast<double>(k)
                                      : static_cast<double>(k) - static_cast<double>(n);
        const double w = two_pi * fk / window;
        const std::complex<double> chi =
            model.chi(pulse.carrier_raman_detuning + w, 0.0, omega_c);
        if (!std::isfinite(chi.real()) || !std::isfinite(chi.imag()))
            throw NumericalError("propagate_pulse: non-finite susceptibility sample");
        field[k] *= std::exp(std::complex<double>(0.0, -0.5 * lnt0) * chi);
    }

    // Synthesis with the exp(-i w t) kernel = forward-direction FFT.
    fft_radix2(field, -1);

    DelayResult res;
    res.output_pulse.time_s.resize(n);
    res.output_pulse.intensity.resize(n);
    double energy_out = 0.0;
    std::size_t peak = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const double p = std::norm(field[k]);
        res.output_pulse.time_s[k] =
            (static_cast<double>(k) - static_cast<double>(n / 2)) * dt;
        res.output_pulse.intensity[k] = p;
        energy_out += p;
        if (p > res.output_pulse.intensity[peak]) peak = k;
    }
    res.energy_ratio = energy_out / energy_in;

    if (peak == 0 || peak + 1 == n)
        throw NumericalError("propagate_pulse: output peak at window edge; enlarge window");
    const double y1 = res.output_pulse.intensity[peak - 1];
    const double y2 = res.output_pulse.intensity[peak];
    const double y3 = res.output_pulse.intensity[peak + 1];
    const double curv = y1 - 2.0 * y2 + y3;
    double shift = 0.0;
    if (curv < 0.0) {
        shift = 0.5 * (y1 - y3) / curv;
    } else if (y1 != y2 || y2 != y3) {
        // A maximum that is not locally parabolic and not flat means the grid
        // cannot resolve the peak.
        throw NumericalError("propagate_pulse: peak interpolation failed; grid too coarse");
    }
    res.group_delay =
        (static_cast<double>(peak) + shift - static_cast<double>(n / 2)) * dt;
    res.group_velocity = res.group_delay > 0.0
                             ? medium.length / res.group_delay
                             : std::numeric_limits<double>::quiet_NaN();

    const double gamma_eit = eit_width_pumped(omega_c, atom, medium);
    res.delay_bandwidth_product = res.group_delay * gamma_eit;
    res.delay_bandwidth_product_hz = res.group_delay * gamma_eit / two_pi;
    // Intensity-spectrum FWHM of the Gaussian pulse is 4 ln2 / duration (angular).
    res.bandwidth_warning = (4.0 * ln2 / pulse.duration >= 0.5 * gamma_eit);
    return res;
}

} // namespace eitsim
