#pragma once

#include <cmath>

#include "eitsim/constants.hpp"
#include "eitsim/errors.hpp"

namespace eitsim {

// Transport parameters of the vapor at the working pressure.  The defaults
// reproduce the canonical 1-Torr metastable-helium estimates: ~0.1 mm mean
// free path, a diffusion constant calibrated so a 1-cm beam gives a 1.0-ms
// diffusive transit, and the 300-K helium mean thermal speed.
struct TransportSpec {
    double mean_free_path = 1.0e-4;     // m
    double diffusion_constant = 0.047;  // m^2/s
    double mean_thermal_speed = mean_thermal_speed_default(); // m/s
    double geometry_factor = 0.47;      // k in tau = k d^2 / D (calibrated)

    static double mean_thermal_speed_default() {
        return eitsim::mean_thermal_speed(300.0, helium4_mass);
    }
};

inline void validate(const TransportSpec& t) {
    if (!(t.mean_free_path > 0.0)) throw InvalidInput("TransportSpec.mean_free_path must be > 0");
    if (!(t.diffusion_constant > 0.0))
        throw InvalidInput("TransportSpec.diffusion_constant must be > 0");
    if (!(t.mean_thermal_speed > 0.0))
        throw InvalidInput("TransportSpec.mean_thermal_speed must be > 0");
    if (!(t.geometry_factor > 0.0)) throw InvalidInput("TransportSpec.geometry_factor must be > 0");
}

// Number of velocity-changing collisions during a random-walk crossing of the
// beam: (d / mean_free_path)^2.
inline double collision_count(double beam_diameter, const TransportSpec& transport) {
    validate(transport);
    if (!(beam_diameter > 0.0)) throw InvalidInput("collision_count: beam_diameter must be > 0");
    const double steps = beam_diameter / transport.mean_free_path;
    return steps * steps;
}

// Diffusive transit time across the beam, tau = k d^2 / D.
inline double diffusive_transit_time(double beam_diameter, const TransportSpec& transport) {
    validate(transport);
    if (!(beam_diameter > 0.0))
        throw InvalidInput("diffusive_transit_time: beam_diameter must be > 0");
    return transport.geometry_factor * beam_diameter * beam_diameter /
           transport.diffusion_constant;
}

// Ballistic (collisionless) crossing time d / v_bar, for order-of-magnitude
// comparison against the diffusive estimate.
inline double ballistic_transit_time(double beam_diameter, const TransportSpec& transport) {
    validate(transport);
    if (!(beam_diameter > 0.0))
        throw InvalidInput("ballistic_transit_time: beam_diameter must be > 0");
    return beam_diameter / transport.mean_thermal_speed;
}

// Raman decoherence estimate: transit-limited rate plus a residual floor
// that absorbs every mechanism the transit argument does not capture.
// Strictly decreasing in beam diameter for fixed residual_rate.
inline double gamma_raman_estimate(double beam_diameter, const TransportSpec& transport,
                                   double residual_rate) {
    if (residual_rate < 0.0)
        throw InvalidInput("gamma_raman_estimate: residual_rate must be >= 0");
    return 1.0 / diffusive_transit_time(beam_diameter, transport) + residual_rate;
}

} // namespace eitsim
