#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "eitsim/csv.hpp"
#include "eitsim/doppler.hpp"
#include "eitsim/errors.hpp"
#include "eitsim/lineshape.hpp"
#include "eitsim/pulse.hpp"
#include "eitsim/transit.hpp"
#include "eitsim/units.hpp"

namespace eitsim {

// Declarative scenario layer: JSON configs in "human" units (GHz, kHz, mW,
// cm, us) are converted to internal angular/SI units once on load; every
// output is a CSV with unit-carrying column names and 9-significant-digit
// floats, so reruns of the same config are byte-identical.

enum class ScenarioKind { spectrum, width_sweep, transmission_sweep, delay_sweep,
                          transit_report, fit };

inline std::string to_string(ScenarioKind k) {
    switch (k) {
        case ScenarioKind::spectrum: return "spectrum";
        case ScenarioKind::width_sweep: return "width-sweep";
        case ScenarioKind::transmission_sweep: return "transmission-sweep";
        case ScenarioKind::delay_sweep: return "delay-sweep";
        case ScenarioKind::transit_report: return "transit-report";
        case ScenarioKind::fit: return "fit";
    }
    return "?";
}

enum class WidthModel { pumped, collisionless };

struct Scenario {
    ScenarioKind kind = ScenarioKind::spectrum;
    AtomSpec atom;
    MediumSpec medium;
    RabiCalibration calibration;
    std::string output_path;

    std::vector<double> intensities;    // W/m^2 (sweeps)
    double intensity = 0.0;             // W/m^2 (spectrum kind)
    std::vector<double> delta_coupling; // rad/s (spectrum kind)
    std::vector<double> scan_deltas;    // rad/s (spectrum kind)
    WidthModel model = WidthModel::pumped;

    bool has_pulse = false;
    PulseSpec pulse;

    bool has_noise = false;
    double noise_sigma = 0.0;
    std::uint64_t noise_seed = 0;

    TransportSpec transport;
    std::vector<double> diameters;  // m (transit-report)
    double residual_rate = 0.0;     // s^-1 (transit-report)

    std::string input_path;         // fit kind
};

struct RunReport {
    std::string output_path;
    std::size_t rows = 0;
    std::vector<std::string> warnings;
};

// Deterministic standard-normal generator (mt19937_64 + Box-Muller); used for
// the optional measurement-noise feature so that a seeded run is reproducible
// across platforms.
class GaussianRng {
public:
    explicit GaussianRng(std::uint64_t seed) : eng_(seed) {}
    double operator()() {
        if (have_) {
            have_ = false;
            return cached_;
        }
        const double u1 = 1.0 - uniform(); // (0, 1]
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        cached_ = r * std::sin(two_pi * u2);
        have_ = true;
        return r * std::cos(two_pi * u2);
    }

private:
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    std::mt19937_64 eng_;
    bool have_ = false;
    double cached_ = 0.0;
};

namespace cfg {

using json = nlohmann::json;

inline void require_keys(const json& obj, const std::string& path,
                         const std::set<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        const std::string& key = it.key();
        if (!key.empty() && key.front() == '_') continue; // comment keys
        if (!allowed.count(key))
            throw ConfigError(path.empty() ? "unknown field '" + key + "'"
                                           : path + ": unknown field '" + key + "'");
    }
}

inline std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

inline double number(const json& obj, const std::string& path, const std::string& key,
                     bool required, double fallback = 0.0) {
    if (!obj.contains(key)) {
        if (required) throw ConfigError(join(path, key) + ": required field is missing");
        return fallback;
    }
    const json& v = obj.at(key);
    if (!v.is_number())
        throw ConfigError(join(path, key) + ": expected a number");
    return v.get<double>();
}

inline std::string text(const json& obj, const std::string& path, const std::string& key,
                        bool required, const std::string& fallback = "") {
    if (!obj.contains(key)) {
        if (required) throw ConfigError(join(path, key) + ": required field is missing");
        return fallback;
    }
    const json& v = obj.at(key);
    if (!v.is_string()) throw ConfigError(join(path, key) + ": expected a string");
    return v.get<std::string>();
}

// A grid is either an explicit array of numbers or {min, max, points, scale}.
inline std::vector<double> grid(const json& v, const std::string& path) {
    std::vector<double> out;
    if (v.is_array()) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number())
                throw ConfigError(path + "[" + std::to_string(i) + "]: expected a number");
            out.push_back(v[i].get<double>());
        }
    } else if (v.is_object()) {
        require_keys(v, path, {"min", "max", "points", "scale"});
        const double lo = number(v, path, "min", true);
        const double hi = number(v, path, "max", true);
        const double pts = number(v, path, "points", true);
        const std::string scale = text(v, path, "scale", false, "linear");
        const int n = static_cast<int>(pts);
        if (n < 1 || pts != n) throw ConfigError(path + ".points: expected a positive integer");
        if (!(hi >= lo)) throw ConfigError(path + ": max must be >= min");
        if (scale == "linear") {
            for (int i = 0; i < n; ++i)
                out.push_back(n == 1 ? lo : lo + (hi - lo) * i / double(n - 1));
        } else if (scale == "log") {
            if (!(lo > 0.0)) throw ConfigError(path + ": log scale requires min > 0");
            const double llo = std::log(lo), lhi = std::log(hi);
            for (int i = 0; i < n; ++i)
                out.push_back(n == 1 ? lo : std::exp(llo + (lhi - llo) * i / double(n - 1)));
        } else {
            throw ConfigError(path + ".scale: expected 'linear' or 'log'");
        }
    } else {
        throw ConfigError(path + ": expected an array or a {min,max,points,scale} object");
    }
    if (out.empty()) throw ConfigError(path + ": grid is empty");
    for (double x : out)
        if (!std::isfinite(x)) throw ConfigError(path + ": non-finite grid value");
    return out;
}

inline AtomSpec atom_spec(const json& root) {
    AtomSpec a;
    if (!root.contains("atom")) return a;
    const json& j = root.at("atom");
    if (!j.is_object()) throw ConfigError("atom: expected an object");
    require_keys(j, "atom",
                 {"gamma_opt_per_s", "doppler_hwhm_ghz", "wavelength_um", "i_sat_w_m2",
                  "neighbor_offset_ghz", "neighbor_strength"});
    a.gamma_opt = number(j, "atom", "gamma_opt_per_s", false, a.gamma_opt);
    a.doppler_hwhm = number(j, "atom", "doppler_hwhm_ghz", false,
                            hz_from_angular(a.doppler_hwhm) / 1e9) * 1e9 * two_pi;
    a.wavelength = number(j, "atom", "wavelength_um", false, a.wavelength * 1e6) * 1e-6;
    a.i_sat = number(j, "atom", "i_sat_w_m2", false, a.i_sat);
    a.neighbor_offset = number(j, "atom", "neighbor_offset_ghz", false,
                               hz_from_angular(a.neighbor_offset) / 1e9) * 1e9 * two_pi;
    a.neighbor_strength = number(j, "atom", "neighbor_strength", false, a.neighbor_strength);
    try {
        validate(a);
    } catch (const InvalidInput& e) {
        throw ConfigError(std::string("atom: ") + e.what());
    }
    return a;
}

inline MediumSpec medium_spec(const json& root) {
    MediumSpec m;
    if (!root.contains("medium")) return m;
    const json& j = root.at("medium");
    if (!j.is_object()) throw ConfigError("medium: expected an object");
    require_keys(j, "medium",
                 {"length_cm", "t0", "density_per_cm3", "temperature_k", "pressure_torr",
                  "pump_efficiency", "gamma_raman_khz"});
    m.length = number(j, "medium", "length_cm", false, m.length * 1e2) * 1e-2;
    m.t0 = number(j, "medium", "t0", false, m.t0);
    m.density = number(j, "medium", "density_per_cm3", false, m.density * 1e-6) * 1e6;
    m.temperature = number(j, "medium", "temperature_k", false, m.temperature);
    m.pressure = number(j, "medium", "pressure_torr", false, m.pressure);
    m.pump_efficiency = number(j, "medium", "pump_efficiency", false, m.pump_efficiency);
    m.gamma_raman = number(j, "medium", "gamma_raman_khz", false,
                           hz_from_angular(m.gamma_raman) / 1e3) * 1e3 * two_pi;
    try {
        validate(m);
    } catch (const InvalidInput& e) {
        throw ConfigError(std::string("medium: ") + e.what());
    }
    return m;
}

inline TransportSpec transport_spec(const json& root) {
    TransportSpec t;
    if (!root.contains("transport")) return t;
    const json& j = root.at("transport");
    if (!j.is_object()) throw ConfigError("transport: expected an object");
    require_keys(j, "transport",
                 {"mean_free_path_mm", "diffusion_constant_m2_per_s",
                  "mean_thermal_speed_m_per_s", "geometry_factor"});
    t.mean_free_path =
        number(j, "transport", "mean_free_path_mm", false, t.mean_free_path * 1e3) * 1e-3;
    t.diffusion_constant =
        number(j, "transport", "diffusion_constant_m2_per_s", false, t.diffusion_constant);
    t.mean_thermal_speed =
        number(j, "transport", "mean_thermal_speed_m_per_s", false, t.mean_thermal_speed);
    t.geometry_factor = number(j, "transport", "geometry_factor", false, t.geometry_factor);
    try {
        validate(t);
    } catch (const InvalidInput& e) {
        throw ConfigError(std::string("transport: ") + e.what());
    }
    return t;
}

} // namespace cfg

inline Scenario parse_scenario(const nlohmann::json& root) {
    using cfg::join;
    using cfg::number;
    using cfg::text;

    if (!root.is_object()) throw ConfigError("config root must be a JSON object");
    cfg::require_keys(root, "",
                      {"schema_version", "kind", "output", "atom", "medium", "calibration",
                       "drive", "scan", "model", "pulse", "noise", "transport",
                       "diameters_cm", "residual_rate_per_s", "input"});

    const double version = number(root, "", "schema_version", true);
    if (version != 1.0) throw ConfigError("schema_version: only version 1 is supported");

    Scenario s;
    const std::string kind = text(root, "", "kind", true);
    if (kind == "spectrum") s.kind = ScenarioKind::spectrum;
    else if (kind == "width-sweep") s.kind = ScenarioKind::width_sweep;
    else if (kind == "transmission-sweep") s.kind = ScenarioKind::transmission_sweep;
    else if (kind == "delay-sweep") s.kind = ScenarioKind::delay_sweep;
    else if (kind == "transit-report") s.kind = ScenarioKind::transit_report;
    else if (kind == "fit") s.kind = ScenarioKind::fit;
    else throw ConfigError("kind: unknown scenario kind '" + kind + "'");

    s.output_path = text(root, "", "output", true);
    if (s.output_path.empty()) throw ConfigError("output: must not be empty");

    s.atom = cfg::atom_spec(root);
    s.medium = cfg::medium_spec(root);

    if (root.contains("calibration")) {
        const auto& j = root.at("calibration");
        if (!j.is_object()) throw ConfigError("calibration: expected an object");
        cfg::require_keys(j, "calibration", {"kappa"});
        s.calibration.kappa = number(j, "calibration", "kappa", true);
        if (!(s.calibration.kappa > 0.0)) throw ConfigError("calibration.kappa: must be > 0");
    } else {
        s.calibration = default_calibration(s.atom);
    }

    if (root.contains("model")) {
        const std::string m = text(root, "", "model", true);
        if (m == "pumped") s.model = WidthModel::pumped;
        else if (m == "collisionless") s.model = WidthModel::collisionless;
        else throw ConfigError("model: expected 'pumped' or 'collisionless'");
    }

    // Drive: a scalar power/intensity for spectrum scans, a grid for sweeps.
    double beam_diameter = 1.5e-2;
    if (root.contains("drive")) {
        const auto& j = root.at("drive");
        if (!j.is_object()) throw ConfigError("drive: expected an object");
        cfg::require_keys(j, "drive",
                          {"beam_diameter_cm", "coupling_power_mw", "coupling_powers_mw",
                           "intensity_w_m2", "intensities_w_m2", "delta_coupling_ghz"});
        beam_diameter = number(j, "drive", "beam_diameter_cm", false, 1.5) * 1e-2;
        if (!(beam_diameter > 0.0)) throw ConfigError("drive.beam_diameter_cm: must be > 0");

        const bool has_power = j.contains("coupling_power_mw");
        const bool has_powers = j.contains("coupling_powers_mw");
        const bool has_int = j.contains("intensity_w_m2");
        const bool has_ints = j.contains("intensities_w_m2");
        if ((has_power || has_int) && (has_powers || has_ints))
            throw ConfigError("drive: give either a scalar power/intensity or a grid, not both");
        if (has_power && has_int)
            throw ConfigError("drive: give coupling_power_mw or intensity_w_m2, not both");
        if (has_powers && has_ints)
            throw ConfigError(
                "drive: give coupling_powers_mw or intensities_w_m2, not both");

        if (has_power) {
            DriveSpec d;
            d.beam_diameter = beam_diameter;
            d.coupling_power = number(j, "drive", "coupling_power_mw", true) * 1e-3;
            if (d.coupling_power < 0.0)
                throw ConfigError("drive.coupling_power_mw: must be >= 0");
            s.intensity = average_intensity(d);
        } else if (has_int) {
            s.intensity = number(j, "drive", "intensity_w_m2", true);
            if (s.intensity < 0.0) throw ConfigError("drive.intensity_w_m2: must be >= 0");
        }
        if (has_powers) {
            for (double p : cfg::grid(j.at("coupling_powers_mw"), "drive.coupling_powers_mw")) {
                if (p < 0.0) throw ConfigError("drive.coupling_powers_mw: must be >= 0");
                DriveSpec d;
                d.beam_diameter = beam_diameter;
                d.coupling_power = p * 1e-3;
                s.intensities.push_back(average_intensity(d));
            }
        } else if (has_ints) {
            s.intensities = cfg::grid(j.at("intensities_w_m2"), "drive.intensities_w_m2");
            for (double i : s.intensities)
                if (i < 0.0) throw ConfigError("drive.intensities_w_m2: must be >= 0");
        }
        if (j.contains("delta_coupling_ghz")) {
            for (double g : cfg::grid(j.at("delta_coupling_ghz"), "drive.delta_coupling_ghz"))
                s.delta_coupling.push_back(g * 1e9 * two_pi);
        }
    }
    if (s.delta_coupling.empty()) s.delta_coupling.push_back(0.0);

    if (root.contains("scan")) {
        const auto& j = root.at("scan");
        if (!j.is_object()) throw ConfigError("scan: expected an object");
        cfg::require_keys(j, "scan", {"min_khz", "max_khz", "points"});
        const double lo = number(j, "scan", "min_khz", true);
        const double hi = number(j, "scan", "max_khz", true);
        const double pts = number(j, "scan", "points", true);
        const int n = static_cast<int>(pts);
        if (n < 2 || pts != n) throw ConfigError("scan.points: expected an integer >= 2");
        if (!(hi > lo)) throw ConfigError("scan: max_khz must be > min_khz");
        s.scan_deltas.reserve(n);
        for (int i = 0; i < n; ++i)
            s.scan_deltas.push_back((lo + (hi - lo) * i / double(n - 1)) * 1e3 * two_pi);
    }

    if (root.contains("pulse")) {
        const auto& j = root.at("pulse");
        if (!j.is_object()) throw ConfigError("pulse: expected an object");
        cfg::require_keys(j, "pulse", {"duration_us", "peak_power_mw", "carrier_detuning_khz"});
        s.pulse.duration = number(j, "pulse", "duration_us", true) * 1e-6;
        if (!(s.pulse.duration > 0.0)) throw ConfigError("pulse.duration_us: must be > 0");
        s.pulse.peak_power = number(j, "pulse", "peak_power_mw", false, 0.0) * 1e-3;
        s.pulse.carrier_raman_detuning =
            number(j, "pulse", "carrier_detuning_khz", false, 0.0) * 1e3 * two_pi;
        s.has_pulse = true;
    }

    if (root.contains("noise")) {
        const auto& j = root.at("noise");
        if (!j.is_object()) throw ConfigError("noise: expected an object");
        cfg::require_keys(j, "noise", {"sigma", "seed"});
        s.noise_sigma = number(j, "noise", "sigma", true);
        const double seed = number(j, "noise", "seed", true);
        if (!(s.noise_sigma >= 0.0)) throw ConfigError("noise.sigma: must be >= 0");
        if (seed < 0.0 || seed != std::floor(seed))
            throw ConfigError("noise.seed: expected a non-negative integer");
        s.noise_seed = static_cast<std::uint64_t>(seed);
        s.has_noise = true;
    }

    s.transport = cfg::transport_spec(root);
    if (root.contains("diameters_cm")) {
        for (double d : cfg::grid(root.at("diameters_cm"), "diameters_cm")) {
            if (!(d > 0.0)) throw ConfigError("diameters_cm: must be > 0");
            s.diameters.push_back(d * 1e-2);
        }
    }
    s.residual_rate = number(root, "", "residual_rate_per_s", false, 0.0);
    if (s.residual_rate < 0.0) throw ConfigError("residual_rate_per_s: must be >= 0");

    s.input_path = text(root, "", "input", false, "");

    // Kind-specific completeness checks.
    switch (s.kind) {
        case ScenarioKind::spectrum:
            if (s.scan_deltas.empty())
                throw ConfigError("spectrum scenario requires a 'scan' block");
            if (!(s.intensity >= 0.0))
                throw ConfigError("spectrum scenario requires drive power or intensity");
            break;
        case ScenarioKind::width_sweep:
        case ScenarioKind::transmission_sweep:
        case ScenarioKind::delay_sweep:
            if (s.intensities.empty())
                throw ConfigError(to_string(s.kind) +
                                  " scenario requires drive.coupling_powers_mw or "
                                  "drive.intensities_w_m2");
            if (s.kind == ScenarioKind::delay_sweep && !s.has_pulse)
                throw ConfigError("delay-sweep scenario requires a 'pulse' block");
            if (s.kind == ScenarioKind::width_sweep && s.model == WidthModel::collisionless)
                for (double i : s.intensities)
                    if (!(i > 0.0))
                        throw ConfigError(
                            "width-sweep: the collisionless model requires positive intensities");
            break;
        case ScenarioKind::transit_report:
            if (s.diameters.empty())
                throw ConfigError("transit-report scenario requires 'diameters_cm'");
            break;
        case ScenarioKind::fit:
            if (s.input_path.empty())
                throw ConfigError("fit scenario requires 'input'");
            break;
    }
    return s;
}

inline Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
    try {
        return parse_scenario(root);
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------
// Scenario execution

inline RunReport run_spectrum(const Scenario& s) {
    const double omega = rabi_from_intensity(s.intensity, s.calibration);
    std::vector<std::string> header = {"raman_detuning_hz"};
    std::vector<Spectrum> spectra;
    for (double dc : s.delta_coupling) {
        spectra.push_back(
            compute_spectrum(s.scan_deltas, dc, omega, s.atom, s.medium));
        header.push_back("transmission_dc_" +
                         format_double(hz_from_angular(dc) / 1e9) + "ghz");
    }
    if (s.has_noise && s.noise_sigma > 0.0) {
        GaussianRng rng(s.noise_seed);
        for (auto& sp : spectra)
            for (double& t : sp.transmission)
                t = std::max(t + s.noise_sigma * rng(), 1e-9);
    }
    CsvWriter csv(header);
    for (std::size_t i = 0; i < s.scan_deltas.size(); ++i) {
        std::vector<std::string> row = {format_double(hz_from_angular(s.scan_deltas[i]))};
        for (const auto& sp : spectra) row.push_back(format_double(sp.transmission[i]));
        csv.row(row);
    }
    csv.write(s.output_path);
    return {s.output_path, csv.rows(), {}};
}

inline RunReport run_width_sweep(const Scenario& s) {
    CsvWriter csv({"intensity_w_m2", "fwhm_hz", "model"});
    const std::string label = s.model == WidthModel::pumped ? "pumped" : "collisionless";
    for (double intensity : s.intensities) {
        const double omega = rabi_from_intensity(intensity, s.calibration);
        double width = 0.0;
        if (s.model == WidthModel::pumped) {
            width = eit_width_pumped(omega, s.atom, s.medium);
        } else {
            width = eit_width_collisionless(omega, s.atom, s.medium.gamma_raman).width();
        }
        csv.row({format_double(intensity), format_double(hz_from_angular(width)), label});
    }
    csv.write(s.output_path);
    return {s.output_path, csv.rows(), {}};
}

inline RunReport run_transmission_sweep(const Scenario& s) {
    CsvWriter csv({"intensity_w_m2", "t_closed_form", "t_full_model"});
    DopplerModel model(s.atom, s.medium);
    for (double intensity : s.intensities) {
        const double omega = rabi_from_intensity(intensity, s.calibration);
        const double closed = transmission_line_center(omega, s.atom, s.medium);
        const double full = model.transmission(0.0, 0.0, omega);
        csv.row({format_double(intensity), format_double(closed), format_double(full)});
    }
    csv.write(s.output_path);
    return {s.output_path, csv.rows(), {}};
}

inline RunReport run_delay_sweep(const Scenario& s) {
    RunReport report;
    CsvWriter csv({"intensity_w_m2", "tau_analytic_s", "tau_numeric_s"});
    bool warned = false;
    for (double intensity : s.intensities) {
        const double omega = rabi_from_intensity(intensity, s.calibration);
        const double analytic = group_delay_analytic(omega, s.atom, s.medium);
        const DelayResult num = propagate_pulse(s.pulse, omega, s.atom, s.medium);
        if (num.bandwidth_warning && !warned) {
            report.warnings.push_back(
                "pulse spectral width exceeds half the transparency width at intensity " +
                format_double(intensity) +
                " W/m^2; the numeric delay averages over the dispersion curvature");
            warned = true;
        }
        csv.row({format_double(intensity), format_double(analytic),
                 format_double(num.group_delay)});
    }
    csv.write(s.output_path);
    report.output_path = s.output_path;
    report.rows = csv.rows();
    return report;
}

inline RunReport run_transit_report(const Scenario& s) {
    CsvWriter csv({"beam_diameter_m", "collision_count", "tau_diffusive_s",
                   "gamma_raman_per_s"});
    for (double d : s.diameters) {
        csv.row({format_double(d), format_double(collision_count(d, s.transport)),
                 format_double(diffusive_transit_time(d, s.transport)),
                 format_double(gamma_raman_estimate(d, s.transport, s.residual_rate))});
    }
    csv.write(s.output_path);
    return {s.output_path, csv.rows(), {}};
}

// Fit an ingested CSV.  Two layouts are recognized: a spectrum table
// (raman_detuning_hz + transmission columns) gets a Lorentzian fit of each
// -ln T column, and a width table (intensity_w_m2, fwhm_hz, ...) gets the
// width-vs-intensity regression.
inline RunReport run_fit_csv(const std::string& input_path, const std::string& output_path) {
    const CsvTable table = read_csv(input_path);
    if (table.header.empty()) throw InvalidData(input_path + ": missing header");

    if (table.header.front() == "raman_detuning_hz") {
        if (table.header.size() < 2)
            throw InvalidData(input_path + ": spectrum CSV needs transmission columns");
        const std::vector<double> delta_hz = table.numeric_column(0);
        std::vector<double> delta(delta_hz.size());
        for (std::size_t i = 0; i < delta_hz.size(); ++i)
            delta[i] = angular_from_hz(delta_hz[i]);
        CsvWriter csv({"series", "center_hz", "fwhm_hz", "amplitude", "offset",
                       "rms_residual", "converged"});
        for (std::size_t c = 1; c < table.header.size(); ++c) {
            const std::vector<double> transmission = table.numeric_column(c);
            const FitResult fit = fit_lorentzian(delta, log_transform(transmission));
            csv.row({table.header[c], format_double(hz_from_angular(fit.center)),
                     format_double(hz_from_angular(fit.fwhm)), format_double(fit.amplitude),
                     format_double(fit.offset), format_double(fit.rms_residual),
                     fit.converged ? "1" : "0"});
        }
        csv.write(output_path);
        return {output_path, csv.rows(), {}};
    }

    if (table.header.size() >= 2 && table.header[0] == "intensity_w_m2" &&
        table.header[1] == "fwhm_hz") {
        const std::vector<double> intensity = table.numeric_column(0);
        const std::vector<double> fwhm_hz = table.numeric_column(1);
        std::vector<std::pair<double, double>> points;
        for (std::size_t i = 0; i < intensity.size(); ++i)
            points.emplace_back(intensity[i], fwhm_hz[i]);
        const RegressionResult reg = width_regression(points);
        CsvWriter csv({"slope_hz_per_w_m2", "intercept_hz", "gamma_raman_per_s", "r_squared"});
        csv.row({format_double(reg.slope), format_double(reg.intercept),
                 format_double(reg.gamma_raman_extracted), format_double(reg.r_squared)});
        csv.write(output_path);
        return {output_path, csv.rows(), {}};
    }

    throw InvalidData(input_path +
                      ": unrecognized CSV layout (expected a spectrum table starting with "
                      "'raman_detuning_hz' or a width table starting with "
                      "'intensity_w_m2,fwhm_hz')");
}

inline RunReport run_scenario(const Scenario& s) {
    switch (s.kind) {
        case ScenarioKind::spectrum: return run_spectrum(s);
        case ScenarioKind::width_sweep: return run_width_sweep(s);
        case ScenarioKind::transmission_sweep: return run_transmission_sweep(s);
        case ScenarioKind::delay_sweep: return run_delay_sweep(s);
        case ScenarioKind::transit_report: return run_transit_report(s);
        case ScenarioKind::fit: return run_fit_csv(s.input_path, s.output_path);
    }
    throw Error("run_scenario: unhandled scenario kind");
}

} // namespace eitsim
