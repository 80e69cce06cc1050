#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "eitsim/doppler.hpp"
#include "eitsim/errors.hpp"

namespace eitsim {

// Absorbance samples -ln T vs Raman detuning.
struct AbsorbanceSamples {
    std::vector<double> delta;      // rad/s
    std::vector<double> absorbance; // dimensionless
};

struct FitResult {
    double center = 0.0;       // rad/s
    double fwhm = 0.0;         // rad/s
    double amplitude = 0.0;    // dimensionless (dip depth)
    double offset = 0.0;       // dimensionless (baseline)
    double rms_residual = 0.0; // dimensionless
    bool converged = false;
    int iterations = 0;          // diagnostics
    double gradient_norm = 0.0;  // diagnostics, relative gradient at exit
};

struct RegressionResult {
    double slope = 0.0;                 // Hz per (W/m^2)
    double intercept = 0.0;             // Hz
    double gamma_raman_extracted = 0.0; // s^-1 (angular), = pi * intercept
    double r_squared = 0.0;
};

// Absorbance of a Lorentzian dip: offset - amplitude (w/2)^2 / ((d-c)^2 + (w/2)^2).
inline double lorentzian_absorbance(double delta, double center, double fwhm, double amplitude,
                                    double offset) {
    const double hw = 0.5 * fwhm;
    const double d = delta - center;
    return offset - amplitude * hw * hw / (d * d + hw * hw);
}

// -ln T of a transmission vector; T must be positive and finite.
inline std::vector<double> log_transform(const std::vector<double>& transmission) {
    std::vector<double> out;
    out.reserve(transmission.size());
    for (double t : transmission) {
        if (!(t > 0.0) || !std::isfinite(t))
            throw InvalidData("log_transform: transmission sample not in (0, inf)");
        out.push_back(-std::log(t));
    }
    return out;
}

inline AbsorbanceSamples log_transform(const Spectrum& spectrum) {
    if (spectrum.raman_detunings.size() != spectrum.transmission.size())
        throw InvalidData("log_transform: spectrum arrays differ in length");
    return {spectrum.raman_detunings, log_transform(spectrum.transmission)};
}

struct FitOptions {
    int max_iterations = 200;
    double gradient_tol = 1e-9; // relative gradient norm
};

namespace detail {

// Solve the 4x4 system M x = rhs in place by Gaussian elimination with
// partial pivoting; returns false on (numerical) singularity.
inline bool solve4(std::array<std::array<double, 4>, 4>& m, std::array<double, 4>& rhs,
                   std::array<double, 4>& x) {
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        if (std::abs(m[piv][col]) < 1e-300) return false;
        std::swap(m[col], m[piv]);
        std::swap(rhs[col], rhs[piv]);
        for (int r = col + 1; r < 4; ++r) {
            const double f = m[r][col] / m[col][col];
            for (int c = col; c < 4; ++c) m[r][c] -= f * m[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    for (int r = 3; r >= 0; --r) {
        double s = rhs[r];
        for (int c = r + 1; c < 4; ++c) s -= m[r][c] * x[c];
        x[r] = s / m[r][r];
    }
    return true;
}

} // namespace detail

// Levenberg-Marquardt fit of a Lorentzian dip to absorbance samples.  The
// model is offset - amplitude (w/2)^2 / ((d-c)^2 + (w/2)^2); the fit is run
// in internally normalized coordinates (initial width and depth scaled to 1)
// with an analytic Jacobian.  Initialization uses the sample extremum and the
// half-depth crossings; convergence is declared when the relative gradient
// norm drops below gradient_tol (or the step underflows).
inline FitResult fit_lorentzian(const std::vector<double>& delta, const std::vector<double>& y,
                                const FitOptions& opt = {}) {
    const std::size_t n = delta.size();
    if (n != y.size()) throw InvalidData("fit_lorentzian: arrays differ in length");
    if (n < 5) throw InvalidData("fit_lorentzian: need at least 5 samples");
    for (std::size_t i = 1; i < n; ++i)
        if (!(delta[i] > delta[i - 1]))
            throw InvalidData("fit_lorentzian: delta grid must be strictly increasing");

    // Initial guesses from the extremum and the half-depth crossings.
    std::size_t imin = 0;
    double ymax = y[0], ymin = y[0];
    for (std::size_t i = 0; i < n; ++i) {
        if (y[i] < ymin) { ymin = y[i]; imin = i; }
        if (y[i] > ymax) ymax = y[i];
    }
    const double depth0 = ymax - ymin;
    if (!(depth0 > 0.0)) throw InvalidData("fit_lorentzian: dip not found (flat data)");
    const double level = ymax - 0.5 * depth0;

    auto crossing = [&](bool rightward) -> double {
        std::size_t i = imin;
        while (true) {
            const std::size_t j = rightward ? i + 1 : i - 1;
            if ((rightward && i + 1 >= n) || (!rightward && i == 0)) return std::nan("");
            if (y[j] >= level) {
                const double f = (level - y[i]) / (y[j] - y[i]);
                return delta[i] + f * (delta[j] - delta[i]);
            }
            i = j;
        }
    };
    const double left = crossing(false);
    const double right = crossing(true);
    if (std::isnan(left) || std::isnan(right))
        throw InvalidData("fit_lorentzian: half-depth crossings not bracketed by the data");
    const double w0 = right - left;
    if (!(w0 > 0.0)) throw InvalidData("fit_lorentzian: degenerate half-depth width");
    if (delta.back() - delta.front() < 2.0 * w0)
        throw InvalidData("fit_lorentzian: span too narrow (need >= 2x the dip width)");
    const double c0 = delta[imin];

    // Normalized coordinates: u = (delta - c0)/w0, z = (y - ymin)/depth0.
    std::vector<double> u(n), z(n);
    for (std::size_t i = 0; i < n; ++i) {
        u[i] = (delta[i] - c0) / w0;
        z[i] = (y[i] - ymin) / depth0;
    }

    // Parameters p = (C, W, A, O) in normalized space.
    std::array<double, 4> p = {0.0, 1.0, 1.0, 1.0};
    auto cost_and_derivs = [&](const std::array<double, 4>& q, std::vector<double>& r,
                               std::vector<std::array<double, 4>>& jac) -> double {
        const double hw = 0.5 * q[1];
        double cost = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = u[i] - q[0];
            const double den = d * d + hw * hw;
            const double lor = hw * hw / den;
            r[i] = (q[3] - q[2] * lor) - z[i];
            cost += r[i] * r[i];
            jac[i][0] = -2.0 * q[2] * hw * hw * d / (den * den);
            jac[i][1] = -q[2] * hw * d * d / (den * den);
            jac[i][2] = -lor;
            jac[i][3] = 1.0;
        }
        return 0.5 * cost;
    };

    std::vector<double> r(n);
    std::vector<std::array<double, 4>> jac(n);
    double cost = cost_and_derivs(p, r, jac);
    double lambda = 1e-3;
    FitResult out;
    int iter = 0;
    for (; iter < opt.max_iterations; ++iter) {
        // Normal equations.
        std::array<std::array<double, 4>, 4> jtj{};
        std::array<double, 4> jtr{};
        for (std::size_t i = 0; i < n; ++i)
            for (int a = 0; a < 4; ++a) {
                jtr[a] += jac[i][a] * r[i];
                for (int b = 0; b < 4; ++b) jtj[a][b] += jac[i][a] * jac[i][b];
            }
        double gnorm = 0.0;
        for (int a = 0; a < 4; ++a) gnorm = std::max(gnorm, std::abs(jtr[a]));
        out.gradient_norm = gnorm / std::max(1.0, cost);
        if (out.gradient_norm < opt.gradient_tol) {
            out.converged = true;
            break;
        }
        bool stepped = false;
        for (int attempt = 0; attempt < 30; ++attempt) {
            std::array<std::array<double, 4>, 4> m = jtj;
            for (int a = 0; a < 4; ++a) m[a][a] += lambda * std::max(jtj[a][a], 1e-12);
            std::array<double, 4> rhs = {-jtr[0], -jtr[1], -jtr[2], -jtr[3]};
            std::array<double, 4> step{};
            if (detail::solve4(m, rhs, step)) {
                std::array<double, 4> q = {p[0] + step[0], p[1] + step[1], p[2] + step[2],
                                           p[3] + step[3]};
                std::vector<double> r2(n);
                std::vector<std::array<double, 4>> j2(n);
                const double c2 = cost_and_derivs(q, r2, j2);
                if (std::isfinite(c2) && c2 < cost) {
                    const double dp = std::max(std::max(std::abs(step[0]), std::abs(step[1])),
                                               std::max(std::abs(step[2]), std::abs(step[3])));
                    p = q;
                    cost = c2;
                    r.swap(r2);
                    jac.swap(j2);
                    lambda = std::max(lambda * 0.1, 1e-15);
                    stepped = true;
                    if (dp < 1e-14) {
                        out.converged = true; // step underflow at the optimum
                    }
                    break;
                }
            }
            lambda *= 10.0;
        }
        if (out.converged) break;
        if (!stepped) {
            out.converged = true; // no downhill direction left: at a minimum
            break;
        }
    }
    out.iterations = iter;

    out.center = c0 + p[0] * w0;
    out.fwhm = std::abs(p[1]) * w0;
    out.amplitude = p[2] * depth0;
    out.offset = p[3] * depth0 + ymin;
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) ss += r[i] * r[i];
    out.rms_residual = std::sqrt(ss / static_cast<double>(n)) * depth0;
    return out;
}

inline FitResult fit_lorentzian(const AbsorbanceSamples& samples, const FitOptions& opt = {}) {
    return fit_lorentzian(samples.delta, samples.absorbance, opt);
}

// Ordinary least squares of fwhm_hz vs intensity; the Raman rate follows
// from the zero-intensity intercept, Gamma_EIT(0) = 2 Gamma_R, so
// Gamma_R = pi * intercept_hz in angular units.
inline RegressionResult width_regression(
    const std::vector<std::pair<double, double>>& points) {
    const std::size_t n = points.size();
    if (n < 3) throw InvalidData("width_regression: need at least 3 points");
    double sx = 0.0, sy = 0.0;
    for (const auto& [x, y] : points) { sx += x; sy += y; }
    const double mx = sx / static_cast<double>(n);
    const double my = sy / static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& [x, y] : points) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    if (!(sxx > 0.0)) throw FitError("width_regression: rank-deficient input (equal intensities)");

    RegressionResult res;
    res.slope = sxy / sxx;
    res.intercept = my - res.slope * mx;
    res.gamma_raman_extracted = pi * res.intercept;
    double ss_res = 0.0;
    for (const auto& [x, y] : points) {
        const double e = y - (res.intercept + res.slope * x);
        ss_res += e * e;
    }
    res.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : (ss_res == 0.0 ? 1.0 : 0.0);
    return res;
}

// Signed asymmetry of the transparency feature.  The absorbance is compared
// against a straight baseline between the spectrum edges; the deviation's
// maximum marks the dip center, and the metric is
//   (A+ - A-) / (|A+| + |A-|)
// with A+- the signed deviation integrals right/left of the center.  Zero for
// symmetric profiles, +-1 for a purely dispersive (odd) deviation, and
// antisymmetric under mirroring of the detuning axis.
inline double asymmetry_metric(const Spectrum& spectrum) {
    const std::vector<double>& d = spectrum.raman_detunings;
    const std::vector<double>& t = spectrum.transmission;
    if (d.size() != t.size()) throw InvalidData("asymmetry_metric: arrays differ in length");
    const std::size_t n = d.size();
    if (n < 5) throw InvalidData("asymmetry_metric: need at least 5 samples");

    const std::vector<double> absorb = log_transform(t);
    std::vector<double> dev(n);
    const double a0 = absorb.front(), a1 = absorb.back();
    const double d0 = d.front(), d1 = d.back();
    std::size_t ipk = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double baseline = a0 + (a1 - a0) * (d[i] - d0) / (d1 - d0);
        dev[i] = baseline - absorb[i];
        if (dev[i] > dev[ipk]) ipk = i;
    }
    if (ipk == 0 || ipk + 1 == n || !(dev[ipk] > 0.0))
        throw InvalidData("asymmetry_metric: dip not found inside the spectrum");

    auto integrate = [&](std::size_t from, std::size_t to) {
        double s = 0.0;
        for (std::size_t i = from; i < to; ++i)
            s += 0.5 * (dev[i] + dev[i + 1]) * (d[i + 1] - d[i]);
        return s;
    };
    const double a_minus = integrate(0, ipk);
    const double a_plus = integrate(ipk, n - 1);
    const double denom = std::abs(a_plus) + std::abs(a_minus);
    if (!(denom > 0.0)) throw InvalidData("asymmetry_metric: zero deviation integrals");
    return (a_plus - a_minus) / denom;
}

} // namespace eitsim
