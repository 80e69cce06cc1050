#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "eitsim/lambda_system.hpp"

using namespace eitsim;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

LambdaState make_state(double omega_c, double delta, double detune, double gamma_raman) {
    LambdaState s;
    s.omega_c = omega_c;
    s.delta_raman = delta;
    s.detune_probe = detune;
    s.gamma_raman = gamma_raman;
    return s;
}

// Numeric half-depth full width of the absorption dip of f(delta), measured
// on a dense grid with linear interpolation of the crossings.
template <class F>
double measured_dip_fwhm(F f, double span) {
    const int n = 40001;
    std::vector<double> x(n), y(n);
    double ymax = -1e300, ymin = 1e300;
    int imin = 0;
    for (int i = 0; i < n; ++i) {
        x[i] = -span + 2.0 * span * i / (n - 1);
        y[i] = f(x[i]);
        if (y[i] < ymin) { ymin = y[i]; imin = i; }
        if (y[i] > ymax) ymax = y[i];
    }
    const double level = ymax - 0.5 * (ymax - ymin);
    int l = imin, r = imin;
    while (l > 0 && y[l] < level) --l;
    while (r < n - 1 && y[r] < level) ++r;
    const double xl = x[l] + (level - y[l]) / (y[l + 1] - y[l]) * (x[l + 1] - x[l]);
    const double xr = x[r - 1] + (level - y[r - 1]) / (y[r] - y[r - 1]) * (x[r] - x[r - 1]);
    return xr - xl;
}

} // namespace

TEST_CASE("bare-line limits of the probe response", "[lambda]") {
    // No coupling, line center: unit absorption, zero dispersion.
    const auto c0 = probe_response(make_state(0.0, 0.0, 0.0, 2.0e4));
    CHECK_THAT(c0.imag(), WithinRel(1.0, 1e-12));
    CHECK_THAT(c0.real(), WithinAbs(0.0, 1e-12));

    // No coupling, detuned: matches the two-level formula at several detunings.
    for (double detune : {-3.0e8, -1.0e7, 5.0e6, 2.0e8}) {
        const auto full = probe_response(make_state(0.0, 0.0, detune, 2.0e4));
        const auto bare = bare_response(detune, 1.4e8);
        CHECK_THAT(std::abs(full - bare), WithinAbs(0.0, 1e-12));
        // |chi| of a Lorentzian line: Gamma/sqrt(Gamma^2 + detune^2).
        const double expected = 1.4e8 / std::hypot(1.4e8, detune);
        CHECK_THAT(std::abs(bare), WithinRel(expected, 1e-12));
    }
}

TEST_CASE("exact dark state at Raman resonance without decoherence", "[lambda]") {
    for (double omega : {1.0e5, 1.0e6, 1.0e7, 5.0e8}) {
        const auto chi = probe_response(make_state(omega, 0.0, 0.0, 0.0));
        CHECK(chi == std::complex<double>(0.0, 0.0));
        // Also off the one-photon center: the dark state survives any
        // detune_probe as long as the two-photon resonance holds.
        const auto chi_det = probe_response(make_state(omega, 0.0, 3.0e8, 0.0));
        CHECK(chi_det == std::complex<double>(0.0, 0.0));
    }
    // Gamma_R = 0 without coupling falls back to the bare line.
    const auto bare = probe_response(make_state(0.0, 0.0, 1.0e7, 0.0));
    CHECK_THAT(std::abs(bare - bare_response(1.0e7, 1.4e8)), WithinAbs(0.0, 1e-15));
}

TEST_CASE("passivity: non-negative absorption for any drive", "[lambda]") {
    // Coarse parameter sweep; Im chi < 0 would mean gain, which the
    // steady-state response of a passive medium cannot produce.
    for (double omega : {0.0, 1.0e6, 2.0e7, 4.0e8}) {
        for (double delta : {-2.0e6, -1.0e4, 0.0, 3.3e4, 5.0e6}) {
            for (double detune : {-6.0e9, -1.0e8, 0.0, 2.0e8, 6.0e9}) {
                for (double gr : {0.0, 2.0e4, 3.0e5}) {
                    const auto chi = probe_response(make_state(omega, delta, detune, gr));
                    INFO("omega=" << omega << " delta=" << delta << " detune=" << detune
                                  << " gamma_raman=" << gr);
                    CHECK(chi.imag() >= -1e-15);
                }
            }
        }
    }
}

TEST_CASE("single-class transparency dip width", "[lambda]") {
    // For one velocity class at line center the absorption dip in Im chi has
    // FWHM 2 Gamma_R + Omega^2/(2 Gamma); measured numerically on a dense
    // grid as the oracle.
    const double gamma_raman = 2.0106e4; // 3.2 kHz cyclic
    const double omega = 6.727e6;
    auto im_chi = [&](double delta) {
        return probe_response(make_state(omega, delta, 0.0, gamma_raman)).imag();
    };
    const double expected = 2.0 * gamma_raman + omega * omega / (2.0 * 1.4e8);
    const double measured = measured_dip_fwhm(im_chi, 20.0 * expected);
    CHECK_THAT(measured, WithinRel(expected, 1e-2));
}

TEST_CASE("collisionless width bounds cross exactly at omega_inhom", "[lambda]") {
    const AtomSpec atom;
    for (double gr : {1.0e4, 2.0e4, 1.0e5}) {
        const double oi = omega_inhom(atom, gr);
        const CollisionlessWidth w = eit_width_collisionless(oi, atom, gr);
        CHECK_THAT(w.weak_bound, WithinRel(w.strong_bound, 1e-12));
        CHECK(w.regime == CouplingRegime::intermediate);
    }
}

TEST_CASE("collisionless regime classification", "[lambda]") {
    const AtomSpec atom;
    const double gr = 2.0e4;
    const double oi = omega_inhom(atom, gr);
    CHECK(eit_width_collisionless(0.05 * oi, atom, gr).regime == CouplingRegime::weak);
    CHECK(eit_width_collisionless(0.5 * oi, atom, gr).regime == CouplingRegime::intermediate);
    CHECK(eit_width_collisionless(20.0 * oi, atom, gr).regime == CouplingRegime::strong);

    // Weak bound linear in Omega, strong bound quadratic.
    const auto w1 = eit_width_collisionless(1.0e6, atom, gr);
    const auto w2 = eit_width_collisionless(2.0e6, atom, gr);
    CHECK_THAT(w2.weak_bound, WithinRel(2.0 * w1.weak_bound, 1e-12));
    CHECK_THAT(w2.strong_bound, WithinRel(4.0 * w1.strong_bound, 1e-12));
    CHECK(w1.width() == w1.weak_bound);
    CHECK(eit_width_collisionless(20.0 * oi, atom, gr).width() ==
          eit_width_collisionless(20.0 * oi, atom, gr).strong_bound);

    CHECK_THROWS_AS(eit_width_collisionless(0.0, atom, gr), InvalidInput);
    CHECK_THROWS_AS(eit_width_collisionless(1.0e6, atom, 0.0), InvalidInput);
}

TEST_CASE("probe response input validation", "[lambda]") {
    CHECK_THROWS_AS(probe_response(make_state(-1.0, 0.0, 0.0, 1.0)), InvalidInput);
    CHECK_THROWS_AS(probe_response(make_state(1.0, 0.0, 0.0, -1.0)), InvalidInput);
    LambdaState s = make_state(1.0, 0.0, 0.0, 1.0);
    s.gamma_opt = 0.0;
    CHECK_THROWS_AS(probe_response(s), InvalidInput);
}
