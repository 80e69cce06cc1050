#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>

#include "eitsim/errors.hpp"

namespace eitsim {

struct QuadratureOptions {
    double rel_tol = 1e-6;          // relative accuracy target
    double abs_tol = 0.0;           // absolute floor (0 = purely relative)
    int max_depth = 40;             // bisection depth limit per branch
    std::size_t max_intervals = 20000; // global subdivision budget
};

struct QuadratureDiag {
    double error_estimate = 0.0; // accumulated |K15-G7| over accepted intervals
    std::size_t intervals = 0;   // number of accepted leaf intervals
};

namespace detail {

// 7-point Gauss / 15-point Kronrod pair (positive abscissae; QUADPACK values).
inline constexpr std::array<double, 8> gk_nodes = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kronrod_weights = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

// Gauss weights belong to the odd-index Kronrod nodes (and the midpoint).
inline constexpr std::array<double, 4> gauss_weights = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const std::complex<double>& z) { return std::abs(z); }

template <class F, class V>
void gk15(F& f, double a, double b, V& kronrod, double& err) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    V gauss{};
    kronrod = V{};
    for (std::size_t i = 0; i < gk_nodes.size(); ++i) {
        const double x = gk_nodes[i];
        V fsum;
        if (i + 1 == gk_nodes.size()) {
            fsum = f(mid);
        } else {
            fsum = f(mid - half * x);
            fsum += f(mid + half * x);
        }
        kronrod += kronrod_weights[i] * fsum;
        if (i % 2 == 1) gauss += gauss_weights[i / 2] * fsum;
    }
    kronrod *= half;
    gauss *= half;
    err = magnitude(kronrod - gauss);
}

} // namespace detail

// Globally adaptive Gauss-Kronrod integration of f over [a,b].  V must be
// double or std::complex<double>.  Bisection continues until each leaf
// interval's |K15-G7| estimate is below its share of the tolerance; failure
// to get there inside the depth/interval budget raises NumericalError with
// the offending interval in the message.
template <class F>
auto integrate_adaptive(F&& f, double a, double b, const QuadratureOptions& opt = {},
                        QuadratureDiag* diag = nullptr) -> decltype(f(a)) {
    using V = decltype(f(a));
    if (!(b > a)) throw InvalidInput("integrate_adaptive: requires b > a");

    // First pass over the whole interval fixes the scale for the tolerance.
    V whole{};
    double whole_err = 0.0;
    detail::gk15(f, a, b, whole, whole_err);
    const double scale = std::max(detail::magnitude(whole), 1e-300);
    const double tol = std::max(opt.abs_tol, opt.rel_tol * scale);

    struct Item {
        double a, b;
        int depth;
    };
    // Explicit stack; worst intervals are just re-split in LIFO order.
    std::size_t used = 0;
    V total{};
    double total_err = 0.0;
    std::size_t leaves = 0;

    std::array<Item, 256> stack;
    std::size_t top = 0;
    stack[top++] = {a, b, 0};
    while (top > 0) {
        const Item it = stack[--top];
        V value{};
        double err = 0.0;
        detail::gk15(f, it.a, it.b, value, err);
        ++used;
        const double local_tol = tol * (it.b - it.a) / (b - a);
        if (err <= local_tol || err <= opt.abs_tol) {
            total += value;
            total_err += err;
            ++leaves;
            continue;
        }
        if (it.depth >= opt.max_depth || used >= opt.max_intervals || top + 2 > stack.size()) {
            throw NumericalError(
                "integrate_adaptive: tolerance not reached on [" + std::to_string(it.a) +
                ", " + std::to_string(it.b) + "] (error estimate " + std::to_string(err) +
                ", tolerance " + std::to_string(local_tol) + ", depth " +
                std::to_string(it.depth) + ", intervals " + std::to_string(used) + ")");
        }
        const double mid = 0.5 * (it.a + it.b);
        stack[top++] = {it.a, mid, it.depth + 1};
        stack[top++] = {mid, it.b, it.depth + 1};
    }
    if (diag) {
        diag->error_estimate = total_err;
        diag->intervals = leaves;
    }
    return total;
}

} // namespace eitsim
