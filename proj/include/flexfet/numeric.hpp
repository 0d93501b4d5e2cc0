#pragma once

// Scalar root bracketing, refinement and maximisation on top of Boost.Math.

#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "flexfet/errors.hpp"

namespace flexfet::numeric {

/// Root of f in [a, b] where f(a), f(b) differ in sign (or one is zero). Full double precision.
template <class F>
double solve_bracketed(F&& f, double a, double b, double fa, double fb) {
    if (fa == 0) return a;
    if (fb == 0) return b;
    if ((fa < 0) == (fb < 0)) throw NumericError("root not bracketed");
    std::uintmax_t iterations = 200;
    const auto [lo, hi] = boost::math::tools::toms748_solve(f, a, b, fa, fb,
                                                           boost::math::tools::eps_tolerance<double>(52),
                                                           iterations);
    if (iterations >= 200) throw NumericError("bracketed root solve did not converge");
    return std::abs(f(lo)) <= std::abs(f(hi)) ? lo : hi;
}

template <class F>
double solve_bracketed(F&& f, double a, double b) {
    return solve_bracketed(f, a, b, f(a), f(b));
}

struct Maximum {
    double x;
    double value;
};

/// Brent maximisation of f on [a, b].
template <class F>
Maximum maximize(F&& f, double a, double b) {
    std::uintmax_t iterations = 500;
    const auto [x, neg] =
        boost::math::tools::brent_find_minima([&](double t) { return -f(t); }, a, b, 52, iterations);
    return {x, -neg};
}

/// First (smallest-x) root of f on [a, b]. The interval is scanned on a uniform grid;
/// if no sign change is seen the largest grid value is refined by Brent maximisation so
/// that tangential double roots are not missed. Requires f(a) < 0.
template <class F>
std::optional<double> first_root(F&& f, double a, double b, int cells = 4000) {
    double x_prev = a;
    double f_prev = f(a);
    if (f_prev >= 0) return a;
    int best = 0;
    double best_value = f_prev;
    const double h = (b - a) / cells;
    for (int i = 1; i <= cells; ++i) {
        const double x = i == cells ? b : a + i * h;
        const double fx = f(x);
        if (fx >= 0) return solve_bracketed(f, x_prev, x, f_prev, fx);
        if (fx > best_value) {
            best_value = fx;
            best = i;
        }
        x_prev = x;
        f_prev = fx;
    }
    const double lo = a + std::max(best - 1, 0) * h;
    const double hi = std::min(a + (best + 1) * h, b);
    const auto peak = maximize(f, lo, hi);
    if (peak.value < 0) return std::nullopt;
    return solve_bracketed(f, lo, peak.x, f(lo), peak.value);
}

/// ln(sinh(x)) for x > 0; switches to x - ln 2 above x = 30 to avoid overflow.
inline double log_sinh(double x) {
    if (x > 30.0) return x - std::log(2.0);
    return std::log(std::sinh(x));
}

/// e^{-x} - 1 + x, accurate for small x.
inline double exp_neg_m1_plus(double x) {
    if (std::abs(x) < 0.1) {
        double term = x * x / 2.0, sum = 0;
        for (int n = 2; n < 14; ++n) {
            sum += term;
            term *= -x / (n + 1);
        }
        return sum;
    }
    return std::expm1(-x) + x;
}

/// e^{x} - 1 - x, accurate for small x.
inline double exp_m1_minus(double x) {
    if (std::abs(x) < 0.1) {
        double term = x * x / 2.0, sum = 0;
        for (int n = 2; n < 14; ++n) {
            sum += term;
            term *= x / (n + 1);
        }
        return sum;
    }
    return std::expm1(x) - x;
}

} // namespace flexfet::numeric
