// quadrature.hpp: composite Gauss–Legendre rules on intervals, squares and triangles
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "cct/errors.hpp"

namespace cct::quad {

inline constexpr int kOrder = 20;

struct Rule {
    std::array<double, kOrder> x; // nodes on [-1, 1]
    std::array<double, kOrder> w;
};

// Full 20-point rule assembled from Boost's half-rule tables.
inline const Rule& gauss_legendre() {
    static const Rule rule = [] {
        using G = boost::math::quadrature::gauss<double, kOrder>;
        const auto& xa = G::abscissa();
        const auto& wa = G::weights();
        Rule r{};
        const int half = kOrder / 2;
        for (int i = 0; i < half; ++i) {
            r.x[half - 1 - i] = -xa[i];
            r.w[half - 1 - i] = wa[i];
            r.x[half + i] = xa[i];
            r.w[half + i] = wa[i];
        }
        return r;
    }();
    return rule;
}

struct Options {
    double rel_tol = 1e-8;
    double abs_tol = 1e-14;
    int min_panels = 1;
    int max_panels = 256;
};

template <class T>
struct Result {
    T value{};
    double error = 0.0; // |I(P) - I(P/2)| at the accepted level
    int panels = 0;
};

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }

// Fixed composite rule with `panels` equal sub-intervals.
template <class F>
auto integrate_fixed(F&& f, double a, double b, int panels) {
    using T = std::decay_t<decltype(f(a))>;
    const Rule& r = gauss_legendre();
    const double h = (b - a) / panels;
    T sum{};
    for (int p = 0; p < panels; ++p) {
        const double c = a + (p + 0.5) * h;
        T part{};
        for (int i = 0; i < kOrder; ++i) part += r.w[i] * f(c + 0.5 * h * r.x[i]);
        sum += part * (0.5 * h);
    }
    return sum;
}

// ∫_0^T dx ∫_0^x dy f(x, y), panel count P on both axes (inner panels scale with x).
template <class F>
auto integrate_triangle_fixed(F&& f, double T, int panels) {
    using V = std::decay_t<decltype(f(0.0, 0.0))>;
    auto outer = [&](double x) -> V {
        if (x <= 0.0) return V{};
        return integrate_fixed([&](double y) { return f(x, y); }, 0.0, x, panels);
    };
    return integrate_fixed(outer, 0.0, T, panels);
}

// ∫_0^T ∫_0^T f(x, y) split along the diagonal so a kink at x = y is harmless.
template <class F>
auto integrate_square_fixed(F&& f, double T, int panels) {
    auto lower = integrate_triangle_fixed(f, T, panels);
    auto upper = integrate_triangle_fixed([&](double x, double y) { return f(y, x); }, T, panels);
    return lower + upper;
}

namespace detail {
template <class Step>
auto refine(Step&& step, const Options& opt, const char* what) {
    using T = std::decay_t<decltype(step(1))>;
    int p = std::max(1, opt.min_panels);
    T prev = step(p);
    double err = 0.0;
    while (true) {
        const int next = 2 * p;
        if (next > opt.max_panels) {
            throw NumericalError(std::string(what) + ": panel refinement did not converge", err);
        }
        T cur = step(next);
        err = magnitude(cur - prev);
        p = next;
        if (err <= std::max(opt.abs_tol, opt.rel_tol * magnitude(cur))) {
            return Result<T>{cur, err, p};
        }
        prev = cur;
    }
}
} // namespace detail

template <class F>
auto integrate(F&& f, double a, double b, const Options& opt = {}) {
    return detail::refine([&](int p) { return integrate_fixed(f, a, b, p); }, opt, "interval quadrature");
}

template <class F>
auto integrate_triangle(F&& f, double T, const Options& opt = {}) {
    return detail::refine([&](int p) { return integrate_triangle_fixed(f, T, p); }, opt,
                          "triangle quadrature");
}

template <class F>
auto integrate_square(F&& f, double T, const Options& opt = {}) {
    return detail::refine([&](int p) { return integrate_square_fixed(f, T, p); }, opt,
                          "square quadrature");
}

// Adaptive 15-point Gauss–Kronrod on a finite interval (Boost.Math). Boost
// reports the Kronrod-minus-Gauss difference in unit-interval coordinates, so
// the estimate is rescaled to the physical interval before testing.
template <class F>
Result<double> integrate_gk(F&& f, double a, double b, double abs_tol, double rel_tol) {
    double err = 0.0;
    double l1 = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        f, a, b, 20, rel_tol, &err, &l1);
    const double scaled = err * 0.5 * std::abs(b - a);
    if (!std::isfinite(v) || scaled > 1e3 * std::max(abs_tol, rel_tol * l1)) {
        throw NumericalError("Gauss-Kronrod quadrature did not reach tolerance", scaled);
    }
    return {v, scaled, 0};
}

} // namespace cct::quad
