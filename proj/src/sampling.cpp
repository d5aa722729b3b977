// sampling.cpp
#include "cct/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "cct/errors.hpp"

namespace cct {

namespace {
std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}
} // namespace

Rng make_rng(std::uint64_t seed, std::string_view stream, std::uint64_t index) {
    const std::uint64_t h = fnv1a(stream);
    std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(h), std::uint32_t(h >> 32),
                      std::uint32_t(index), std::uint32_t(index >> 32)};
    return Rng(seq);
}

// Both helpers map raw 64-bit draws by hand so the streams are identical
// across standard-library implementations.
double uniform(Rng& rng, double lo, double hi) {
    const double u = double(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

double log_uniform(Rng& rng, double lo, double hi) {
    return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

ParameterDraw draw_parameters(Regime regime, Rng& rng, FrictionDraw friction, double min_margin) {
    for (int attempt = 0; attempt < 10000; ++attempt) {
        ParameterDraw d;
        d.regime = regime;
        const double m = log_uniform(rng, 0.5, 2.0);
        const double w = log_uniform(rng, 0.1, 10.0);
        d.sys = {m, w};
        double lam = 0.0;
        const bool zero = friction == FrictionDraw::Zero ||
                          (friction == FrictionDraw::Any && uniform(rng, 0.0, 1.0) < 0.25);
        if (!zero) lam = m * w * log_uniform(rng, 0.05, 5.0);
        const double sigma = m * w * w * log_uniform(rng, 0.01, 2.0);
        const double drift2 = lam * lam / (4 * m * m);

        double gamma0 = 0.0;
        switch (regime) {
        case Regime::Overdamped: {
            const double q2 = w * w * log_uniform(rng, 0.05, 3.0);
            gamma0 = 0.5 * m * (q2 + w * w - drift2);
            break;
        }
        case Regime::Critical: gamma0 = 0.5 * m * (w * w - drift2); break;
        case Regime::Underdamped: {
            const double k2 = w * w * log_uniform(rng, 0.05, 1.0);
            gamma0 = 0.5 * m * (w * w - k2 - drift2);
            break;
        }
        }
        if (gamma0 < 0.0 || gamma0 > 2.0 * m * w * w) continue;
        d.sp = {sigma, lam, gamma0};
        const RegimeClass rc = classify_regime(d.sys, d.sp);
        if (rc.regime != regime) continue;
        d.rate = std::max({w, std::sqrt(std::abs(rc.q2)), lam / m});

        bool placed = false;
        for (int k = 0; k < 50 && !placed; ++k) {
            d.t = log_uniform(rng, 0.3, 3.0) / d.rate;
            placed = caustic_margin(d.sys, d.sp, d.t) >= min_margin;
        }
        if (placed) return d;
    }
    throw NumericalError("could not draw parameters for the requested regime");
}

double RandomPath::operator()(double s) const {
    const double u = s / t;
    return c0 + c1 * u + c2 * u * u + amp * std::sin(nu * u + phase);
}

double RandomPath::derivative(double s) const {
    const double u = s / t;
    return (c1 + 2 * c2 * u + amp * nu * std::cos(nu * u + phase)) / t;
}

RandomPath draw_path(Rng& rng, double t) {
    RandomPath p;
    p.c0 = uniform(rng, -1.0, 1.0);
    p.c1 = uniform(rng, -1.0, 1.0);
    p.c2 = uniform(rng, -1.0, 1.0);
    p.amp = uniform(rng, -1.0, 1.0);
    p.nu = uniform(rng, 0.5, 4.0);
    p.phase = uniform(rng, 0.0, 6.283185307179586);
    p.t = t;
    return p;
}

} // namespace cct
