// sampling.hpp: reproducible random parameter draws for verification campaigns
#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "cct/classical_dynamics.hpp"
#include "cct/influence_functional.hpp"

namespace cct {

using Rng = std::mt19937_64;

// Generator keyed by (seed, stream name, index) so results do not depend on
// the order in which cases are scheduled.
Rng make_rng(std::uint64_t seed, std::string_view stream, std::uint64_t index);

double log_uniform(Rng& rng, double lo, double hi);
double uniform(Rng& rng, double lo, double hi);

enum class FrictionDraw { Any, Zero, Positive };

struct ParameterDraw {
    SystemParams sys;
    StochasticParams sp;
    Regime regime = Regime::Critical;
    double t = 1.0; // evaluation time with a comfortable caustic margin
    double rate = 1.0; // largest intrinsic rate among omega, |sqrt(q2)|, lambda/m
};

// Log-uniform over omega in [0.1, 10], m in [0.5, 2], lambda/(m omega) in [0.05, 5]
// (or exactly 0), sigma/(m omega^2) in [0.01, 2]; gamma0/(m omega^2) in [0, 2]
// is solved for so that the requested regime is hit.
ParameterDraw draw_parameters(Regime regime, Rng& rng, FrictionDraw friction = FrictionDraw::Any,
                              double min_margin = 0.05);

// Smooth random path on [0, t]: polynomial plus one sinusoid, with derivative.
struct RandomPath {
    double c0, c1, c2, amp, nu, phase, t;
    double operator()(double s) const;
    double derivative(double s) const;
};
RandomPath draw_path(Rng& rng, double t);

} // namespace cct
