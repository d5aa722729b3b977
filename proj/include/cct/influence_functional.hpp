// influence_functional.hpp: second-order Feynman–Vernon action and Gaussian cumulants
#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "cct/contour.hpp"
#include "cct/env_correlators.hpp"
#include "cct/quadrature.hpp"

namespace cct {

using PathFn = std::function<double(double)>;

// Paths on the two real-time lines, with optional analytic derivatives.
struct PathPair {
    PathFn x1;
    PathFn x4;
    double t = 1.0;
    PathFn dx1;
    PathFn dx4;
};

struct ActionBreakdown {
    double noise_part = 0.0;     // >= 0 for positive-type G_I
    double friction_part = 0.0;
    double shift_part = 0.0;
    double boundary_part = 0.0;
};

// `value` is the exponent (i/hbar) S_FV = -noise + i (friction + shift + boundary).
struct FVActionValue {
    Complex value{};
    ActionBreakdown breakdown{};
    double hbar = 1.0;
    double error_estimate = 0.0;

    Complex action() const { return Complex(0.0, -hbar) * value; }
};

// Which form of the integrated-by-parts friction term to evaluate.
//   Causal: (g^2/hbar) ∫_0^t dt2 ∫_0^{t2} dt1 Δ(t2) γ(t2-t1) Σ'(t1)
//     (exactly equal to the double-time form for any paths)
//   SymmetrizedSquare: (g^2/2hbar) ∫_0^t ∫_0^t over the full square
enum class FrictionForm { Causal, SymmetrizedSquare };

struct FVOptions {
    double hbar = 1.0;
    quad::Options quadrature{1e-10, 1e-14, 1, 512};
    FrictionForm friction_form = FrictionForm::Causal;
};

// Double-time form over 0 <= t1 <= t2 <= t with G_I / G_R kernels.
FVActionValue sfv2_general(const PathPair& paths, const LinePropagator& prop, double g,
                           const FVOptions& opt = {});

// Four-term decomposition built from the friction kernel.
FVActionValue sfv2_parts(const PathPair& paths, const LinePropagator& prop, const FrictionKernel& friction,
                         double g, const FVOptions& opt = {});

// Direct double contour integral with the oscillator contour Green function.
// The contour couplings are g * osc.coupling on L1/L4.
Complex sfv_contour_quadrature(const PathPair& paths, const Oscillator& osc, double g,
                               const FVOptions& opt = {});

struct StochasticParams {
    double sigma = 0.0;  // noise strength
    double lambda = 0.0; // friction strength
    double gamma0 = 0.0; // frequency shift, gamma_fr(0)
};

// Local action of the stochastic limit.
FVActionValue sfv2_stochastic(const PathPair& paths, const StochasticParams& sp, const FVOptions& opt = {});

struct ReduceOptions {
    double window_factor = 12.0;   // W = factor * half-width
    double tail_tol = 1e-10;       // relative bound on the discarded tail
    int max_window_doublings = 24;
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
};

// sigma = g^2 ∫ G_I, lambda = g^2 ∫ gamma_fr over the whole line, gamma0 = g^2 gamma_fr(0).
// Throws DomainError when either correlator fails to decay.
StochasticParams stochastic_reduce(const LinePropagator& prop, const FrictionKernel& friction, double g,
                                   const ReduceOptions& opt = {});

// ∫_{-inf}^{inf} f for an even f, by windowed quadrature with tail control.
double even_line_integral(const std::function<double(double)>& f, const ReduceOptions& opt = {});

// Contour-ordered ground-state moment <T_c q(z_n) ... q(z_1)> of one oscillator,
// evaluated with ladder operators in a truncated Fock space.
Complex contour_moment(const Oscillator& osc, const std::vector<ContourPoint>& pts, double hbar = 1.0);

// Connected part of the moment above (moment-cumulant inversion over set partitions).
Complex connected_correlator(const Oscillator& osc, const std::vector<ContourPoint>& pts, double hbar = 1.0);

// K^(n) = prod_i g_c(z_i) x_c(z_i) times the connected correlator; n = pts.size() <= 4.
// `x_values` holds the path value at each point.
Complex cumulant_gaussian(const Oscillator& osc, const std::vector<ContourPoint>& pts,
                          const std::vector<double>& x_values, double hbar = 1.0);

// Nested time integral ∫_0^t dt2 ∫_0^{t2} dt1 K(t2, t1) of a two-point kernel.
double cluster_integral(const std::function<double(double, double)>& K, double t,
                        const quad::Options& opt = {});

} // namespace cct
