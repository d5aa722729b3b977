// classical_dynamics.hpp: classical contour equations, coefficient functions and their oracles
#pragma once

#include <vector>

#include <Eigen/Core>

#include "cct/contour.hpp"
#include "cct/influence_functional.hpp"

namespace cct {

struct SystemParams {
    double mass = 1.0;
    double frequency = 1.0;
};

void validate(const SystemParams& sys, const StochasticParams& sp);

enum class Regime { Overdamped, Critical, Underdamped };
const char* to_string(Regime r);

struct RegimeClass {
    double q2 = 0.0;    // lambda^2/4m^2 + 2 gamma0/m - omega^2
    Regime regime = Regime::Critical;
    double k = 0.0;     // sqrt(-q2) when underdamped
    Complex alpha_plus{};
    Complex alpha_minus{}; // alpha_pm = ±lambda/2m + sqrt(q2)
    double drift = 0.0;    // lambda / m
    double omega = 0.0;
};

// |q2| < eps_rel * omega^2 is classified as critical.
RegimeClass classify_regime(const SystemParams& sys, const StochasticParams& sp, double eps_rel = 1e-9);

// Dirichlet Green function of the difference-mode operator
//   (d^2/dt'^2 - (lambda/m) d/dt' - Omega^2) G = -delta(t' - t''),  G(0,t'') = G(t,t'') = 0,
// written as exp(p(t'-t'')/2) Sn(min) Sn(t - max) / Sn(t) with Sn(s) = sinh(r s)/r.
double green_line(const RegimeClass& rc, double t, double t1, double t2);

// Green function of the sum-mode operator (d^2 + (lambda/m) d - Omega^2) with the
// Robin condition G' = omega G at t' = 0 and G = 0 at t' = t.
double green_robin(const RegimeClass& rc, double t, double t1, double t2);

struct CoefficientSet {
    Complex alpha{}, beta{}, gamma_coef{}, delta{};
    double t = 0.0;
    double q2 = 0.0;
    Regime regime = Regime::Critical;
};

struct CoefficientOptions {
    double rel_tol = 1e-13;
    double caustic_tol = 1e-8;
};

// Coefficients relating the endpoint velocities of the classical paths to the
// boundary values, 2 xdot4(t) = alpha x' + beta x and 2 xdot1(t) = gamma x' + delta x,
// assembled from mode functions and Green-function quadrature in complex arithmetic.
CoefficientSet coefficient_set(const SystemParams& sys, const StochasticParams& sp, double t,
                               const CoefficientOptions& opt = {});

// Elementary closed form of alpha in real arithmetic, one branch per regime.
Complex alpha_closed_form(const SystemParams& sys, const StochasticParams& sp, double t,
                          double caustic_tol = 1e-8);

// Throws SingularityError when either boundary-value determinant is within
// `tol` of zero (relative to its natural scale) at time t.
void check_caustic(const SystemParams& sys, const StochasticParams& sp, double t, double tol = 1e-8);

// Zero of the boundary-value determinants nearest to t, or a negative value if none exists.
double nearest_caustic(const SystemParams& sys, const StochasticParams& sp, double t);

// Smallest relative distance of the two determinants from zero at t (1 = far from any caustic).
double caustic_margin(const SystemParams& sys, const StochasticParams& sp, double t);

struct BvpSolution {
    Eigen::VectorXd grid;
    Eigen::VectorXcd x1;
    Eigen::VectorXcd x4;
    Complex x1_dot_t{};
    Complex x4_dot_t{};
};

// Second-order finite-difference solve of the coupled L1/L4 equations with
// Dirichlet data x4(t) = x', x1(t) = x and the Robin conditions xdot = omega x at 0.
BvpSolution bvp_oracle(const SystemParams& sys, const StochasticParams& sp, double t, double x, double x_prime,
                       int n_intervals);

struct BvpCoefficients {
    Complex alpha{}, beta{}, gamma_coef{}, delta{};
};

// Coefficients regressed from two BVP solves with boundary data (x', x) = (1,0) and (0,1).
BvpCoefficients bvp_coefficients(const SystemParams& sys, const StochasticParams& sp, double t, int n_intervals);

// Closed forms that are exact when lambda = 0 (symmetric mode operator) and the
// large-time limit formulas that accompany them. They are kept as reference
// curves for comparison with the general solution.
namespace symmetric_forms {

// Real roots: Im alpha via the sinh-based f1/f2 terms with determinant
// Dt = (a+ - omega) e^{-a- t} + (a- + omega) e^{a+ t}.
double im_alpha_real_roots(const SystemParams& sys, const StochasticParams& sp, double t);
double re_alpha_real_roots(const SystemParams& sys, const StochasticParams& sp, double t);
// Complex roots, k^2 = omega^2 - 2 gamma0/m - lambda^2/4m^2.
double im_alpha_complex_roots(const SystemParams& sys, const StochasticParams& sp, double t);
double re_alpha_complex_roots(const SystemParams& sys, const StochasticParams& sp, double t);
// Same as above with the numerator term k cos kt in place of omega k cos kt.
double re_alpha_complex_roots_unscaled(const SystemParams& sys, const StochasticParams& sp, double t);

struct Limit {
    double re_alpha = 0.0;
    double im_alpha = 0.0;
};

// q2 > 0:  Im -> (sigma/m)/|q|,  Re -> lambda/m + 2|q|
Limit overdamped_limit(const SystemParams& sys, const StochasticParams& sp);
// q2 = 0:  Im -> (sigma/m) 2/(omega - lambda/m),  Re -> 2 omega
Limit critical_limit(const SystemParams& sys, const StochasticParams& sp);
// q2 < 0:  Im ~ (sigma/m) [k^2 + a^2] t / [a sin kt + k cos kt]^2,  a = omega - lambda/2m
double underdamped_growth(const SystemParams& sys, const StochasticParams& sp, double t);

} // namespace symmetric_forms

// Large-time limits of the general solution where they exist (q2 > 0, or q2 = 0 with lambda > 0).
struct ExactLimit {
    bool exists = false;
    double re_alpha = 0.0;
    double im_alpha = 0.0;
};
ExactLimit exact_limit(const SystemParams& sys, const StochasticParams& sp);

} // namespace cct
