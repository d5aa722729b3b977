// env_correlators.hpp: oscillator environment: contour Green function, line propagators, friction kernel
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cct/contour.hpp"

namespace cct {

struct Oscillator {
    double coupling = 1.0;  // g_n
    double mass = 1.0;      // m_n
    double frequency = 1.0; // omega_n
};

class OscillatorBath {
public:
    explicit OscillatorBath(std::vector<Oscillator> entries);

    const std::vector<Oscillator>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

    // Constant making gamma_fr oscillate about zero: sum g^2 / (2 m omega^2).
    double centered_friction_offset() const;

    // Expects an array of {g, m, omega} records; `path` prefixes error messages.
    static OscillatorBath from_json(const nlohmann::json& j, const std::string& path = "bath");

private:
    std::vector<Oscillator> entries_;
};

// Real-line propagator split into its odd (G_R) and even (G_I) parts,
// normalised per unit overall coupling.
struct LinePropagator {
    std::function<double(double)> G_R;
    std::function<double(double)> G_I;
};

LinePropagator line_propagators(const OscillatorBath& bath);

// -(i / 2 m omega) exp(-i omega |z_a - z_b|_c), the infinite-cutoff limit.
Complex contour_green(const Oscillator& osc, const ContourPoint& a, const ContourPoint& b);

// Finite-cutoff form with antiperiodic period T~ = -2 i T_E:
// -(1 / 2 m omega) cos[omega(|z|_c - T~/2)] / sin(omega T~/2).
Complex contour_green_finite(const Oscillator& osc, const ContourPoint& a, const ContourPoint& b,
                             double euclidean_cutoff);

// Even kernel whose derivative is G_R; value(0) is the model input gamma0.
class FrictionKernel {
public:
    // Analytic kernel for an oscillator bath:
    //   gamma0 - sum g^2/(2 m omega^2) (1 - cos omega t)
    static FrictionKernel from_bath(const OscillatorBath& bath, double gamma0);
    // Kernel from an arbitrary G_R by adaptive quadrature of its antiderivative.
    static FrictionKernel from_propagator(std::function<double(double)> G_R, double gamma0,
                                          double abs_tol = 1e-10, double rel_tol = 1e-8);
    static FrictionKernel from_function(std::function<double(double)> gamma);

    double operator()(double t) const { return fn_(t); }
    double at_zero() const { return fn_(0.0); }

private:
    explicit FrictionKernel(std::function<double(double)> fn) : fn_(std::move(fn)) {}
    std::function<double(double)> fn_;
};

// gamma_fr(t) = gamma0 + ∫_0^{|t|} G_R(s) ds by adaptive Gauss–Kronrod.
double friction_from_GR(const std::function<double(double)>& G_R, double t, double gamma0,
                        double abs_tol = 1e-10, double rel_tol = 1e-8);

struct SymmetryViolation {
    std::string relation;
    double max_violation = 0.0;
};

// Checks on the sample grid (returns an empty report for an empty grid):
//   "anti_hermiticity"  G_L1(-t)^* = -G_L1(t) with G_L1 = G_R + i G_I
//   "line_reversal"     G_L4(t2 - t1) = G_L1(t1 - t2), with G_L4 built from the mirrored pair
//   "exchange"          G_{L1|L4}(t) = -[G_{L4|L1}(-t)]^*
//   "parity_G_R", "parity_G_I"
std::vector<SymmetryViolation> check_symmetries(const LinePropagator& prop,
                                                const std::vector<double>& samples);

} // namespace cct
