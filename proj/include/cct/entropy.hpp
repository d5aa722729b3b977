// entropy.hpp: replica traces and entanglement entropy of the Gaussian kernel
#pragma once

#include "cct/reduced_density.hpp"

namespace cct {

enum class ReplicaMethod { Analytic, DeterminantOracle, SpectralOracle };

struct ReplicaResult {
    double n = 1.0;
    double f_n = 1.0; // tr(rho^n)
    ReplicaMethod method = ReplicaMethod::Analytic;
};

// f(nu) = [4 pi hbar / (m Im alpha L^2)]^{nu/2} [m Im alpha L^2 / (4 pi hbar nu)]^{1/2};
// real nu > 0 is accepted for the analytic continuation.
ReplicaResult replica_trace_analytic(const DensityKernel& k, double nu);

// Direct evaluation of the cyclic Gaussian integral for integer n in [2, 8]:
// one coordinate is pinned (its shift contributes L) and the remaining
// quadratic form, including the telescoping phase terms, is integrated through
// its determinant.
ReplicaResult replica_trace_oracle(const DensityKernel& k, int n);

// Product of the nonzero eigenvalues 2 - 2 cos(2 pi j / n) of the cyclic
// difference operator (equals n^2).
double cyclic_spectrum_product(int n);

// S = -(1/2) ln[4 pi hbar / (m Im alpha L^2)] + 1/2
double entanglement_entropy(const DensityKernel& k);

// -[f(1 + eps) - 1] / eps from the analytic continuation.
double replica_limit_estimate(const DensityKernel& k, double eps);

struct SpectralEntropy {
    double entropy = 0.0;
    double trace = 0.0;
    double min_eigenvalue = 0.0;
};

// Eigen-decomposition of the kernel sampled on `points` cell centres spanning
// the box [-L/2, L/2]; -Σ p ln p over positive eigenvalues.
SpectralEntropy spectral_entropy(const DensityKernel& k, int points = 400);

} // namespace cct
