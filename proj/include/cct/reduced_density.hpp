// reduced_density.hpp: Gaussian reduced density-matrix kernel and grid evaluation
#pragma once

#include <cstddef>
#include <ostream>
#include <string>

#include <Eigen/Core>

#include "cct/classical_dynamics.hpp"

namespace cct {

// rho(x', x) = (1/L) exp{(i m / 4 hbar) Re alpha (x'^2 - x^2)} exp{-(m / 4 hbar) Im alpha (x' - x)^2}
struct DensityKernel {
    double mass = 1.0;
    double hbar = 1.0;
    double t = 0.0;
    double re_alpha = 0.0;
    double im_alpha = 0.0;
    double box_L = 1.0;

    Complex operator()(double x_prime, double x) const;
    // Off-diagonal Gaussian width parameter: |rho| ∝ exp(-(x'-x)^2 / (2 w^2)).
    double coherence_length() const;
};

// Throws InvariantError if Im alpha <= 0 while sigma > 0.
DensityKernel kernel_from_coefficients(const CoefficientSet& cs, const SystemParams& sys, double box_L,
                                       double hbar = 1.0, double sigma = 0.0);

struct GridSpec {
    double x_min = -0.5;
    double x_max = 0.5;
    int n = 2;

    double spacing() const { return (x_max - x_min) / n; }
    // Cell centres x_i = x_min + (i + 1/2) dx, so the diagonal Riemann sum is exact.
    double point(int i) const { return x_min + (i + 0.5) * spacing(); }
};

inline constexpr std::size_t kDefaultGridBudgetBytes = std::size_t(1) << 31;

// Row-major samples rho_ij = rho(x_i, x_j). Normalization uses the kernel's box
// length, so the trace is exactly 1 when the grid spans the box.
Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>
evaluate_grid(const DensityKernel& k, const GridSpec& grid, std::size_t budget_bytes = kDefaultGridBudgetBytes);

// Paired _re/_im columns, 17 significant digits.
void write_matrix_csv(std::ostream& os, const GridSpec& grid,
                      const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>& rho);

} // namespace cct
