// reduced_density.cpp: density kernel evaluation and export
#include "cct/reduced_density.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "cct/errors.hpp"
#include "cct/format.hpp"

namespace cct {

Complex DensityKernel::operator()(double xp, double x) const {
    const double phase = mass / (4.0 * hbar) * re_alpha * (xp * xp - x * x);
    const double d = xp - x;
    const double decay = -mass / (4.0 * hbar) * im_alpha * d * d;
    return std::polar(std::exp(decay) / box_L, phase);
}

double DensityKernel::coherence_length() const {
    if (!(im_alpha > 0.0)) return std::numeric_limits<double>::infinity();
    return std::sqrt(2.0 * hbar / (mass * im_alpha));
}

DensityKernel kernel_from_coefficients(const CoefficientSet& cs, const SystemParams& sys, double box_L, double hbar,
                                       double sigma) {
    if (!(box_L > 0.0)) throw DomainError("box length L must be > 0");
    if (!(hbar > 0.0)) throw DomainError("hbar must be > 0");
    if (sigma > 0.0 && !(cs.alpha.imag() > 0.0)) {
        throw InvariantError("Im alpha = " + format_double(cs.alpha.imag()) + " is not positive at t = " +
                             format_double(cs.t) + " although the noise strength is positive");
    }
    DensityKernel k;
    k.mass = sys.mass;
    k.hbar = hbar;
    k.t = cs.t;
    k.re_alpha = cs.alpha.real();
    k.im_alpha = cs.alpha.imag();
    k.box_L = box_L;
    return k;
}

Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>
evaluate_grid(const DensityKernel& k, const GridSpec& grid, std::size_t budget_bytes) {
    if (grid.n < 2) throw DomainError("grid needs n >= 2");
    if (!(grid.x_max > grid.x_min)) throw DomainError("grid needs x_max > x_min");
    const std::size_t n = static_cast<std::size_t>(grid.n);
    if (n > budget_bytes / sizeof(Complex) / n) {
        throw ResourceError("grid of " + std::to_string(n) + "x" + std::to_string(n) +
                            " complex entries exceeds the memory budget");
    }
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rho(grid.n, grid.n);
    for (int i = 0; i < grid.n; ++i) {
        const double xi = grid.point(i);
        for (int j = 0; j < grid.n; ++j) rho(i, j) = k(xi, grid.point(j));
    }
    return rho;
}

void write_matrix_csv(std::ostream& os, const GridSpec& grid,
                      const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>& rho) {
    os << "x";
    for (int j = 0; j < rho.cols(); ++j) os << ",c" << j << "_re,c" << j << "_im";
    os << '\n';
    for (int i = 0; i < rho.rows(); ++i) {
        os << format_double(grid.point(i));
        for (int j = 0; j < rho.cols(); ++j) {
            os << ',' << format_double(rho(i, j).real()) << ',' << format_double(rho(i, j).imag());
        }
        os << '\n';
    }
}

} // namespace cct
