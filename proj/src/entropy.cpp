// entropy.cpp: replica method and its oracles
#include "cct/entropy.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "cct/errors.hpp"

namespace cct {

namespace {

void require_decohering(const DensityKernel& k) {
    if (!(k.im_alpha > 0.0)) throw DomainError("replica traces need Im alpha > 0");
    if (!(k.box_L > 0.0) || !(k.mass > 0.0) || !(k.hbar > 0.0)) throw DomainError("kernel needs m, hbar, L > 0");
}

// 4 pi hbar / (m Im alpha L^2)
double box_ratio(const DensityKernel& k) {
    return 4.0 * std::numbers::pi * k.hbar / (k.mass * k.im_alpha * k.box_L * k.box_L);
}

} // namespace

ReplicaResult replica_trace_analytic(const DensityKernel& k, double nu) {
    require_decohering(k);
    if (!(nu > 0.0)) throw DomainError("replica index must be > 0");
    const double r = box_ratio(k);
    return {nu, std::exp(0.5 * nu * std::log(r) - 0.5 * std::log(r * nu)), ReplicaMethod::Analytic};
}

double cyclic_spectrum_product(int n) {
    double p = 1.0;
    for (int j = 1; j < n; ++j) p *= 2.0 - 2.0 * std::cos(2.0 * std::numbers::pi * j / n);
    return p;
}

ReplicaResult replica_trace_oracle(const DensityKernel& k, int n) {
    require_decohering(k);
    if (n < 2 || n > 8) throw DomainError("determinant oracle supports 2 <= n <= 8");

    // Exponent of prod_i rho(x_i, x_{i+1}) (cyclic) is -x^T A x with
    //   A = c Σ (x_i - x_{i+1})^2 - i theta Σ (x_i^2 - x_{i+1}^2),
    // c = m Im alpha / 4 hbar, theta = m Re alpha / 4 hbar.
    const double c = k.mass * k.im_alpha / (4.0 * k.hbar);
    const double theta = k.mass * k.re_alpha / (4.0 * k.hbar);
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        const int j = (i + 1) % n;
        A(i, i) += c;
        A(j, j) += c;
        A(i, j) -= c;
        A(j, i) -= c;
        A(i, i) -= Complex(0.0, theta);
        A(j, j) += Complex(0.0, theta);
    }
    // Pin x_{n-1}: translation along the uniform direction integrates to L.
    const Eigen::MatrixXcd R = A.topLeftCorner(n - 1, n - 1);
    const Complex det = R.partialPivLu().determinant();
    const double pi = std::numbers::pi;
    const Complex gauss = std::pow(pi, 0.5 * (n - 1)) / std::sqrt(det);
    const double f = (std::pow(1.0 / k.box_L, n) * k.box_L * gauss).real();
    return {double(n), f, ReplicaMethod::DeterminantOracle};
}

double entanglement_entropy(const DensityKernel& k) {
    require_decohering(k);
    return -0.5 * std::log(box_ratio(k)) + 0.5;
}

double replica_limit_estimate(const DensityKernel& k, double eps) {
    return -(replica_trace_analytic(k, 1.0 + eps).f_n - 1.0) / eps;
}

SpectralEntropy spectral_entropy(const DensityKernel& k, int points) {
    require_decohering(k);
    const GridSpec grid{-0.5 * k.box_L, 0.5 * k.box_L, points};
    const auto rho = evaluate_grid(k, grid);
    const Eigen::MatrixXcd M = rho * grid.spacing();
    const Eigen::MatrixXcd H = 0.5 * (M + M.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("eigen-decomposition of the kernel failed");
    SpectralEntropy out;
    out.min_eigenvalue = es.eigenvalues().minCoeff();
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        const double p = es.eigenvalues()(i);
        out.trace += p;
        if (p > 0.0) out.entropy -= p * std::log(p);
    }
    return out;
}

} // namespace cct
