#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>

#include <Eigen/Eigenvalues>

#include "cct/errors.hpp"
#include "cct/reduced_density.hpp"

using namespace cct;

namespace {
DensityKernel sample_kernel() {
    DensityKernel k;
    k.mass = 1.3;
    k.hbar = 0.9;
    k.t = 2.0;
    k.re_alpha = -0.7;
    k.im_alpha = 0.45;
    k.box_L = 12.0;
    return k;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}
} // namespace

TEST_CASE("diagonal is flat at 1/L") {
    const auto k = sample_kernel();
    for (double x : {-5.0, -0.3, 0.0, 2.2, 6.0}) {
        CHECK(k(x, x).real() == doctest::Approx(1.0 / 12.0).epsilon(1e-15));
        CHECK(std::abs(k(x, x).imag()) < 1e-17);
    }
}

TEST_CASE("closed-system kernel is a pure phase") {
    auto k = sample_kernel();
    k.im_alpha = 0.0;
    for (double a : {-3.0, 0.5, 4.0})
        for (double b : {-1.0, 2.5}) CHECK(std::abs(k(a, b)) == doctest::Approx(1.0 / 12.0).epsilon(1e-14));
}

TEST_CASE("off-diagonal modulus halves at the Gaussian step") {
    const auto k = sample_kernel();
    const double d0 = 0.8;
    const double step = 4 * k.hbar * std::log(2.0) / (k.mass * k.im_alpha);
    const double d1 = std::sqrt(d0 * d0 + step);
    CHECK(std::abs(k(d1, 0.0)) / std::abs(k(d0, 0.0)) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(k.coherence_length() == doctest::Approx(std::sqrt(2 * k.hbar / (k.mass * k.im_alpha))));
}

TEST_CASE("kernel from coefficients checks positivity") {
    CoefficientSet cs;
    cs.alpha = {0.3, -0.1};
    cs.t = 1.0;
    CHECK_THROWS_AS(kernel_from_coefficients(cs, {1.0, 1.0}, 10.0, 1.0, 0.2), InvariantError);
    cs.alpha = {0.3, 0.0};
    CHECK_NOTHROW(kernel_from_coefficients(cs, {1.0, 1.0}, 10.0, 1.0, 0.0));
    cs.alpha = {0.3, 0.5};
    const auto k = kernel_from_coefficients(cs, {2.0, 1.0}, 10.0, 1.5, 0.2);
    CHECK(k.re_alpha == 0.3);
    CHECK(k.im_alpha == 0.5);
    CHECK(k.mass == 2.0);
    CHECK(k.hbar == 1.5);
    CHECK(k.box_L == 10.0);
}

TEST_CASE("grid evaluation: hermitian, unit trace, positive") {
    const auto k = sample_kernel();
    const GridSpec g{-6.0, 6.0, 50};
    const auto rho = evaluate_grid(k, g);
    REQUIRE(rho.rows() == 50);
    double herm = 0.0;
    Complex trace = 0.0;
    for (int i = 0; i < 50; ++i) {
        trace += rho(i, i) * g.spacing();
        for (int j = 0; j < 50; ++j) herm = std::max(herm, std::abs(rho(i, j) - std::conj(rho(j, i))));
    }
    CHECK(herm < 1e-14);
    CHECK(trace.real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(trace.imag()) < 1e-15);

    Eigen::MatrixXcd h = rho;
    h = 0.5 * (h + h.adjoint().eval()) * g.spacing();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    CHECK(es.eigenvalues().minCoeff() > -1e-10);
}

TEST_CASE("two-point grid of a closed system") {
    auto k = sample_kernel();
    k.im_alpha = 0.0;
    const auto rho = evaluate_grid(k, GridSpec{-1.0, 1.0, 2});
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(std::abs(rho(i, j)) == doctest::Approx(1.0 / 12.0));
}

TEST_CASE("grid guards") {
    const auto k = sample_kernel();
    CHECK_THROWS_AS(evaluate_grid(k, GridSpec{-1.0, 1.0, 1}), DomainError);
    CHECK_THROWS_AS(evaluate_grid(k, GridSpec{1.0, -1.0, 4}), DomainError);
    CHECK_THROWS_AS(evaluate_grid(k, GridSpec{-1.0, 1.0, 100}, 1000), ResourceError);
}

TEST_CASE("CSV export round-trips bit-exactly") {
    const auto k = sample_kernel();
    const GridSpec g{-6.0, 6.0, 7};
    const auto rho = evaluate_grid(k, g);
    std::ostringstream os;
    write_matrix_csv(os, g, rho);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    const auto header = split(line);
    REQUIRE(header.size() == 15);
    CHECK(header[0] == "x");
    CHECK(header[1] == "c0_re");
    CHECK(header[14] == "c6_im");
    int row = 0;
    while (std::getline(is, line)) {
        const auto cells = split(line);
        REQUIRE(cells.size() == 15);
        CHECK(std::strtod(cells[0].c_str(), nullptr) == g.point(row));
        for (int j = 0; j < 7; ++j) {
            CHECK(std::strtod(cells[std::size_t(1 + 2 * j)].c_str(), nullptr) == rho(row, j).real());
            CHECK(std::strtod(cells[std::size_t(2 + 2 * j)].c_str(), nullptr) == rho(row, j).imag());
        }
        ++row;
    }
    CHECK(row == 7);
}
