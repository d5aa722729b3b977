// bvp_oracle.cpp: finite-difference solve of the coupled classical boundary-value problem
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "cct/classical_dynamics.hpp"
#include "cct/errors.hpp"

namespace cct {

namespace {

// Extended precision keeps the one-sided end slopes clear of round-off at large N.
using Real = long double;
using Scalar = std::complex<Real>;
using SpMat = Eigen::SparseMatrix<Scalar>;
using Triplet = Eigen::Triplet<Scalar>;
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// Unknowns are interleaved as (x4_0, x1_0, x4_1, x1_1, ...).
class BvpSystem {
public:
    BvpSystem(const SystemParams& sys, const StochasticParams& sp, double t, int n) : n_(n), h_(t / n), hl_(Real(t) / n) {
        validate(sys, sp);
        if (n < 100) throw DomainError("bvp_oracle needs at least 100 grid intervals");
        if (!(t > 0.0)) throw DomainError("bvp_oracle needs t > 0");

        const double m = sys.mass;
        const double w = sys.frequency;
        const Real h = hl_;
        const Real mOmega2 = (-Real(m) * w * w + 2 * Real(sp.gamma0)) * h * h / m;
        const Scalar is(0, Real(sp.sigma) * h * h / m);
        const int N = n + 1;

        std::vector<Triplet> tr;
        tr.reserve(12 * N);
        auto x4 = [](int i) { return 2 * i; };
        auto x1 = [](int i) { return 2 * i + 1; };

        // Rows are scaled to O(1) diagonals: Robin rows by h, interior rows by h^2/m.
        // Robin rows: (-3 x0 + 4 x1 - x2)/(2h) - omega x0 = 0
        for (auto idx : {+0, 1}) {
            auto col = [&](int i) { return idx == 0 ? x4(i) : x1(i); };
            const int row = col(0);
            tr.emplace_back(row, col(0), Scalar(-1.5L - w * h));
            tr.emplace_back(row, col(1), Scalar(2.0L));
            tr.emplace_back(row, col(2), Scalar(-0.5L));
        }
        for (int i = 1; i < n; ++i) {
            const Scalar c2(1);
            const Scalar c1(Real(sp.lambda) * h / (2 * m));
            // m x4'' - (m Omega^2 + i sigma) x4 + lambda x1' + i sigma x1 = 0
            int row = x4(i);
            tr.emplace_back(row, x4(i - 1), c2);
            tr.emplace_back(row, x4(i), Real(-2) * c2 - mOmega2 - is);
            tr.emplace_back(row, x4(i + 1), c2);
            tr.emplace_back(row, x1(i + 1), c1);
            tr.emplace_back(row, x1(i - 1), -c1);
            tr.emplace_back(row, x1(i), is);
            // m x1'' - (m Omega^2 - i sigma) x1 + lambda x4' - i sigma x4 = 0
            row = x1(i);
            tr.emplace_back(row, x1(i - 1), c2);
            tr.emplace_back(row, x1(i), Real(-2) * c2 - mOmega2 + is);
            tr.emplace_back(row, x1(i + 1), c2);
            tr.emplace_back(row, x4(i + 1), c1);
            tr.emplace_back(row, x4(i - 1), -c1);
            tr.emplace_back(row, x4(i), -is);
        }
        tr.emplace_back(x4(n), x4(n), Scalar(1));
        tr.emplace_back(x1(n), x1(n), Scalar(1));

        A_.resize(2 * N, 2 * N);
        A_.setFromTriplets(tr.begin(), tr.end());
        A_.makeCompressed();
        lu_.analyzePattern(A_);
        lu_.factorize(A_);
        if (lu_.info() != Eigen::Success) {
            throw SingularityError("finite-difference boundary-value system is singular", t);
        }
    }

    BvpSolution solve(double x, double x_prime) const {
        const int N = n_ + 1;
        Vec rhs = Vec::Zero(2 * N);
        rhs(2 * n_) = Real(x_prime);
        rhs(2 * n_ + 1) = Real(x);
        const Vec sol = lu_.solve(rhs);
        if (!sol.allFinite()) throw SingularityError("finite-difference solution is not finite", n_ * h_);

        BvpSolution out;
        out.grid.resize(N);
        out.x4.resize(N);
        out.x1.resize(N);
        for (int i = 0; i < N; ++i) {
            out.grid(i) = i * h_;
            out.x4(i) = Complex(sol(2 * i));
            out.x1(i) = Complex(sol(2 * i + 1));
        }
        const Real h = hl_;
        auto end_slope = [&](int offset) {
            const Scalar d = (Real(3) * sol(2 * n_ + offset) - Real(4) * sol(2 * (n_ - 1) + offset) +
                              sol(2 * (n_ - 2) + offset)) / (2 * h);
            return Complex(d);
        };
        out.x4_dot_t = end_slope(0);
        out.x1_dot_t = end_slope(1);
        return out;
    }

private:
    int n_;
    double h_;
    Real hl_;
    SpMat A_;
    Eigen::SparseLU<SpMat> lu_;
};

} // namespace

BvpSolution bvp_oracle(const SystemParams& sys, const StochasticParams& sp, double t, double x, double x_prime,
                       int n_intervals) {
    return BvpSystem(sys, sp, t, n_intervals).solve(x, x_prime);
}

BvpCoefficients bvp_coefficients(const SystemParams& sys, const StochasticParams& sp, double t, int n_intervals) {
    const BvpSystem bvp(sys, sp, t, n_intervals);
    const BvpSolution e1 = bvp.solve(0.0, 1.0); // (x', x) = (1, 0)
    const BvpSolution e2 = bvp.solve(1.0, 0.0); // (x', x) = (0, 1)
    BvpCoefficients c;
    c.alpha = 2.0 * e1.x4_dot_t;
    c.gamma_coef = 2.0 * e1.x1_dot_t;
    c.beta = 2.0 * e2.x4_dot_t;
    c.delta = 2.0 * e2.x1_dot_t;
    return c;
}

} // namespace cct
