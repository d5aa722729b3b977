#include "doctest.h"

#include <cmath>

#include "cct/classical_dynamics.hpp"
#include "cct/errors.hpp"
#include "cct/sampling.hpp"

using namespace cct;

namespace {
constexpr double kPi = 3.141592653589793;

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }
} // namespace

TEST_CASE("regime classification examples") {
    const auto under = classify_regime({1.0, 1.0}, {0.1, 0.0, 0.0});
    CHECK(under.regime == Regime::Underdamped);
    CHECK(under.q2 == doctest::Approx(-1.0));
    CHECK(under.k == doctest::Approx(1.0));
    CHECK(std::abs(under.alpha_plus - Complex(0.0, 1.0)) < 1e-15);
    CHECK(std::abs(under.alpha_minus - Complex(0.0, 1.0)) < 1e-15);

    CHECK(classify_regime({1.0, 1.0}, {0.1, 0.0, 0.5}).regime == Regime::Critical);

    const auto over = classify_regime({1.0, 1.0}, {0.1, 4.0, 0.0});
    CHECK(over.regime == Regime::Overdamped);
    CHECK(over.q2 == doctest::Approx(3.0));
    CHECK(over.alpha_plus.real() == doctest::Approx(2.0 + std::sqrt(3.0)));
    CHECK(over.alpha_minus.real() == doctest::Approx(-2.0 + std::sqrt(3.0)));

    // The drift term carries 1/m^2.
    CHECK(classify_regime({2.0, 1.0}, {0.1, 4.0, 0.0}).q2 == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(std::string(to_string(Regime::Overdamped)) == "overdamped");
}

TEST_CASE("Dirichlet Green function: boundary zeros, continuity, unit jump") {
    const auto rc = classify_regime({1.0, 1.0}, {0.1, 4.0, 0.0});
    const double t = 1.0;
    for (double s : {0.2, 0.5, 0.9}) {
        CHECK(green_line(rc, t, 0.0, s) == 0.0);
        CHECK(std::abs(green_line(rc, t, t, s)) < 1e-15);
    }
    const double eps = 1e-7;
    CHECK(green_line(rc, t, 0.5 - eps, 0.5) == doctest::Approx(green_line(rc, t, 0.5 + eps, 0.5)).epsilon(1e-5));
    CHECK(std::isfinite(green_line(rc, t, 0.5, 0.5)));

    // Slope jump across t' = t'' is -1 for (d^2 - p d - Omega^2) G = -delta.
    const double h = 1e-5;
    const double left = (green_line(rc, t, 0.5, 0.5) - green_line(rc, t, 0.5 - h, 0.5)) / h;
    const double right = (green_line(rc, t, 0.5 + h, 0.5) - green_line(rc, t, 0.5, 0.5)) / h;
    CHECK(right - left == doctest::Approx(-1.0).epsilon(1e-4));
}

TEST_CASE("Dirichlet Green function solves its operator on a grid") {
    for (const StochasticParams& sp :
         {StochasticParams{0.1, 4.0, 0.0}, StochasticParams{0.1, 0.0, 0.5}, StochasticParams{0.1, 0.6, 0.1}}) {
        const auto rc = classify_regime({1.0, 1.0}, sp);
        const double t = 1.3, h = t / 2000, tpp = 0.61;
        const double p = sp.lambda, omega2 = -rc.q2 + p * p / 4;
        // Summing the discrete operator over the grid against a test function f picks out f(t'').
        auto f = [](double s) { return std::sin(2.0 * s) + 0.5; };
        double acc = 0.0;
        for (int i = 1; i < 2000; ++i) {
            const double s = i * h;
            const double gm = green_line(rc, t, s - h, tpp), g0 = green_line(rc, t, s, tpp), gp = green_line(rc, t, s + h, tpp);
            const double op = (gp - 2 * g0 + gm) / (h * h) - p * (gp - gm) / (2 * h) + omega2 * g0;
            acc += -op * f(s) * h;
        }
        CHECK(acc == doctest::Approx(f(tpp)).epsilon(1e-4));
    }
}

TEST_CASE("closed system reduces to the unitary oscillator") {
    // Im alpha = 0 and Re alpha = 2 u'/u with u = cos(omega s) + sin(omega s).
    const SystemParams sys{1.3, 0.8};
    for (double t : {0.3, 1.1, 2.5}) {
        const auto cs = coefficient_set(sys, {0.0, 0.0, 0.0}, t);
        const double w = sys.frequency;
        const double expected = 2 * w * (std::cos(w * t) - std::sin(w * t)) / (std::cos(w * t) + std::sin(w * t));
        CHECK(std::abs(cs.alpha.imag()) < 1e-14);
        CHECK(cs.alpha.real() == doctest::Approx(expected).epsilon(1e-12));
        const auto b = bvp_coefficients(sys, {0.0, 0.0, 0.0}, t, 2000);
        CHECK(b.alpha.real() == doctest::Approx(expected).epsilon(1e-5));
    }
}

TEST_CASE("coefficient set against frozen finite-difference references") {
    // Richardson extrapolation of the boundary-value solve at N = 1000, 2000.
    struct Ref {
        SystemParams sys;
        StochasticParams sp;
        double t;
        Complex alpha, beta;
    };
    const Ref refs[] = {
        {{1.0, 1.0}, {0.1, 0.5, 0.2}, 1.3, {-0.051410974653, 0.153855339017}, {-0.320308964582, -0.153855339044}},
        {{1.5, 0.8}, {0.3, 2.0, 1.0}, 2.0, {2.115043568246, 0.116640422498}, {-1.305571831987, -0.116640422532}},
        {{0.7, 2.0}, {0.05, 0.0, 0.7}, 0.9, {-0.929393155533, 0.114203315442}, {0.0, -0.114203315443}},
    };
    for (const auto& r : refs) {
        const auto cs = coefficient_set(r.sys, r.sp, r.t);
        CHECK(std::abs(cs.alpha - r.alpha) < 1e-8);
        CHECK(std::abs(cs.beta - r.beta) < 1e-8);
    }
}

TEST_CASE("hermiticity identities in every regime") {
    for (Regime reg : {Regime::Overdamped, Regime::Critical, Regime::Underdamped}) {
        for (int i = 0; i < 8; ++i) {
            Rng rng = make_rng(11, to_string(reg), i);
            const auto d = draw_parameters(reg, rng);
            const auto cs = coefficient_set(d.sys, d.sp, d.t);
            const double scale = std::abs(cs.alpha);
            CHECK(std::abs(cs.delta - std::conj(cs.alpha)) / scale < 1e-10);
            CHECK(std::abs(cs.gamma_coef - std::conj(cs.beta)) / scale < 1e-10);
            CHECK(std::abs((cs.alpha + cs.beta).imag()) / scale < 1e-10);
            CHECK(cs.regime == reg);
        }
    }
}

TEST_CASE("closed form equals the Green-function assembly") {
    const SystemParams sys{1.0, 1.0};
    const StochasticParams sp{0.4, 0.0, 0.0};
    const Complex cf = alpha_closed_form(sys, sp, 0.7);
    CHECK(rel(cf, coefficient_set(sys, sp, 0.7).alpha) < 1e-8);
    CHECK(cf.imag() == doctest::Approx(symmetric_forms::im_alpha_complex_roots(sys, sp, 0.7)).epsilon(1e-10));
    CHECK(cf.real() == doctest::Approx(symmetric_forms::re_alpha_complex_roots(sys, sp, 0.7)).epsilon(1e-10));

    for (Regime reg : {Regime::Overdamped, Regime::Critical, Regime::Underdamped}) {
        for (int i = 0; i < 8; ++i) {
            Rng rng = make_rng(12, to_string(reg), i);
            const auto d = draw_parameters(reg, rng);
            CHECK(rel(alpha_closed_form(d.sys, d.sp, d.t), coefficient_set(d.sys, d.sp, d.t).alpha) < 1e-8);
        }
    }
}

TEST_CASE("real-root symmetric forms are exact without friction") {
    const SystemParams sys{1.2, 0.9};
    const StochasticParams sp{0.3, 0.0, 1.5};
    REQUIRE(classify_regime(sys, sp).regime == Regime::Overdamped);
    for (double t : {0.2, 1.0, 4.0}) {
        const Complex a = alpha_closed_form(sys, sp, t);
        CHECK(a.imag() == doctest::Approx(symmetric_forms::im_alpha_real_roots(sys, sp, t)).epsilon(1e-10));
        CHECK(a.real() == doctest::Approx(symmetric_forms::re_alpha_real_roots(sys, sp, t)).epsilon(1e-10));
    }
}

TEST_CASE("critical closed form without friction grows linearly") {
    const SystemParams sys{0.8, 1.5};
    const StochasticParams sp{0.2, 0.0, 0.5 * 0.8 * 1.5 * 1.5};
    for (double t : {0.5, 3.0, 40.0}) {
        const double u = 1 + 1.5 * t;
        const double im = 2 * 0.2 / (3 * 0.8 * 1.5) * (u * u * u - 1) / (u * u);
        const Complex a = alpha_closed_form(sys, sp, t);
        CHECK(a.imag() == doctest::Approx(im).epsilon(1e-12));
        CHECK(a.real() == doctest::Approx(2 * 1.5 / u).epsilon(1e-12));
    }
}

TEST_CASE("closed form is continuous through the critical point") {
    const SystemParams sys{1.1, 0.7};
    const StochasticParams crit{0.3, 0.4, 0.5 * 1.1 * (0.49 - 0.4 * 0.4 / (4 * 1.1 * 1.1))};
    REQUIRE(classify_regime(sys, crit).regime == Regime::Critical);
    const Complex at = alpha_closed_form(sys, crit, 2.0);
    for (double eps : {1e-6, -1e-6}) {
        StochasticParams sp = crit;
        sp.gamma0 += 0.5 * sys.mass * eps * 0.49;
        CHECK(rel(alpha_closed_form(sys, sp, 2.0), at) < 1e-4);
    }
}

TEST_CASE("large-time limits where they exist") {
    // Overdamped without friction: the printed limit is exact.
    const SystemParams sys{1.0, 1.0};
    const StochasticParams noFric{0.5, 0.0, 2.0};
    const auto lim0 = exact_limit(sys, noFric);
    const auto printed = symmetric_forms::overdamped_limit(sys, noFric);
    CHECK(lim0.exists);
    CHECK(lim0.im_alpha == doctest::Approx(printed.im_alpha).epsilon(1e-14));
    CHECK(lim0.re_alpha == doctest::Approx(printed.re_alpha).epsilon(1e-14));
    const double kappa = std::sqrt(classify_regime(sys, noFric).q2);
    const Complex late = alpha_closed_form(sys, noFric, 15.0 / kappa);
    CHECK(late.imag() == doctest::Approx(lim0.im_alpha).epsilon(1e-10));
    CHECK(late.real() == doctest::Approx(lim0.re_alpha).epsilon(1e-10));

    // With friction: Im alpha -> 2 sigma / (lambda + 2 m |q|), Re alpha -> 2 |q|.
    const StochasticParams fric{0.5, 1.0, 1.0};
    const double q = std::sqrt(classify_regime(sys, fric).q2);
    const auto lim = exact_limit(sys, fric);
    CHECK(lim.im_alpha == doctest::Approx(2 * 0.5 / (1.0 + 2 * q)));
    CHECK(lim.re_alpha == doctest::Approx(2 * q));
    CHECK(alpha_closed_form(sys, fric, 40.0 / q).imag() == doctest::Approx(lim.im_alpha).epsilon(1e-10));

    // Critical with friction: Im alpha -> 2 sigma / lambda, Re alpha -> 0.
    const StochasticParams crit{0.5, 1.0, 0.5 * (1.0 - 0.25)};
    const auto lc = exact_limit(sys, crit);
    CHECK(lc.exists);
    CHECK(lc.im_alpha == doctest::Approx(1.0));
    CHECK(alpha_closed_form(sys, crit, 1e9).imag() == doctest::Approx(1.0).epsilon(1e-6));

    CHECK_FALSE(exact_limit(sys, {0.5, 0.0, 0.5}).exists);
    CHECK_FALSE(exact_limit(sys, {0.5, 0.2, 0.0}).exists);
}

TEST_CASE("caustics raise a singularity error with the zero location") {
    // Without friction or shift the determinant is cos t + sin t, zero at 3 pi / 4.
    const SystemParams sys{1.0, 1.0};
    const StochasticParams sp{0.1, 0.0, 0.0};
    const double tc = 3 * kPi / 4;
    CHECK(nearest_caustic(sys, sp, 2.0) == doctest::Approx(tc).epsilon(1e-10));
    try {
        coefficient_set(sys, sp, tc);
        FAIL("expected a singularity");
    } catch (const SingularityError& e) {
        CHECK(e.time() == doctest::Approx(tc).epsilon(1e-8));
    }
    CHECK_THROWS_AS(alpha_closed_form(sys, sp, tc), SingularityError);
    CHECK(caustic_margin(sys, sp, tc) < 1e-12);
    CHECK(caustic_margin(sys, sp, 0.1) > 0.5);
    CHECK_NOTHROW(check_caustic(sys, sp, 1.0));
}

TEST_CASE("Im alpha stays positive without friction") {
    for (Regime reg : {Regime::Overdamped, Regime::Critical, Regime::Underdamped}) {
        for (int i = 0; i < 4; ++i) {
            Rng rng = make_rng(13, to_string(reg), i);
            const auto d = draw_parameters(reg, rng, FrictionDraw::Zero);
            for (int j = 1; j <= 60; ++j) {
                const double t = j * 0.25 / d.rate;
                if (caustic_margin(d.sys, d.sp, t) < 1e-3) continue;
                CHECK(alpha_closed_form(d.sys, d.sp, t).imag() > 0.0);
            }
        }
    }
}

TEST_CASE("Im alpha can turn negative between caustics when friction acts") {
    // Underdamped with friction: the two determinants vanish at different times,
    // and between them the sign of Im alpha flips.
    const SystemParams sys{1.0, 1.0};
    const StochasticParams sp{0.2, 0.8, 0.0};
    bool negative = false;
    for (int j = 1; j < 4000 && !negative; ++j) {
        const double t = j * 0.005;
        if (caustic_margin(sys, sp, t) < 1e-6) continue;
        negative = alpha_closed_form(sys, sp, t).imag() < 0.0;
    }
    CHECK(negative);
}

TEST_CASE("finite-difference oracle converges at second order") {
    const SystemParams sys{1.0, 1.0};
    const StochasticParams sp{0.3, 0.6, 0.2};
    const double t = 1.4;
    const auto cs = coefficient_set(sys, sp, t);
    const double e1 = std::abs(bvp_coefficients(sys, sp, t, 250).alpha - cs.alpha);
    const double e2 = std::abs(bvp_coefficients(sys, sp, t, 500).alpha - cs.alpha);
    const double e3 = std::abs(bvp_coefficients(sys, sp, t, 4000).alpha - cs.alpha);
    CHECK(std::log2(e1 / e2) == doctest::Approx(2.0).epsilon(0.1));
    CHECK(e3 / std::abs(cs.alpha) < 1e-5);
}

TEST_CASE("finite-difference oracle basics") {
    const SystemParams sys{1.0, 1.0};
    const StochasticParams sp{0.3, 0.6, 0.2};
    const auto zero = bvp_oracle(sys, sp, 1.0, 0.0, 0.0, 200);
    CHECK(zero.x1.cwiseAbs().maxCoeff() == 0.0);
    CHECK(zero.x4.cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(bvp_oracle(sys, sp, 1.0, 1.0, 0.0, 50), DomainError);

    const auto sol = bvp_oracle(sys, sp, 1.0, 0.7, -0.4, 400);
    CHECK(std::abs(sol.x1[sol.x1.size() - 1] - 0.7) < 1e-11);
    CHECK(std::abs(sol.x4[sol.x4.size() - 1] + 0.4) < 1e-11);
}

TEST_CASE("invalid system parameters are rejected") {
    CHECK_THROWS_AS(coefficient_set({0.0, 1.0}, {0.1, 0.0, 0.0}, 1.0), DomainError);
    CHECK_THROWS_AS(coefficient_set({1.0, 1.0}, {-0.1, 0.0, 0.0}, 1.0), DomainError);
    CHECK_THROWS_AS(coefficient_set({1.0, 1.0}, {0.1, 0.0, 0.0}, 0.0), DomainError);
}
