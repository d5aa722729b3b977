#include "doctest.h"

#include <cmath>

#include "cct/env_correlators.hpp"
#include "cct/errors.hpp"

using namespace cct;

namespace {
const Oscillator kUnit{1.0, 1.0, 1.0};
constexpr double kPi = 3.141592653589793;
} // namespace

TEST_CASE("contour Green function at coincident points") {
    const Contour c(1.0, 1.0);
    const Oscillator osc{1.0, 2.0, 3.0};
    const auto p = c.at(ContourLine::L4, 0.4);
    const Complex g = contour_green(osc, p, p);
    CHECK(g.real() == doctest::Approx(0.0));
    CHECK(g.imag() == doctest::Approx(-1.0 / 12.0));
}

TEST_CASE("contour Green function at a quarter period on L4") {
    const Contour c(3.0, 1.0);
    const Complex g = contour_green(kUnit, c.at_time(ContourLine::L4, 0.5 + kPi / 2), c.at_time(ContourLine::L4, 0.5));
    CHECK(g.real() == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(std::abs(g.imag()) < 1e-15);
}

TEST_CASE("finite euclidean cutoff converges to the limit form") {
    const Contour c(1.0, 1.0, 20.0);
    const auto a = c.at_time(ContourLine::L4, 1.0);
    const auto b = c.at_time(ContourLine::L4, 0.0);
    const Complex diff = contour_green_finite(kUnit, a, b, 20.0) - contour_green(kUnit, a, b);
    CHECK(std::abs(diff) < 1e-15);

    double prev = 1.0;
    for (double te : {2.0, 4.0, 6.0}) {
        const Contour ct(1.0, 1.0, te);
        const auto x = ct.at(ContourLine::L1, 0.3);
        const auto y = ct.at(ContourLine::L2, 0.5);
        const double e = std::abs(contour_green_finite(kUnit, x, y, te) - contour_green(kUnit, x, y));
        CHECK(e < prev * std::exp(-1.5));
        prev = e;
    }
}

TEST_CASE("contour Green function rejects a zero frequency") {
    const Contour c(1.0, 1.0);
    const auto p = c.at(ContourLine::L4, 0.4);
    CHECK_THROWS_AS(contour_green(Oscillator{1.0, 1.0, 0.0}, p, p), DomainError);
}

TEST_CASE("line propagators of one and two oscillators") {
    const auto one = line_propagators(OscillatorBath({kUnit}));
    CHECK(one.G_I(0.0) == doctest::Approx(0.5));
    CHECK(one.G_R(0.0) == 0.0);
    CHECK(one.G_I(1.3) == doctest::Approx(0.5 * std::cos(1.3)));
    CHECK(one.G_R(1.3) == doctest::Approx(-0.5 * std::sin(1.3)));

    const auto two = line_propagators(OscillatorBath({{1.0, 1.0, 1.0}, {1.0, 1.0, 2.0}}));
    CHECK(two.G_I(0.0) == doctest::Approx(0.75));
    CHECK(two.G_R(0.0) == 0.0);
}

TEST_CASE("bath construction validates entries") {
    CHECK_THROWS_AS(OscillatorBath({}), DomainError);
    CHECK_THROWS_AS(OscillatorBath({{1.0, 1.0, 0.0}}), DomainError);
    CHECK_THROWS_AS(OscillatorBath({{1.0, -1.0, 1.0}}), DomainError);
    const OscillatorBath b({{2.0, 1.0, 2.0}, {1.0, 0.5, 1.0}});
    CHECK(b.centered_friction_offset() == doctest::Approx(4.0 / 8.0 + 1.0 / 1.0));
}

TEST_CASE("bath from JSON reports field paths") {
    const auto ok = OscillatorBath::from_json(nlohmann::json::parse(R"([{"g":1,"m":2,"omega":3}])"));
    CHECK(ok.entries()[0].mass == 2.0);
    try {
        OscillatorBath::from_json(nlohmann::json::parse(R"([{"g":1,"m":2,"omega":3},{"g":1,"m":2}])"), "env.bath");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.path() == "env.bath[1].omega");
    }
    CHECK_THROWS_AS(OscillatorBath::from_json(nlohmann::json::parse(R"([{"g":1,"m":-2,"omega":3}])")), ConfigError);
    CHECK_THROWS_AS(OscillatorBath::from_json(nlohmann::json::parse(R"({"g":1})")), ConfigError);
}

TEST_CASE("friction kernel from G_R of a unit oscillator") {
    auto gr = [](double s) { return -0.5 * std::sin(s); };
    for (double t : {-2.0, 0.0, 0.7, 3.0, 9.5})
        CHECK(friction_from_GR(gr, t, 0.5) == doctest::Approx(0.5 * std::cos(t)).epsilon(1e-9));
    for (double t : {0.0, 1.0, 10.0}) CHECK(friction_from_GR([](double) { return 0.0; }, t, 0.3) == 0.3);
}

TEST_CASE("friction kernel slope matches G_R") {
    const OscillatorBath bath({{1.0, 1.0, 1.0}, {0.5, 2.0, 3.0}});
    const auto prop = line_propagators(bath);
    const FrictionKernel analytic = FrictionKernel::from_bath(bath, 0.2);
    const FrictionKernel integrated = FrictionKernel::from_propagator(prop.G_R, 0.2);
    for (double t = -4.0; t <= 4.0; t += 0.37) {
        const double h = 1e-5;
        CHECK(std::abs((integrated(t + h) - integrated(t - h)) / (2 * h) - prop.G_R(t)) < 1e-6);
        CHECK(analytic(t) == doctest::Approx(integrated(t)).epsilon(1e-8));
        CHECK(analytic(t) == analytic(-t));
    }
    CHECK(analytic.at_zero() == 0.2);
}

TEST_CASE("symmetry report on exact propagators") {
    const auto prop = line_propagators(OscillatorBath({kUnit}));
    std::vector<double> grid;
    for (int i = -50; i <= 50; ++i) grid.push_back(0.17 * i);
    const auto report = check_symmetries(prop, grid);
    REQUIRE(report.size() == 5);
    for (const auto& v : report) CHECK(v.max_violation < 1e-15);
}

TEST_CASE("symmetry report flags a corrupted G_R") {
    LinePropagator bad = line_propagators(OscillatorBath({kUnit}));
    bad.G_R = [](double s) { return std::cos(s); };
    const auto report = check_symmetries(bad, {-1.0, 0.5, 2.0});
    double parity = 0.0, anti = 0.0;
    for (const auto& v : report) {
        if (v.relation == "parity_G_R") parity = v.max_violation;
        if (v.relation == "anti_hermiticity") anti = v.max_violation;
    }
    CHECK(parity > 0.1);
    CHECK(anti > 0.1);
}

TEST_CASE("symmetry report on an empty grid is empty") {
    CHECK(check_symmetries(line_propagators(OscillatorBath({kUnit})), {}).empty());
}
