// classical_dynamics.cpp: mode-function solution of the classical boundary-value problem
#include "cct/classical_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cct/errors.hpp"
#include "cct/quadrature.hpp"

namespace cct {

void validate(const SystemParams& sys, const StochasticParams& sp) {
    if (!(sys.mass > 0.0) || !std::isfinite(sys.mass)) throw DomainError("system mass must be > 0");
    if (!(sys.frequency > 0.0) || !std::isfinite(sys.frequency)) throw DomainError("system frequency must be > 0");
    if (!(sp.sigma >= 0.0) || !std::isfinite(sp.sigma)) throw DomainError("noise strength sigma must be >= 0");
    if (!std::isfinite(sp.lambda) || !std::isfinite(sp.gamma0)) throw DomainError("lambda and gamma0 must be finite");
}

const char* to_string(Regime r) {
    switch (r) {
    case Regime::Overdamped: return "overdamped";
    case Regime::Critical: return "critical";
    case Regime::Underdamped: return "underdamped";
    }
    return "?";
}

RegimeClass classify_regime(const SystemParams& sys, const StochasticParams& sp, double eps_rel) {
    validate(sys, sp);
    const double m = sys.mass;
    const double w = sys.frequency;
    RegimeClass rc;
    rc.omega = w;
    rc.drift = sp.lambda / m;
    rc.q2 = sp.lambda * sp.lambda / (4 * m * m) + 2 * sp.gamma0 / m - w * w;
    const Complex root = std::sqrt(Complex(rc.q2, 0.0));
    rc.alpha_plus = sp.lambda / (2 * m) + root;
    rc.alpha_minus = -sp.lambda / (2 * m) + root;
    if (std::abs(rc.q2) < eps_rel * w * w) {
        rc.regime = Regime::Critical;
    } else if (rc.q2 > 0) {
        rc.regime = Regime::Overdamped;
    } else {
        rc.regime = Regime::Underdamped;
        rc.k = std::sqrt(-rc.q2);
    }
    return rc;
}

namespace {

// sinh(r s)/r, entire in r^2.
Complex sinc_h(Complex r, double s) {
    const Complex x = r * s;
    if (std::abs(x) < 1e-2) {
        const Complex y = x * x;
        return s * (1.0 + y / 6.0 * (1.0 + y / 20.0 * (1.0 + y / 42.0 * (1.0 + y / 72.0))));
    }
    return std::sinh(x) / r;
}

// u(s) = cosh(r s) + c sinh(r s)/r, held as exp(rho s) * scaled(s) so that
// growing exponentials never overflow.
class ModeFunction {
public:
    ModeFunction(Complex r, double c, double horizon) : r_(r), c_(c) {
        direct_ = std::abs(r) * horizon <= 1.0;
        rho_ = direct_ ? 0.0 : r.real();
    }

    double rho() const { return rho_; }

    Complex scaled(double s) const {
        if (direct_) return std::cosh(r_ * s) + c_ * sinc_h(r_, s);
        const Complex cr = c_ / r_;
        return 0.5 * (1.0 + cr) * std::exp((r_ - rho_) * s) + 0.5 * (1.0 - cr) * std::exp((-r_ - rho_) * s);
    }

    Complex scaled_derivative(double s) const {
        if (direct_) return r_ * r_ * sinc_h(r_, s) + c_ * std::cosh(r_ * s);
        return 0.5 * (r_ + c_) * std::exp((r_ - rho_) * s) - 0.5 * (r_ - c_) * std::exp((-r_ - rho_) * s);
    }

    // Bound on |scaled(s)| used to judge whether a value is "near zero".
    double scale(double s) const {
        if (direct_) return 1.0 + std::abs(c_) * s;
        const Complex cr = c_ / r_;
        return 0.5 * std::abs(1.0 + cr) + 0.5 * std::abs(1.0 - cr);
    }

    // u(s) / u(t)
    Complex ratio(double s, double t) const { return std::exp(rho_ * (s - t)) * scaled(s) / scaled(t); }

private:
    Complex r_;
    double c_;
    bool direct_;
    double rho_;
};

struct Modes {
    double p;     // lambda / m
    double omega;
    Complex r;    // sqrt(q2), principal branch
    double a;     // difference-mode Robin constant, omega - p/2
    double b;     // sum-mode Robin constant, omega + p/2
    ModeFunction ua;
    ModeFunction ub;
};

Modes make_modes(const SystemParams& sys, const StochasticParams& sp, double t) {
    const RegimeClass rc = classify_regime(sys, sp);
    const double p = sp.lambda / sys.mass;
    const double w = sys.frequency;
    const Complex r = rc.regime == Regime::Critical ? Complex(0.0) : std::sqrt(Complex(rc.q2, 0.0));
    const double a = w - 0.5 * p;
    const double b = w + 0.5 * p;
    return Modes{p, w, r, a, b, ModeFunction(r, a, t), ModeFunction(r, b, t)};
}

// Zero of cosh(r s) + c sinh(r s)/r nearest to t; negative if there is none.
double nearest_zero(double q2, double c, double t) {
    const double pi = std::numbers::pi;
    if (q2 < 0.0) {
        const double k = std::sqrt(-q2);
        const double phi = std::atan2(k, c);
        double n = std::round((k * t + phi) / pi);
        if (n * pi - phi <= 0.0) n += 1.0;
        return (n * pi - phi) / k;
    }
    if (q2 == 0.0) return c < 0.0 ? -1.0 / c : -1.0;
    const double kap = std::sqrt(q2);
    if (c < 0.0 && kap < -c) return std::atanh(-kap / c) / kap;
    return -1.0;
}

void require_regular(const ModeFunction& u, double c, double q2, double t, double tol, const char* which) {
    const double v = std::abs(u.scaled(t));
    if (v < tol * u.scale(t)) {
        throw SingularityError(std::string("boundary-value determinant (") + which + " mode) vanishes near t = " +
                                   std::to_string(nearest_zero(q2, c, t)),
                               nearest_zero(q2, c, t));
    }
}

double effective_q2(const SystemParams& sys, const StochasticParams& sp) {
    const RegimeClass rc = classify_regime(sys, sp);
    return rc.regime == Regime::Critical ? 0.0 : rc.q2;
}

} // namespace

double green_line(const RegimeClass& rc, double t, double t1, double t2) {
    if (!(t > 0.0) || t1 < 0.0 || t1 > t || t2 < 0.0 || t2 > t) {
        throw DomainError("green_line arguments must satisfy 0 <= t1, t2 <= t");
    }
    const Complex r = rc.regime == Regime::Critical ? Complex(0.0) : std::sqrt(Complex(rc.q2, 0.0));
    const double lo = std::min(t1, t2);
    const double hi = std::max(t1, t2);
    const Complex den = sinc_h(r, t);
    if (std::abs(den) < 1e-14 * t) {
        throw SingularityError("Dirichlet Green function is resonant at this horizon", t);
    }
    const Complex g = std::exp(0.5 * rc.drift * (t1 - t2)) * sinc_h(r, lo) * sinc_h(r, t - hi) / den;
    return g.real();
}

double green_robin(const RegimeClass& rc, double t, double t1, double t2) {
    if (!(t > 0.0) || t1 < 0.0 || t1 > t || t2 < 0.0 || t2 > t) {
        throw DomainError("green_robin arguments must satisfy 0 <= t1, t2 <= t");
    }
    const Complex r = rc.regime == Regime::Critical ? Complex(0.0) : std::sqrt(Complex(rc.q2, 0.0));
    const ModeFunction ub(r, rc.omega + 0.5 * rc.drift, t);
    const double lo = std::min(t1, t2);
    const double hi = std::max(t1, t2);
    const Complex g = std::exp(0.5 * rc.drift * (t2 - t1)) * ub.ratio(lo, t) * sinc_h(r, t - hi);
    return g.real();
}

void check_caustic(const SystemParams& sys, const StochasticParams& sp, double t, double tol) {
    const Modes md = make_modes(sys, sp, t);
    const double q2 = effective_q2(sys, sp);
    require_regular(md.ua, md.a, q2, t, tol, "difference");
    require_regular(md.ub, md.b, q2, t, tol, "sum");
}

double nearest_caustic(const SystemParams& sys, const StochasticParams& sp, double t) {
    const Modes md = make_modes(sys, sp, t);
    const double q2 = effective_q2(sys, sp);
    const double za = nearest_zero(q2, md.a, t);
    const double zb = nearest_zero(q2, md.b, t);
    if (za < 0) return zb;
    if (zb < 0) return za;
    return std::abs(za - t) <= std::abs(zb - t) ? za : zb;
}

double caustic_margin(const SystemParams& sys, const StochasticParams& sp, double t) {
    const Modes md = make_modes(sys, sp, t);
    return std::min(std::abs(md.ua.scaled(t)) / md.ua.scale(t), std::abs(md.ub.scaled(t)) / md.ub.scale(t));
}

CoefficientSet coefficient_set(const SystemParams& sys, const StochasticParams& sp, double t,
                               const CoefficientOptions& opt) {
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("coefficient_set needs t > 0");
    const RegimeClass rc = classify_regime(sys, sp);
    const Modes md = make_modes(sys, sp, t);
    const double q2 = effective_q2(sys, sp);
    require_regular(md.ua, md.a, q2, t, opt.caustic_tol, "difference");
    require_regular(md.ub, md.b, q2, t, opt.caustic_tol, "sum");

    const double p = md.p;
    // Logarithmic derivatives at t of the homogeneous difference mode
    // exp(p s/2) u_a(s) and sum mode exp(-p s/2) u_b(s).
    const Complex ha = 0.5 * p + md.ua.scaled_derivative(t) / md.ua.scaled(t);
    const Complex hb = -0.5 * p + md.ub.scaled_derivative(t) / md.ub.scaled(t);

    // Sum-mode response to the noise source (2 i sigma/m) D, per unit D(t):
    // Sdot_p(t) = -(2 i sigma/m) ∫_0^t dG/dt'(t, s) D(s) ds with the Robin–Dirichlet Green
    // function, whose boundary derivative is -exp(p(s-t)/2) u_b(s)/u_b(t).
    Complex Q{};
    if (sp.sigma != 0.0) {
        auto dG = [&](double s) { return -std::exp(0.5 * p * (s - t)) * md.ub.ratio(s, t); };
        auto D = [&](double s) { return std::exp(0.5 * p * (s - t)) * md.ua.ratio(s, t); };
        const double rate = std::max({std::abs(md.r), std::abs(p), md.omega});
        quad::Options qo;
        qo.rel_tol = opt.rel_tol;
        qo.abs_tol = 1e-300;
        qo.min_panels = std::max(1, static_cast<int>(std::ceil(rate * t / 4.0)));
        qo.max_panels = qo.min_panels * 1024;
        const Complex I(0.0, 1.0);
        const auto integral = quad::integrate([&](double s) { return dG(s) * D(s); }, 0.0, t, qo);
        Q = -2.0 * I * sp.sigma / sys.mass * integral.value;
    }

    CoefficientSet cs;
    cs.t = t;
    cs.q2 = rc.q2;
    cs.regime = rc.regime;
    // (x', x) = (1, 0): S(t) = D(t) = 1;  (0, 1): S(t) = 1, D(t) = -1.
    cs.alpha = hb + Q + ha;
    cs.beta = hb - Q - ha;
    cs.gamma_coef = hb + Q - ha;
    cs.delta = hb - Q + ha;
    return cs;
}

namespace {

// (1 - exp(-x)) / x
double phi1(double x) {
    if (std::abs(x) < 1e-8) return 1.0 - 0.5 * x;
    return -std::expm1(-x) / x;
}

// exp(-shift t) ∫_0^t exp(-p (t - s)) exp(mu s) ds, requiring shift >= mu and shift >= -p.
double weighted_exp(double mu, double p, double t, double shift) {
    const double x = (mu + p) * t;
    if (x < -1.0) return (std::exp((mu - shift) * t) - std::exp(-(p + shift) * t)) / (mu + p);
    return std::exp((mu - shift) * t) * t * phi1(x);
}

// ∫_0^t exp(-p (t - s)) s^n ds for n = 0, 1, 2.
std::array<double, 3> poly_moments(double p, double t) {
    std::array<double, 3> M{};
    if (std::abs(p) * t < 0.5) {
        // Series in p: Σ_j (-p)^j t^{n+j+1} n! / (n+j+1)!
        for (int n = 0; n < 3; ++n) {
            double nf = (n == 2) ? 2.0 : 1.0;
            double term = std::pow(t, n + 1) * nf;
            double denom = 1.0;
            for (int k = 1; k <= n + 1; ++k) denom *= k;
            double sum = 0.0;
            double pj = 1.0;
            for (int j = 0; j < 40; ++j) {
                if (j > 0) {
                    pj *= -p * t;
                    denom *= (n + j + 1);
                }
                sum += pj / denom;
            }
            M[n] = term * sum;
        }
        return M;
    }
    M[0] = t * phi1(p * t);
    M[1] = (t - M[0]) / p;
    M[2] = (t * t - 2.0 * M[1]) / p;
    return M;
}

} // namespace

Complex alpha_closed_form(const SystemParams& sys, const StochasticParams& sp, double t, double caustic_tol) {
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("alpha_closed_form needs t > 0");
    check_caustic(sys, sp, t, caustic_tol);
    const RegimeClass rc = classify_regime(sys, sp);
    const double m = sys.mass;
    const double w = sys.frequency;
    const double p = sp.lambda / m;
    const double a = w - 0.5 * p;
    const double b = w + 0.5 * p;
    const double g = 2.0 * sp.sigma / m;

    double re = 0.0;
    double im = 0.0;
    switch (rc.regime) {
    case Regime::Overdamped: {
        const double kap = std::sqrt(rc.q2);
        const double th = std::tanh(kap * t);
        auto logd = [&](double c) { return (kap * th + c) / (1.0 + c * th / kap); };
        re = logd(a) + logd(b);
        // u_a u_b = A0 + A1 cosh 2ks + B1 sinh 2ks, everything scaled by exp(-2 kappa t).
        const double ab2 = a * b / (2 * kap * kap);
        const double A0 = 0.5 - ab2;
        const double Ap = 0.5 * ((0.5 + ab2) + (a + b) / (2 * kap));
        const double Am = 0.5 * ((0.5 + ab2) - (a + b) / (2 * kap));
        const double s = 2 * kap;
        const double e2 = std::exp(-s * t);
        const double prod = A0 * e2 + Ap + Am * e2 * e2;
        const double J = A0 * weighted_exp(0.0, p, t, s) + Ap * weighted_exp(s, p, t, s) +
                         Am * weighted_exp(-s, p, t, s);
        im = g * J / prod;
        break;
    }
    case Regime::Critical: {
        re = a / (1 + a * t) + b / (1 + b * t);
        const auto M = poly_moments(p, t);
        im = g * (M[0] + (a + b) * M[1] + a * b * M[2]) / ((1 + a * t) * (1 + b * t));
        break;
    }
    case Regime::Underdamped: {
        const double k = rc.k;
        const double c = std::cos(k * t);
        const double sn = std::sin(k * t);
        auto u = [&](double cc) { return c + cc * sn / k; };
        auto du = [&](double cc) { return -k * sn + cc * c; };
        re = du(a) / u(a) + du(b) / u(b);
        const double ab2 = a * b / (2 * k * k);
        const double A0 = 0.5 + ab2;
        const double A1 = 0.5 - ab2;
        const double B1 = (a + b) / (2 * k);
        const double M0 = t * phi1(p * t);
        const Complex I(0.0, 1.0);
        const Complex Z = (std::exp(2.0 * I * k * t) - std::exp(-p * t)) / (p + 2.0 * I * k);
        const double J = A0 * M0 + A1 * Z.real() + B1 * Z.imag();
        im = g * J / (u(a) * u(b));
        break;
    }
    }
    return {re, im};
}

namespace symmetric_forms {

namespace {
struct Roots {
    double ap, am, w, a, k;
};
Roots roots(const SystemParams& sys, const StochasticParams& sp) {
    const RegimeClass rc = classify_regime(sys, sp);
    return {rc.alpha_plus.real(), rc.alpha_minus.real(), sys.frequency, sys.frequency - sp.lambda / (2 * sys.mass),
            rc.k};
}
} // namespace

double im_alpha_real_roots(const SystemParams& sys, const StochasticParams& sp, double t) {
    const auto [ap, am, w, a, k] = roots(sys, sp);
    (void)a;
    (void)k;
    const double S = ap + am;
    const double sh = std::sinh(0.5 * S * t);
    const double f1 = ((ap - w) * (t + std::expm1(-S * t) / S) + (am + w) * (std::expm1(S * t) / S - t)) / sh;
    const double f2 = S / sh *
                      ((am + w) * (t * std::exp(0.5 * S * t) - 2 * sh / S) +
                       (ap - w) * (2 * sh / S - t * std::exp(-0.5 * S * t)));
    const double Dt = (ap - w) * std::exp(-am * t) + (am + w) * std::exp(ap * t);
    const double d = ap - am;
    return sp.sigma / sys.mass * (std::exp(0.5 * d * t) * f1 / Dt + std::exp(d * t) * f2 / (Dt * Dt));
}

double re_alpha_real_roots(const SystemParams& sys, const StochasticParams& sp, double t) {
    const auto [ap, am, w, a, k] = roots(sys, sp);
    (void)a;
    (void)k;
    const double Dt = (ap - w) * std::exp(-am * t) + (am + w) * std::exp(ap * t);
    const double dDt = -am * (ap - w) * std::exp(-am * t) + ap * (am + w) * std::exp(ap * t);
    return 2.0 * dDt / Dt;
}

double im_alpha_complex_roots(const SystemParams& sys, const StochasticParams& sp, double t) {
    const auto r = roots(sys, sp);
    const double a = r.a, k = r.k;
    const double den = a * std::sin(k * t) + k * std::cos(k * t);
    const double s = std::sin(k * t);
    return sp.sigma / sys.mass / (den * den) *
           ((k * k + a * a) * t + 2 * a * s * s + (k * k - a * a) * std::sin(2 * k * t) / (2 * k));
}

double re_alpha_complex_roots(const SystemParams& sys, const StochasticParams& sp, double t) {
    const auto r = roots(sys, sp);
    const double a = r.a, k = r.k, w = r.w;
    const double l2m = sp.lambda / (2 * sys.mass);
    return 2.0 * ((l2m * a - k * k) * std::sin(k * t) + w * k * std::cos(k * t)) /
           (a * std::sin(k * t) + k * std::cos(k * t));
}

double re_alpha_complex_roots_unscaled(const SystemParams& sys, const StochasticParams& sp, double t) {
    const auto r = roots(sys, sp);
    const double a = r.a, k = r.k;
    const double l2m = sp.lambda / (2 * sys.mass);
    return 2.0 * ((l2m * a - k * k) * std::sin(k * t) + k * std::cos(k * t)) /
           (a * std::sin(k * t) + k * std::cos(k * t));
}

Limit overdamped_limit(const SystemParams& sys, const StochasticParams& sp) {
    const RegimeClass rc = classify_regime(sys, sp);
    const double q = std::sqrt(std::abs(rc.q2));
    return {sp.lambda / sys.mass + 2 * q, sp.sigma / sys.mass / q};
}

Limit critical_limit(const SystemParams& sys, const StochasticParams& sp) {
    const double m = sys.mass;
    return {2 * sys.frequency, sp.sigma / m * 2.0 / (sys.frequency - sp.lambda / m)};
}

double underdamped_growth(const SystemParams& sys, const StochasticParams& sp, double t) {
    const auto r = roots(sys, sp);
    const double a = r.a, k = r.k;
    const double den = a * std::sin(k * t) + k * std::cos(k * t);
    return sp.sigma / sys.mass * (k * k + a * a) * t / (den * den);
}

} // namespace symmetric_forms

ExactLimit exact_limit(const SystemParams& sys, const StochasticParams& sp) {
    const RegimeClass rc = classify_regime(sys, sp);
    ExactLimit out;
    if (rc.regime == Regime::Overdamped) {
        const double q = std::sqrt(rc.q2);
        out.exists = true;
        out.re_alpha = 2 * q;
        out.im_alpha = 2 * sp.sigma / (sp.lambda + 2 * sys.mass * q);
    } else if (rc.regime == Regime::Critical && sp.lambda > 0.0) {
        out.exists = true;
        out.re_alpha = 0.0;
        out.im_alpha = 2 * sp.sigma / sp.lambda;
    }
    return out;
}

} // namespace cct
