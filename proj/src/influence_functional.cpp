// influence_functional.cpp: Feynman–Vernon evaluators, stochastic reduction, cumulants
#include "cct/influence_functional.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "cct/errors.hpp"

namespace cct {

namespace {

void validate(const PathPair& p) {
    if (!p.x1 || !p.x4) throw DomainError("path pair needs both x1 and x4");
    if (!(p.t > 0.0) || !std::isfinite(p.t)) throw DomainError("path horizon t must be > 0");
}

// Derivative of a path: analytic if supplied, otherwise central differences
// with step t * 1e-6 (second-order one-sided at the ends of [0, t]).
PathFn derivative(const PathFn& x, const PathFn& dx, double t) {
    if (dx) return dx;
    const double h = t * 1e-6;
    return [x, h, t](double s) {
        if (s - h < 0.0) return (-3.0 * x(s) + 4.0 * x(s + h) - x(s + 2 * h)) / (2 * h);
        if (s + h > t) return (3.0 * x(s) - 4.0 * x(s - h) + x(s - 2 * h)) / (2 * h);
        return (x(s + h) - x(s - h)) / (2 * h);
    };
}

template <class F>
double line_integral(F&& f, double t, const quad::Options& q) {
    return quad::integrate(f, 0.0, t, q).value;
}

} // namespace

FVActionValue sfv2_general(const PathPair& paths, const LinePropagator& prop, double g, const FVOptions& opt) {
    validate(paths);
    FVActionValue out;
    out.hbar = opt.hbar;
    const double g2 = g * g;
    if (g2 == 0.0) return out;

    const auto& x1 = paths.x1;
    const auto& x4 = paths.x4;
    auto noise = quad::integrate_triangle(
        [&](double t2, double t1) {
            return (x1(t2) - x4(t2)) * prop.G_I(t2 - t1) * (x1(t1) - x4(t1));
        },
        paths.t, opt.quadrature);
    auto fric = quad::integrate_triangle(
        [&](double t2, double t1) {
            return (x1(t2) - x4(t2)) * prop.G_R(t2 - t1) * (x1(t1) + x4(t1));
        },
        paths.t, opt.quadrature);

    out.breakdown.noise_part = g2 * noise.value / opt.hbar;
    out.breakdown.friction_part = g2 * fric.value / opt.hbar;
    out.value = Complex(-out.breakdown.noise_part, out.breakdown.friction_part);
    out.error_estimate = g2 * (noise.error + fric.error) / opt.hbar;
    return out;
}

FVActionValue sfv2_parts(const PathPair& paths, const LinePropagator& prop, const FrictionKernel& friction,
                         double g, const FVOptions& opt) {
    validate(paths);
    FVActionValue out;
    out.hbar = opt.hbar;
    const double g2 = g * g;
    if (g2 == 0.0) return out;

    const auto& x1 = paths.x1;
    const auto& x4 = paths.x4;
    const double t = paths.t;
    const PathFn v1 = derivative(x1, paths.dx1, t);
    const PathFn v4 = derivative(x4, paths.dx4, t);
    auto diff = [&](double s) { return x1(s) - x4(s); };

    auto noise = quad::integrate_square(
        [&](double a, double b) { return diff(a) * prop.G_I(a - b) * diff(b); }, t, opt.quadrature);
    auto fric_integrand = [&](double t2, double t1) { return diff(t2) * friction(t2 - t1) * (v1(t1) + v4(t1)); };
    double fric = 0.0;
    double err = noise.error;
    if (opt.friction_form == FrictionForm::Causal) {
        auto r = quad::integrate_triangle(fric_integrand, t, opt.quadrature);
        fric = r.value;
        err += r.error;
    } else {
        auto r = quad::integrate_square(fric_integrand, t, opt.quadrature);
        fric = 0.5 * r.value;
        err += r.error;
    }
    const double squares =
        line_integral([&](double s) { return x1(s) * x1(s) - x4(s) * x4(s); }, t, opt.quadrature);
    const double edge = line_integral([&](double s) { return diff(s) * friction(s); }, t, opt.quadrature);

    auto& b = out.breakdown;
    b.noise_part = 0.5 * g2 * noise.value / opt.hbar;
    b.friction_part = g2 * fric / opt.hbar;
    b.shift_part = -g2 * friction.at_zero() * squares / opt.hbar;
    b.boundary_part = g2 * (x1(0.0) + x4(0.0)) * edge / opt.hbar;
    out.value = Complex(-b.noise_part, b.friction_part + b.shift_part + b.boundary_part);
    out.error_estimate = g2 * err / opt.hbar;
    return out;
}

Complex sfv_contour_quadrature(const PathPair& paths, const Oscillator& osc, double g, const FVOptions& opt) {
    validate(paths);
    const Contour C(paths.t, g * osc.coupling, 0.0, osc.frequency);
    auto path_on = [&](ContourLine line, const ContourPoint& p) {
        return line == ContourLine::L1 ? paths.x1(p.z.real()) : paths.x4(p.z.real());
    };

    Complex total{};
    for (ContourLine la : kAllLines) {
        for (ContourLine lb : kAllLines) {
            const Complex ja = C.tangent(la);
            const Complex jb = C.tangent(lb);
            auto integrand = [&](double sa, double sb) -> Complex {
                const ContourPoint a = C.at(la, sa);
                const ContourPoint b = C.at(lb, sb);
                if (a.g == 0.0 || b.g == 0.0) return {};
                const double th = theta_c(a, b);
                if (th == 0.0) return {};
                return ja * jb * a.g * b.g * path_on(la, a) * path_on(lb, b) * th * contour_green(osc, a, b);
            };
            if (C.at(la, 0.5).g == 0.0 || C.at(lb, 0.5).g == 0.0) continue;
            total += quad::integrate_square(integrand, 1.0, opt.quadrature).value;
        }
    }
    return Complex(0.0, -1.0 / opt.hbar) * total;
}

FVActionValue sfv2_stochastic(const PathPair& paths, const StochasticParams& sp, const FVOptions& opt) {
    validate(paths);
    if (sp.sigma < 0.0) throw DomainError("noise strength sigma must be >= 0");
    const auto& x1 = paths.x1;
    const auto& x4 = paths.x4;
    const double t = paths.t;
    const PathFn v1 = derivative(x1, paths.dx1, t);
    const PathFn v4 = derivative(x4, paths.dx4, t);
    const double h = opt.hbar;

    FVActionValue out;
    out.hbar = h;
    auto& b = out.breakdown;
    b.noise_part = sp.sigma / (2 * h) *
                   line_integral([&](double s) { return (x1(s) - x4(s)) * (x1(s) - x4(s)); }, t, opt.quadrature);
    b.friction_part = sp.lambda / (2 * h) *
                      line_integral([&](double s) { return (x1(s) - x4(s)) * (v1(s) + v4(s)); }, t, opt.quadrature);
    b.shift_part = -sp.gamma0 / h *
                   line_integral([&](double s) { return x1(s) * x1(s) - x4(s) * x4(s); }, t, opt.quadrature);
    b.boundary_part = sp.lambda / (2 * h) * (x1(0.0) * x1(0.0) - x4(0.0) * x4(0.0));
    out.value = Complex(-b.noise_part, b.friction_part + b.shift_part + b.boundary_part);
    return out;
}

double even_line_integral(const std::function<double(double)>& f, const ReduceOptions& opt) {
    const double f0 = std::abs(f(0.0));

    // Half-width: first point of a geometric scan where |f| has dropped to half
    // its value at the origin.
    double half = 0.0;
    double reference = f0;
    for (int k = 0; k <= 100; ++k) {
        const double s = 1e-8 * std::ldexp(1.0, k);
        const double v = std::abs(f(s));
        if (!std::isfinite(v)) throw DomainError("correlator is not finite");
        if (reference == 0.0) {
            reference = v;
            continue;
        }
        if (v <= 0.5 * reference) {
            half = s;
            break;
        }
    }
    if (reference == 0.0) return 0.0;
    if (half == 0.0) {
        throw DomainError("correlator does not decay: the stochastic limit needs correlations that vanish "
                          "beyond a short environmental time scale");
    }

    double W = opt.window_factor * half;
    for (int d = 0; d <= opt.max_window_doublings; ++d, W *= 2.0) {
        const double body = quad::integrate_gk(f, 0.0, W, opt.abs_tol * reference * half, opt.rel_tol).value;
        double tail = 0.0;
        constexpr int kProbe = 257;
        for (int i = 0; i < kProbe; ++i) {
            tail = std::max(tail, std::abs(f(W * (1.0 + double(i) / (kProbe - 1)))));
        }
        tail *= W;
        if (tail <= opt.tail_tol * std::max(std::abs(body), reference * half)) return 2.0 * body;
    }
    throw DomainError("correlator does not decay: the tail beyond the integration window stays above tolerance, "
                      "so the stochastic limit (correlations vanishing beyond a short time scale) does not apply");
}

StochasticParams stochastic_reduce(const LinePropagator& prop, const FrictionKernel& friction, double g,
                                   const ReduceOptions& opt) {
    const double g2 = g * g;
    StochasticParams sp;
    sp.sigma = g2 * even_line_integral(prop.G_I, opt);
    sp.lambda = g2 * even_line_integral([&](double s) { return friction(s); }, opt);
    sp.gamma0 = g2 * friction.at_zero();
    return sp;
}

namespace {

bool contour_earlier(const ContourPoint& a, const ContourPoint& b) {
    return theta_c(a, b) == 0.0;
}

} // namespace

Complex contour_moment(const Oscillator& osc, const std::vector<ContourPoint>& pts, double hbar) {
    if (!(osc.frequency > 0.0) || !(osc.mass > 0.0)) throw DomainError("oscillator needs m > 0 and omega > 0");
    const int n = static_cast<int>(pts.size());
    if (n == 0) return 1.0;
    for (const auto& p : pts) validate_point(p);

    std::vector<ContourPoint> ordered = pts;
    std::stable_sort(ordered.begin(), ordered.end(), contour_earlier);

    // n ladder steps from the vacuum never leave levels 0..n.
    const int dim = n + 1;
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
    for (int k = 1; k < dim; ++k) a(k - 1, k) = std::sqrt(double(k));
    const Eigen::MatrixXcd adag = a.adjoint();
    const double amp = std::sqrt(hbar / (2.0 * osc.mass * osc.frequency));
    const Complex I(0.0, 1.0);

    Eigen::VectorXcd state = Eigen::VectorXcd::Zero(dim);
    state(0) = 1.0;
    for (const auto& p : ordered) { // earliest acts first
        const Complex ph = std::exp(-I * osc.frequency * p.z);
        state = amp * (ph * (a * state) + (1.0 / ph) * (adag * state));
    }
    return state(0);
}

namespace {

// Visits every set partition of {0, ..., n-1} as a block-label vector.
template <class Visit>
void for_each_partition(int n, Visit&& visit) {
    std::vector<int> label(n, 0);
    std::function<void(int, int)> rec = [&](int i, int blocks) {
        if (i == n) {
            visit(label, blocks);
            return;
        }
        for (int b = 0; b <= blocks; ++b) {
            label[i] = b;
            rec(i + 1, std::max(blocks, b + 1));
        }
    };
    rec(0, 0);
}

} // namespace

Complex connected_correlator(const Oscillator& osc, const std::vector<ContourPoint>& pts, double hbar) {
    const int n = static_cast<int>(pts.size());
    if (n > 4) throw DomainError("cumulants are implemented up to fourth order");
    if (n == 0) return 0.0;
    Complex total{};
    for_each_partition(n, [&](const std::vector<int>& label, int blocks) {
        Complex prod = 1.0;
        for (int b = 0; b < blocks; ++b) {
            std::vector<ContourPoint> sub;
            for (int i = 0; i < n; ++i)
                if (label[i] == b) sub.push_back(pts[i]);
            prod *= contour_moment(osc, sub, hbar);
        }
        double fact = 1.0;
        for (int k = 2; k < blocks; ++k) fact *= k;
        total += ((blocks - 1) % 2 == 0 ? 1.0 : -1.0) * fact * prod;
    });
    return total;
}

Complex cumulant_gaussian(const Oscillator& osc, const std::vector<ContourPoint>& pts,
                          const std::vector<double>& x_values, double hbar) {
    if (pts.size() != x_values.size()) throw DomainError("one path value per contour point is required");
    if (pts.empty() || pts.size() > 4) throw DomainError("cumulant order must be between 1 and 4");
    Complex w = 1.0;
    for (std::size_t i = 0; i < pts.size(); ++i) w *= pts[i].g * x_values[i];
    if (w == 0.0) return 0.0;
    return w * connected_correlator(osc, pts, hbar);
}

double cluster_integral(const std::function<double(double, double)>& K, double t, const quad::Options& opt) {
    if (!(t > 0.0)) throw DomainError("integration horizon must be > 0");
    return quad::integrate_triangle(K, t, opt).value;
}

} // namespace cct
