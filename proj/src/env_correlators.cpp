// env_correlators.cpp: oscillator-bath correlators and their symmetry checks
#include "cct/env_correlators.hpp"

#include <algorithm>
#include <cmath>



#include "cct/errors.hpp"
#include "cct/quadrature.hpp"

namespace cct {

OscillatorBath::OscillatorBath(std::vector<Oscillator> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw DomainError("oscillator bath must not be empty");
    for (const auto& e : entries_) {
        if (!(e.frequency > 0.0) || !std::isfinite(e.frequency)) {
            throw DomainError("bath oscillator frequency must be > 0");
        }
        if (!(e.mass > 0.0) || !std::isfinite(e.mass)) throw DomainError("bath oscillator mass must be > 0");
        if (!std::isfinite(e.coupling)) throw DomainError("bath coupling must be finite");
    }
}

double OscillatorBath::centered_friction_offset() const {
    double s = 0.0;
    for (const auto& e : entries_) s += e.coupling * e.coupling / (2.0 * e.mass * e.frequency * e.frequency);
    return s;
}

OscillatorBath OscillatorBath::from_json(const nlohmann::json& j, const std::string& path) {
    if (!j.is_array()) throw ConfigError(path, "expected an array of {g, m, omega} records");
    if (j.empty()) throw ConfigError(path, "must contain at least one oscillator");
    std::vector<Oscillator> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto& rec = j[i];
        const std::string here = path + "[" + std::to_string(i) + "]";
        if (!rec.is_object()) throw ConfigError(here, "expected an object");
        for (const auto& kv : rec.items()) {
            if (kv.key() != "g" && kv.key() != "m" && kv.key() != "omega")
                throw ConfigError(here + "." + kv.key(), "unknown field");
        }
        auto field = [&](const char* key) {
            if (!rec.contains(key)) throw ConfigError(here + "." + key, "missing");
            if (!rec[key].is_number()) throw ConfigError(here + "." + key, "must be a number");
            return rec[key].get<double>();
        };
        Oscillator o{field("g"), field("m"), field("omega")};
        if (!(o.mass > 0.0)) throw ConfigError(here + ".m", "must be > 0");
        if (!(o.frequency > 0.0)) throw ConfigError(here + ".omega", "must be > 0");
        out.push_back(o);
    }
    return OscillatorBath(std::move(out));
}

LinePropagator line_propagators(const OscillatorBath& bath) {
    std::vector<std::pair<double, double>> amp; // (g^2 / 2 m omega, omega)
    amp.reserve(bath.size());
    for (const auto& e : bath.entries()) {
        amp.emplace_back(e.coupling * e.coupling / (2.0 * e.mass * e.frequency), e.frequency);
    }
    LinePropagator p;
    p.G_R = [amp](double t) {
        double s = 0.0;
        for (const auto& [c, w] : amp) s -= c * std::sin(w * t);
        return s;
    };
    p.G_I = [amp](double t) {
        double s = 0.0;
        for (const auto& [c, w] : amp) s += c * std::cos(w * t);
        return s;
    };
    return p;
}

namespace {
void require_frequency(const Oscillator& osc) {
    if (osc.frequency == 0.0) throw DomainError("zero-frequency oscillator: propagator is infrared divergent");
    if (!(osc.frequency > 0.0) || !(osc.mass > 0.0)) throw DomainError("oscillator needs m > 0 and omega > 0");
}
} // namespace

Complex contour_green(const Oscillator& osc, const ContourPoint& a, const ContourPoint& b) {
    require_frequency(osc);
    const Complex I(0.0, 1.0);
    const Complex d = contour_abs(a, b);
    return -I / (2.0 * osc.mass * osc.frequency) * std::exp(-I * osc.frequency * d);
}

Complex contour_green_finite(const Oscillator& osc, const ContourPoint& a, const ContourPoint& b,
                             double euclidean_cutoff) {
    require_frequency(osc);
    if (!(euclidean_cutoff > 0.0)) throw DomainError("Euclidean cutoff must be > 0");
    const Complex half_period(0.0, -euclidean_cutoff); // T~/2
    const Complex d = contour_abs(a, b);
    const double w = osc.frequency;
    return -std::cos(w * (d - half_period)) / (2.0 * osc.mass * w * std::sin(w * half_period));
}

double friction_from_GR(const std::function<double(double)>& G_R, double t, double gamma0, double abs_tol,
                        double rel_tol) {
    const double u = std::abs(t);
    if (u == 0.0) return gamma0;
    return gamma0 + quad::integrate_gk(G_R, 0.0, u, abs_tol, rel_tol).value;
}

FrictionKernel FrictionKernel::from_bath(const OscillatorBath& bath, double gamma0) {
    std::vector<std::pair<double, double>> amp; // (g^2 / 2 m omega^2, omega)
    for (const auto& e : bath.entries()) {
        amp.emplace_back(e.coupling * e.coupling / (2.0 * e.mass * e.frequency * e.frequency), e.frequency);
    }
    return FrictionKernel([amp, gamma0](double t) {
        double s = gamma0;
        for (const auto& [c, w] : amp) s -= c * (1.0 - std::cos(w * t));
        return s;
    });
}

FrictionKernel FrictionKernel::from_propagator(std::function<double(double)> G_R, double gamma0,
                                               double abs_tol, double rel_tol) {
    return FrictionKernel([G_R = std::move(G_R), gamma0, abs_tol, rel_tol](double t) {
        return friction_from_GR(G_R, t, gamma0, abs_tol, rel_tol);
    });
}

FrictionKernel FrictionKernel::from_function(std::function<double(double)> gamma) {
    return FrictionKernel(std::move(gamma));
}

std::vector<SymmetryViolation> check_symmetries(const LinePropagator& prop, const std::vector<double>& samples) {
    std::vector<SymmetryViolation> report;
    if (samples.empty()) return report;

    const Complex I(0.0, 1.0);
    auto L1 = [&](double s) { return prop.G_R(s) + I * prop.G_I(s); };
    auto L4 = [&](double s) { return prop.G_R(-s) + I * prop.G_I(-s); };
    auto L4toL1 = [&](double s) { return prop.G_R(-s) - I * prop.G_I(-s); };
    auto L1toL4 = [&](double s) { return -prop.G_R(s) - I * prop.G_I(s); };

    double anti = 0.0, reversal = 0.0, exchange = 0.0, odd = 0.0, even = 0.0;
    for (double s : samples) {
        anti = std::max(anti, std::abs(std::conj(L1(-s)) + L1(s)));
        reversal = std::max(reversal, std::abs(L4(s) + std::conj(L1(s))));
        exchange = std::max(exchange, std::abs(L1toL4(s) + std::conj(L4toL1(-s))));
        odd = std::max(odd, std::abs(prop.G_R(s) + prop.G_R(-s)));
        even = std::max(even, std::abs(prop.G_I(s) - prop.G_I(-s)));
    }
    report.push_back({"anti_hermiticity", anti});
    report.push_back({"exchange", exchange});
    report.push_back({"line_reversal", reversal});
    report.push_back({"parity_G_I", even});
    report.push_back({"parity_G_R", odd});
    return report;
}

} // namespace cct
