// contour.cpp: contour parametrization and ordering
#include "cct/contour.hpp"

#include <cmath>
#include <string>

#include "cct/errors.hpp"

namespace cct {

const char* to_string(ContourLine line) {
    switch (line) {
    case ContourLine::L1: return "L1";
    case ContourLine::L2: return "L2";
    case ContourLine::L3: return "L3";
    case ContourLine::L4: return "L4";
    }
    return "?";
}

Contour::Contour(double t, double coupling, double euclidean_cutoff, double omega_ref)
    : t_(t), g_(coupling), te_(euclidean_cutoff) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("contour horizon t must be finite and >= 0");
    if (te_ <= 0.0) {
        if (!(omega_ref > 0.0)) throw DomainError("reference frequency must be > 0");
        te_ = 50.0 / omega_ref;
    }
}

Complex Contour::tangent(ContourLine line) const {
    switch (line) {
    case ContourLine::L1: return {-t_, 0.0};
    case ContourLine::L2: return {0.0, -te_};
    case ContourLine::L3: return {0.0, -te_};
    case ContourLine::L4: return {t_, 0.0};
    }
    return {};
}

ContourPoint Contour::at(ContourLine line, double s) const {
    if (!(s >= 0.0 && s <= 1.0)) throw DomainError("contour parameter must lie in [0, 1]");
    ContourPoint p;
    p.line = line;
    p.s = s;
    switch (line) {
    case ContourLine::L1: p.z = {t_ * (1.0 - s), 0.0}; p.g = g_; break;
    case ContourLine::L2: p.z = {0.0, -te_ * s}; break;
    case ContourLine::L3: p.z = {0.0, te_ * (1.0 - s)}; break;
    case ContourLine::L4: p.z = {t_ * s, 0.0}; p.g = g_; break;
    }
    return p;
}

ContourPoint Contour::at_time(ContourLine line, double tau) const {
    if (line != ContourLine::L1 && line != ContourLine::L4) {
        throw DomainError("real-time points exist only on L1 and L4");
    }
    if (!(tau >= 0.0 && tau <= t_)) throw DomainError("real time outside [0, t]");
    if (t_ == 0.0) return at(line, 0.0);
    ContourPoint p = at(line, line == ContourLine::L4 ? tau / t_ : 1.0 - tau / t_);
    p.z = {tau, 0.0};
    return p;
}

void validate_point(const ContourPoint& p) {
    if (!(p.s >= 0.0 && p.s <= 1.0)) throw DomainError("contour point parameter outside [0, 1]");
    const double re = p.z.real();
    const double im = p.z.imag();
    if (!std::isfinite(re) || !std::isfinite(im)) throw DomainError("contour point is not finite");
    bool ok = false;
    switch (p.line) {
    case ContourLine::L1:
    case ContourLine::L4: ok = im == 0.0 && re >= 0.0; break;
    case ContourLine::L2: ok = re == 0.0 && im <= 0.0 && p.g == 0.0; break;
    case ContourLine::L3: ok = re == 0.0 && im >= 0.0 && p.g == 0.0; break;
    }
    if (!ok) {
        throw DomainError(std::string("point does not lie on contour line ") + to_string(p.line));
    }
}

namespace {
int rank(ContourLine line) {
    switch (line) {
    case ContourLine::L3: return 0;
    case ContourLine::L4: return 1;
    case ContourLine::L1: return 2;
    case ContourLine::L2: return 3;
    }
    return -1;
}
} // namespace

double theta_c(const ContourPoint& a, const ContourPoint& b) {
    validate_point(a);
    validate_point(b);
    const int ra = rank(a.line);
    const int rb = rank(b.line);
    if (ra != rb) return ra > rb ? 1.0 : 0.0;
    return a.s >= b.s ? 1.0 : 0.0;
}

Complex contour_abs(const ContourPoint& a, const ContourPoint& b) {
    const double sign = theta_c(a, b) - theta_c(b, a);
    return (a.z - b.z) * sign;
}

} // namespace cct
