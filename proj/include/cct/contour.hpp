// contour.hpp: the four-line closed complex-time contour
#pragma once

#include <array>
#include <complex>

namespace cct {

using Complex = std::complex<double>;

// Lines in traversal order of the closed contour:
//   L1: t -> 0 just below the real axis, L2: 0 -> -i T_E,
//   L3: +i T_E -> 0,                     L4: 0 -> t just above the real axis.
// The ±i0 offsets of L1/L4 live in the line id; z is exactly real there.
enum class ContourLine { L1, L2, L3, L4 };

inline constexpr std::array<ContourLine, 4> kAllLines{ContourLine::L1, ContourLine::L2,
                                                       ContourLine::L3, ContourLine::L4};

const char* to_string(ContourLine line);

struct ContourPoint {
    ContourLine line = ContourLine::L4;
    double s = 0.0;  // position along the line in its traversal direction, in [0, 1]
    Complex z{};     // complex time
    double g = 0.0;  // contour coupling: g_sys on L1/L4, zero on L2/L3
};

class Contour {
public:
    // `euclidean_cutoff` is T_E; a non-positive value selects 50/omega_ref.
    Contour(double t, double coupling, double euclidean_cutoff = 0.0, double omega_ref = 1.0);

    double horizon() const { return t_; }
    double coupling() const { return g_; }
    double euclidean_cutoff() const { return te_; }

    ContourPoint at(ContourLine line, double s) const;
    // Point on L1 or L4 at real time tau in [0, t].
    ContourPoint at_time(ContourLine line, double tau) const;
    // dz/ds along a line.
    Complex tangent(ContourLine line) const;

private:
    double t_;
    double g_;
    double te_;
};

// Contour step function. The contour order used is
//   L3 < L4 < L1 < L2,
// and within a line a point is later when it is further along the line's
// traversal direction. On L1 this makes the smaller real time the later
// point, which is what keeps the second-order action trace preserving.
// Coincident points return 1.
double theta_c(const ContourPoint& a, const ContourPoint& b);

// (z_a - z_b)[theta_c(a,b) - theta_c(b,a)]
Complex contour_abs(const ContourPoint& a, const ContourPoint& b);

// Throws DomainError if the point cannot lie on any contour.
void validate_point(const ContourPoint& p);

} // namespace cct
