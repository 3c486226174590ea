#pragma once

// Oriented negative 2-planes, orthonormal frames, the Schwartz 2-form and
// its primitive 1-form, incidence-validated frame configurations, the
// spanning surface with its boundary geodesics, and the sign products
// attached to a vector.

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "itheta/quadspace.hpp"

namespace itheta {

struct OrientedFrame {
    Vec z1, z2;  // ordered orthonormal pair, (z_i, z_j) = -delta_ij
};

// [b1,b2] P^{-1/2} with P = -Gram(b1,b2); throws degenerate_error when the
// pair does not span a negative 2-plane (P not positive definite).
OrientedFrame orthonormal_frame(const InnerProductSpace& V, const Vec& b1,
                                const Vec& b2);

// R(x,z) = (x,z1)^2 + (x,z2)^2, minus the self-pairing of the projection
// of x to the plane.
double r_quantity(const InnerProductSpace& V, const Vec& x, const OrientedFrame& z);

// (x,x)_z = (x,x) + 2 R(x,z); positive definite in x for fixed z.
double majorant(const InnerProductSpace& V, const Vec& x, const OrientedFrame& z);

struct TangentPair {
    Vec eta1, eta2;  // horizontal representative of the first tangent
    Vec mu1, mu2;    // ... and of the second
};

// Value of the Schwartz 2-form at x on the tangent pair:
//   2 ( (x,eta1)(x,mu2) - (x,eta2)(x,mu1) - Omega/4pi ) e^{-2 pi R},
// Omega = (eta1,mu2) - (eta2,mu1).  The tangent components must lie in the
// orthogonal complement of the plane.
double phi_km_o(const InnerProductSpace& V, const Vec& x, const OrientedFrame& z,
                const TangentPair& tp);

// The primitive 1-form evaluated on a lifted tangent [eta1,eta2].  No
// horizontal projection is applied; the pullback vanishes on the vertical
// component.  Throws singular_locus_error when R(x,z) < 1e-12.
double psi_o(const InnerProductSpace& V, const Vec& x, const OrientedFrame& z,
             const Vec& eta1, const Vec& eta2);

struct IncidenceReport {
    std::array<double, 4> deltas{};       // D_12, D_1'2, D_12', D_1'2'
    std::array<double, 4> projections{};  // the four perp pairings
    double delta4 = 0.0;                  // 4x4 Gram determinant
    bool all_timelike = false;
    bool same_component = false;
    bool pass = false;
};

IncidenceReport validate_incidence(const InnerProductSpace& V, const Vec& C1,
                                   const Vec& C2, const Vec& C1p, const Vec& C2p);

struct FrameConfig {
    InnerProductSpace V;
    Vec C1, C2, C1p, C2p;
    IncidenceReport validation;

    FrameConfig(InnerProductSpace space, Vec c1, Vec c2, Vec c1p, Vec c2p);

    // As above but throws incidence_error unless every condition holds.
    static FrameConfig checked(const InnerProductSpace& space, const Vec& c1,
                               const Vec& c2, const Vec& c1p, const Vec& c2p);

    bool regular(const Vec& x) const;  // all four pairings away from zero
};

// The parametrized surface span{B1(s), B2(t)} with B1(s) = (1-s)C1 + s C1',
// B2(t) = (1-t)C2 + t C2'.  Construction verifies that P(s,t) = -(B,B) is
// positive definite on a 17x17 grid.
class SurfaceChart {
  public:
    explicit SurfaceChart(FrameConfig config);

    const FrameConfig& config() const { return cfg_; }
    const InnerProductSpace& space() const { return cfg_.V; }

    Vec B1(double s) const { return vec_lerp(cfg_.C1, cfg_.C1p, s); }
    Vec B2(double t) const { return vec_lerp(cfg_.C2, cfg_.C2p, t); }

    OrientedFrame point(double s, double t) const;

    // Orthonormal lift and its raw s/t-derivatives (analytic, unprojected).
    void lift(double s, double t, OrientedFrame& z, Vec& ds1, Vec& ds2, Vec& dt1,
              Vec& dt2) const;

    // Horizontal tangent frames (raw derivatives projected to z^perp).
    TangentPair tangents(double s, double t) const;

  private:
    FrameConfig cfg_;
};

// int_S phi^o(x), adaptive tensor quadrature over the chart.  The surface
// is oriented so that its boundary is gamma_1 + gamma_2' - gamma_1' - gamma_2,
// matching boundary_integral_psi below.
double surface_integral_phi(const Vec& x, const SurfaceChart& chart,
                            double abs_tol = 1e-9, int cap = 4096);

// Sum of the four boundary line integrals of psi with signs
// gamma_1 + gamma_2' - gamma_1' - gamma_2, each along its orthonormal lift.
// Throws singular_locus_error if the singular locus meets the boundary.
double boundary_integral_psi(const Vec& x, const SurfaceChart& chart,
                             double abs_tol = 1e-11, int cap = 2000);

// The four boundary geodesics in lift form: a fixed unit vector plus a
// varying perp segment, with the sign carried in the boundary orientation
// gamma_1 + gamma_2' - gamma_1' - gamma_2.  fixed_first records whether the
// fixed vector is the first frame component (it is for gamma_1, gamma_1',
// flipping the sign of the psi numerator on the other two sides).
struct BoundarySide {
    Vec fixed_unit;
    Vec from, to;
    bool fixed_first;
    double sign;
};
std::array<BoundarySide, 4> boundary_sides(const FrameConfig& cfg);

// d/dt of B(t)/||B(t)|| for timelike B(t) with constant derivative bdot.
Vec unit_derivative(const InnerProductSpace& V, const Vec& B, const Vec& Bdot);

// The unique chart point orthogonal to x, when one exists in [0,1]^2.
std::optional<std::pair<double, double>> intersection_point(const Vec& x,
                                                            const FrameConfig& cfg);

// (1/4)[sgn(x,C1)-sgn(x,C1')][sgn(x,C2)-sgn(x,C2')], sgn(0) = 0.
double phi2(const Vec& x, const FrameConfig& cfg);

// sgn((x,C1')-(x,C1)) sgn((x,C2')-(x,C2)) for regular x with phi2 != 0;
// equals the local intersection number of the surface with the locus of
// planes orthogonal to x.
int intersection_number(const Vec& x, const FrameConfig& cfg);

// 2^{-r} prod_j [sgn(x,C_j) - sgn(x,C_j')]
double phi_r(const InnerProductSpace& V, const Vec& x,
             const std::vector<std::pair<Vec, Vec>>& pairs);

// True when the two oriented frames span planes on the same component of
// the space of oriented negative 2-planes (pairing-matrix determinant > 0).
bool same_component(const InnerProductSpace& V, const OrientedFrame& f1,
                    const OrientedFrame& f2);

}  // namespace itheta
