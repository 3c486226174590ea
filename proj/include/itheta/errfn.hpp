#pragma once

// The error-function stack used by the closed-form surface integrals:
// the classical E1/M1 pair, the auxiliary e2 and tilde_e2, the two-variable
// E2 in flat coordinates, and its boosted version attached to a pair of
// timelike vectors.

#include "itheta/quadspace.hpp"

namespace itheta {

struct QuadratureSpec {
    double abs_tol = 1e-12;
    int max_subdivisions = 200;
};

// E1(u) = sgn(u) Erf(|u| sqrt(pi)) = 2u int_0^1 exp(-pi u^2 v^2) dv
double e1(double u);

// M1(u) = -sgn(u) Erfc(|u| sqrt(pi)); M1(0) = 0 by the sgn(0) = 0 convention.
double m1(double u);

// tilde_e2(a,b) = (2/pi) b e^{-pi b^2} int_0^a e^{-pi v^2} (b^2+v^2)^{-1} dv,
// odd in a and in b.  tilde_e2(a,0) is defined as 0; the function is
// discontinuous across b = 0 with one-sided limits +-sgn(a).
double tilde_e2(double a, double b, const QuadratureSpec& spec = {});

// e2(u1,u2) = 2 u2 int_0^1 e^{-pi t^2 u2^2} E1(t u1) dt
//           = (2/pi) Arctan(u1/u2) - tilde_e2(u1,u2)   for u2 != 0.
double e2(double u1, double u2, const QuadratureSpec& spec = {});

struct BoostArgs {
    double alpha, u1, u2, u1p, u2p;
    static BoostArgs make(double alpha, double u1, double u2);
};

// E2(alpha; u1,u2) = -tilde_e2(u1,u2) - tilde_e2(u1',u2') + sgn(u2) sgn(u2'),
// with u1' = (u2 - alpha u1)/sqrt(1+alpha^2), u2' = (u1 + alpha u2)/sqrt(1+alpha^2).
// The raw combination jumps across the walls u2 = 0 and u2' = 0, but the sum
// is the restriction of a smooth function; on a wall we return the average of
// the two directional limits (Richardson-extrapolated probes at +-1e-6).
double e2_flat(double alpha, double u1, double u2, const QuadratureSpec& spec = {});

// Boosted version for timelike C1, C2 spanning a negative 2-plane
// (Delta(C1,C2) > 0): E2 in flat coordinates with
//   alpha = -(C1,C2)/sqrt(Delta), u1 = (x, C_{1 perp 2}/||.||), u2 = (x, C2/||C2||).
// With this alpha the induced (u1',u2') are exactly the pairings of x against
// the unit C_{2 perp 1} and C1, which is the combination the boundary
// integrals produce.  The sign of alpha absorbs the sign flip of (C1,C2)
// between the two standard signature conventions.
double e2_boosted(const InnerProductSpace& V, const Vec& C1, const Vec& C2,
                  const Vec& x, const QuadratureSpec& spec = {});

}  // namespace itheta
