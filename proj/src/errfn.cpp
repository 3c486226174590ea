#include "itheta/errfn.hpp"

#include <cmath>

#include "itheta/quadrature.hpp"

namespace itheta {

double e1(double u) { return sgn(u) * std::erf(std::fabs(u) * std::sqrt(M_PI)); }

double m1(double u) { return -sgn(u) * std::erfc(std::fabs(u) * std::sqrt(M_PI)); }

double tilde_e2(double a, double b, const QuadratureSpec& spec) {
    if (a == 0.0 || b == 0.0) return 0.0;
    double sa = sgn(a), sb = sgn(b);
    a = std::fabs(a);
    b = std::fabs(b);
    double pref = (2.0 / M_PI) * b * std::exp(-M_PI * b * b);
    if (pref == 0.0) return 0.0;
    // e^{-pi v^2} < 1e-60 beyond v = 6.6; the truncated tail is far below
    // any representable contribution after the prefactor.
    double top = std::min(a, 6.6);
    auto f = [b](double v) { return std::exp(-M_PI * v * v) / (b * b + v * v); };
    // The product tolerance divides out the prefactor, but never beyond an
    // O(1) absolute target for the integral itself: with an unbounded
    // inflation a single unresolved cell around the 1/(b^2+v^2) spike can
    // satisfy the inflated tolerance while being wrong by many orders.
    double tol = spec.abs_tol / std::max(pref, spec.abs_tol);
    AdaptiveResult r = integrate_gk15(f, 0.0, top, tol, spec.max_subdivisions);
    if (!r.converged)
        throw accuracy_error("tilde_e2: subdivision budget exhausted",
                             sa * sb * pref * r.value, pref * r.error_estimate);
    return sa * sb * pref * r.value;
}

double e2(double u1, double u2, const QuadratureSpec& spec) {
    if (u2 == 0.0) return 0.0;  // the defining integral carries a factor u2
    return (2.0 / M_PI) * std::atan(u1 / u2) - tilde_e2(u1, u2, spec);
}

BoostArgs BoostArgs::make(double alpha, double u1, double u2) {
    double s = std::sqrt(1.0 + alpha * alpha);
    return {alpha, u1, u2, (u2 - alpha * u1) / s, (u1 + alpha * u2) / s};
}

namespace {

double e2_flat_raw(const BoostArgs& ba, const QuadratureSpec& spec) {
    return -tilde_e2(ba.u1, ba.u2, spec) - tilde_e2(ba.u1p, ba.u2p, spec) +
           sgn(ba.u2) * sgn(ba.u2p);
}

}  // namespace

double e2_flat(double alpha, double u1, double u2, const QuadratureSpec& spec) {
    BoostArgs ba = BoostArgs::make(alpha, u1, u2);
    double scale = std::max({1.0, std::fabs(u1), std::fabs(u2)});
    double wall = 1e-8 * scale;
    if (std::fabs(ba.u2) > wall && std::fabs(ba.u2p) > wall)
        return e2_flat_raw(ba, spec);

    // On a wall: probe along a direction transverse to both wall lines
    // u2 = 0 and u1 + alpha u2 = 0 and average the two sides.  The smooth
    // function differs from each one-sided probe by O(eps); averaging
    // cancels the odd orders and one Richardson level removes eps^2.
    double d1 = M_SQRT1_2, d2 = (alpha >= 0.0 ? M_SQRT1_2 : -M_SQRT1_2);
    double eps = 1e-6 * scale;
    auto avg = [&](double e) {
        BoostArgs p = BoostArgs::make(alpha, u1 + e * d1, u2 + e * d2);
        BoostArgs q = BoostArgs::make(alpha, u1 - e * d1, u2 - e * d2);
        return 0.5 * (e2_flat_raw(p, spec) + e2_flat_raw(q, spec));
    };
    double a1 = avg(eps), a2 = avg(2.0 * eps);
    return (4.0 * a1 - a2) / 3.0;
}

double e2_boosted(const InnerProductSpace& V, const Vec& C1, const Vec& C2,
                  const Vec& x, const QuadratureSpec& spec) {
    double c11 = V.inner(C1, C1), c22 = V.inner(C2, C2);
    if (c11 == 0.0 || c22 == 0.0)
        throw input_error("e2_boosted: null input vector");
    if (c11 > 0.0 || c22 > 0.0)
        throw incidence_error("e2_boosted: C1, C2 must be timelike");
    double c12 = V.inner(C1, C2);
    double d = c11 * c22 - c12 * c12;
    if (d <= 0.0)
        throw incidence_error("e2_boosted: Delta(C1,C2) must be positive");
    double alpha = -c12 / std::sqrt(d);
    Vec c1p2 = normalize(V, perp_component(V, C1, C2));
    double u1 = V.inner(x, c1p2);
    double u2 = V.inner(x, normalize(V, C2));
    return e2_flat(alpha, u1, u2, spec);
}

}  // namespace itheta
