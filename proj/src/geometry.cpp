#include "itheta/geometry.hpp"

#include <cmath>

#include "itheta/quadrature.hpp"

namespace itheta {

namespace {

double eunorm(const Vec& v) {
    double s = 0.0;
    for (double c : v) s += c * c;
    return std::sqrt(s);
}

struct Mat2 {
    double m00 = 0, m01 = 0, m11 = 0;  // symmetric
};

// P^{-1/2} for positive definite 2x2 P, in closed form:
//   sqrt(P) = (P + sqrt(det) I) / sqrt(tr + 2 sqrt(det))
//   P^{-1/2} = ((tr + sqrt(det)) I - P) / (sqrt(det) sqrt(tr + 2 sqrt(det)))
Mat2 inv_sqrt_2x2(const Mat2& P) {
    double t = P.m00 + P.m11;
    double d = P.m00 * P.m11 - P.m01 * P.m01;
    double sd = std::sqrt(d);
    double s = std::sqrt(t + 2.0 * sd);
    double den = sd * s;
    Mat2 q;
    q.m00 = (t + sd - P.m00) / den;
    q.m01 = (-P.m01) / den;
    q.m11 = (t + sd - P.m11) / den;
    return q;
}

// Directional derivative of P^{-1/2} along dP, by differentiating the
// closed form above.
Mat2 d_inv_sqrt_2x2(const Mat2& P, const Mat2& dP) {
    double t = P.m00 + P.m11;
    double d = P.m00 * P.m11 - P.m01 * P.m01;
    double sd = std::sqrt(d);
    double s = std::sqrt(t + 2.0 * sd);
    double td = dP.m00 + dP.m11;
    double dd = dP.m00 * P.m11 + P.m00 * dP.m11 - 2.0 * P.m01 * dP.m01;
    double sdd = dd / (2.0 * sd);
    double sdot = (td + 2.0 * sdd) / (2.0 * s);
    double den = sd * s;
    double dden = sdd * s + sd * sdot;
    auto entry = [&](double num, double dnum) {
        return dnum / den - num * dden / (den * den);
    };
    Mat2 dq;
    dq.m00 = entry(t + sd - P.m00, td + sdd - dP.m00);
    dq.m01 = entry(-P.m01, -dP.m01);
    dq.m11 = entry(t + sd - P.m11, td + sdd - dP.m11);
    return dq;
}

Mat2 neg_gram(const InnerProductSpace& V, const Vec& b1, const Vec& b2) {
    Mat2 p;
    p.m00 = -V.inner(b1, b1);
    p.m01 = -V.inner(b1, b2);
    p.m11 = -V.inner(b2, b2);
    return p;
}

bool spd(const Mat2& p) {
    return p.m00 > 0.0 && p.m00 * p.m11 - p.m01 * p.m01 > 0.0;
}

}  // namespace

Vec unit_derivative(const InnerProductSpace& V, const Vec& B, const Vec& Bdot) {
    double nb = std::sqrt(-V.inner(B, B));
    Vec r = vec_scale(1.0 / nb, Bdot);
    vec_axpy(V.inner(B, Bdot) / (nb * nb * nb), B, r);
    return r;
}

OrientedFrame orthonormal_frame(const InnerProductSpace& V, const Vec& b1,
                                const Vec& b2) {
    Mat2 p = neg_gram(V, b1, b2);
    if (!spd(p))
        throw degenerate_error("orthonormal_frame: span is not a negative 2-plane");
    Mat2 q = inv_sqrt_2x2(p);
    OrientedFrame f;
    f.z1 = vec_scale(q.m00, b1);
    vec_axpy(q.m01, b2, f.z1);
    f.z2 = vec_scale(q.m01, b1);
    vec_axpy(q.m11, b2, f.z2);
    return f;
}

double r_quantity(const InnerProductSpace& V, const Vec& x, const OrientedFrame& z) {
    double a = V.inner(x, z.z1), b = V.inner(x, z.z2);
    return a * a + b * b;
}

double majorant(const InnerProductSpace& V, const Vec& x, const OrientedFrame& z) {
    return V.inner(x, x) + 2.0 * r_quantity(V, x, z);
}

double phi_km_o(const InnerProductSpace& V, const Vec& x, const OrientedFrame& z,
                const TangentPair& tp) {
    double scale = 1.0 + eunorm(z.z1) + eunorm(z.z2);
    for (const Vec* w : {&tp.eta1, &tp.eta2, &tp.mu1, &tp.mu2}) {
        double wn = eunorm(*w);
        if (std::fabs(V.inner(*w, z.z1)) > 1e-8 * scale * (1.0 + wn) ||
            std::fabs(V.inner(*w, z.z2)) > 1e-8 * scale * (1.0 + wn))
            throw input_error("phi_km_o: tangent components must be orthogonal to the plane");
    }
    double om = V.inner(x, tp.eta1) * V.inner(x, tp.mu2) -
                V.inner(x, tp.eta2) * V.inner(x, tp.mu1);
    double Om = V.inner(tp.eta1, tp.mu2) - V.inner(tp.eta2, tp.mu1);
    double R = r_quantity(V, x, z);
    return 2.0 * (om - Om / (4.0 * M_PI)) * std::exp(-2.0 * M_PI * R);
}

double psi_o(const InnerProductSpace& V, const Vec& x, const OrientedFrame& z,
             const Vec& eta1, const Vec& eta2) {
    double R = r_quantity(V, x, z);
    if (R < 1e-12)
        throw singular_locus_error("psi_o: evaluation on the singular locus");
    double num = V.inner(x, z.z1) * V.inner(x, eta2) -
                 V.inner(x, z.z2) * V.inner(x, eta1);
    double conn = V.inner(z.z2, eta1);
    return -(1.0 / (2.0 * M_PI)) * std::exp(-2.0 * M_PI * R) * (num / R - conn);
}

IncidenceReport validate_incidence(const InnerProductSpace& V, const Vec& C1,
                                   const Vec& C2, const Vec& C1p, const Vec& C2p) {
    IncidenceReport rep;
    double n1 = V.inner(C1, C1), n2 = V.inner(C2, C2);
    double n1p = V.inner(C1p, C1p), n2p = V.inner(C2p, C2p);
    rep.all_timelike = n1 < 0 && n2 < 0 && n1p < 0 && n2p < 0;

    rep.deltas[0] = delta(V, C1, C2).value;
    rep.deltas[1] = delta(V, C1p, C2).value;
    rep.deltas[2] = delta(V, C1, C2p).value;
    rep.deltas[3] = delta(V, C1p, C2p).value;

    bool proj_ok = false;
    if (n1 != 0 && n2 != 0 && n1p != 0 && n2p != 0) {
        rep.projections[0] =
            V.inner(perp_component(V, C2, C1), perp_component(V, C2p, C1));
        rep.projections[1] =
            V.inner(perp_component(V, C2, C1p), perp_component(V, C2p, C1p));
        rep.projections[2] =
            V.inner(perp_component(V, C1, C2), perp_component(V, C1p, C2));
        rep.projections[3] =
            V.inner(perp_component(V, C1, C2p), perp_component(V, C1p, C2p));
        proj_ok = rep.projections[0] < 0 && rep.projections[1] < 0 &&
                  rep.projections[2] < 0 && rep.projections[3] < 0;
    }

    rep.delta4 = delta_gram(V, {C1, C1p, C2, C2p});

    bool deltas_ok = rep.deltas[0] > 0 && rep.deltas[1] > 0 && rep.deltas[2] > 0 &&
                     rep.deltas[3] > 0;
    rep.same_component = false;
    if (rep.all_timelike && deltas_ok) {
        try {
            OrientedFrame corner[4] = {
                orthonormal_frame(V, C1, C2), orthonormal_frame(V, C1p, C2),
                orthonormal_frame(V, C1, C2p), orthonormal_frame(V, C1p, C2p)};
            rep.same_component = true;
            for (int i = 0; i < 4 && rep.same_component; ++i)
                for (int j = i + 1; j < 4 && rep.same_component; ++j)
                    if (!same_component(V, corner[i], corner[j]))
                        rep.same_component = false;
        } catch (const degenerate_error&) {
            rep.same_component = false;
        }
    }

    rep.pass = rep.all_timelike && deltas_ok && proj_ok && rep.delta4 > 0 &&
               rep.same_component;
    return rep;
}

FrameConfig::FrameConfig(InnerProductSpace space, Vec c1, Vec c2, Vec c1p, Vec c2p)
    : V(std::move(space)),
      C1(std::move(c1)),
      C2(std::move(c2)),
      C1p(std::move(c1p)),
      C2p(std::move(c2p)) {
    V.require_dim(C1);
    V.require_dim(C2);
    V.require_dim(C1p);
    V.require_dim(C2p);
    validation = validate_incidence(V, C1, C2, C1p, C2p);
}

FrameConfig FrameConfig::checked(const InnerProductSpace& space, const Vec& c1,
                                 const Vec& c2, const Vec& c1p, const Vec& c2p) {
    FrameConfig cfg(space, c1, c2, c1p, c2p);
    if (!cfg.validation.pass)
        throw incidence_error("frame configuration fails the incidence conditions");
    return cfg;
}

bool FrameConfig::regular(const Vec& x) const {
    double cmax = std::max(std::max(eunorm(C1), eunorm(C2)),
                           std::max(eunorm(C1p), eunorm(C2p)));
    double thr = 1e-9 * eunorm(x) * cmax;
    for (const Vec* c : {&C1, &C2, &C1p, &C2p})
        if (std::fabs(V.inner(x, *c)) <= thr) return false;
    return true;
}

SurfaceChart::SurfaceChart(FrameConfig config) : cfg_(std::move(config)) {
    for (int i = 0; i <= 16; ++i)
        for (int j = 0; j <= 16; ++j)
            if (!spd(neg_gram(cfg_.V, B1(i / 16.0), B2(j / 16.0))))
                throw degenerate_error("surface chart leaves the space of negative 2-planes");
}

OrientedFrame SurfaceChart::point(double s, double t) const {
    return orthonormal_frame(cfg_.V, B1(s), B2(t));
}

void SurfaceChart::lift(double s, double t, OrientedFrame& z, Vec& ds1, Vec& ds2,
                        Vec& dt1, Vec& dt2) const {
    const InnerProductSpace& V = cfg_.V;
    Vec b1 = B1(s), b2 = B2(t);
    Vec b1d = vec_sub(cfg_.C1p, cfg_.C1);
    Vec b2d = vec_sub(cfg_.C2p, cfg_.C2);

    Mat2 p = neg_gram(V, b1, b2);
    if (!spd(p)) throw degenerate_error("surface chart leaves the space of negative 2-planes");
    Mat2 q = inv_sqrt_2x2(p);

    Mat2 dps;  // d/ds of P; B2 does not depend on s
    dps.m00 = -2.0 * V.inner(b1d, b1);
    dps.m01 = -V.inner(b1d, b2);
    dps.m11 = 0.0;
    Mat2 dpt;
    dpt.m00 = 0.0;
    dpt.m01 = -V.inner(b1, b2d);
    dpt.m11 = -2.0 * V.inner(b2d, b2);
    Mat2 dqs = d_inv_sqrt_2x2(p, dps);
    Mat2 dqt = d_inv_sqrt_2x2(p, dpt);

    z.z1 = vec_scale(q.m00, b1);
    vec_axpy(q.m01, b2, z.z1);
    z.z2 = vec_scale(q.m01, b1);
    vec_axpy(q.m11, b2, z.z2);

    ds1 = vec_scale(q.m00, b1d);
    vec_axpy(dqs.m00, b1, ds1);
    vec_axpy(dqs.m01, b2, ds1);
    ds2 = vec_scale(q.m01, b1d);
    vec_axpy(dqs.m01, b1, ds2);
    vec_axpy(dqs.m11, b2, ds2);

    dt1 = vec_scale(q.m01, b2d);
    vec_axpy(dqt.m00, b1, dt1);
    vec_axpy(dqt.m01, b2, dt1);
    dt2 = vec_scale(q.m11, b2d);
    vec_axpy(dqt.m01, b1, dt2);
    vec_axpy(dqt.m11, b2, dt2);
}

TangentPair SurfaceChart::tangents(double s, double t) const {
    OrientedFrame z;
    TangentPair tp;
    lift(s, t, z, tp.eta1, tp.eta2, tp.mu1, tp.mu2);
    const InnerProductSpace& V = cfg_.V;
    auto project = [&](Vec& w) {
        vec_axpy(V.inner(z.z1, w), z.z1, w);
        vec_axpy(V.inner(z.z2, w), z.z2, w);
    };
    project(tp.eta1);
    project(tp.eta2);
    project(tp.mu1);
    project(tp.mu2);
    return tp;
}

double surface_integral_phi(const Vec& x, const SurfaceChart& chart, double abs_tol,
                            int cap) {
    const InnerProductSpace& V = chart.space();
    auto f = [&](double s, double t) {
        OrientedFrame z;
        TangentPair tp;
        chart.lift(s, t, z, tp.eta1, tp.eta2, tp.mu1, tp.mu2);
        auto project = [&](Vec& w) {
            vec_axpy(V.inner(z.z1, w), z.z1, w);
            vec_axpy(V.inner(z.z2, w), z.z2, w);
        };
        project(tp.eta1);
        project(tp.eta2);
        project(tp.mu1);
        project(tp.mu2);
        double om = V.inner(x, tp.eta1) * V.inner(x, tp.mu2) -
                    V.inner(x, tp.eta2) * V.inner(x, tp.mu1);
        double Om = V.inner(tp.eta1, tp.mu2) - V.inner(tp.eta2, tp.mu1);
        double R = r_quantity(V, x, z);
        // The cycle orientation whose boundary is gamma_1 + gamma_2' -
        // gamma_1' - gamma_2 is (t,s), so the form is evaluated on
        // (d/dt, d/ds): minus the (d/ds, d/dt) value.
        return -2.0 * (om - Om / (4.0 * M_PI)) * std::exp(-2.0 * M_PI * R);
    };
    AdaptiveResult r = integrate_2d(f, abs_tol, cap);
    if (!r.converged)
        throw accuracy_error("surface integral: cell budget exhausted", r.value,
                             r.error_estimate);
    return r.value;
}

std::array<BoundarySide, 4> boundary_sides(const FrameConfig& c) {
    const InnerProductSpace& V = c.V;
    auto u = [&](const Vec& v) { return normalize(V, v); };
    auto pc = [&](const Vec& a, const Vec& b) { return perp_component(V, a, b); };
    return {{
        {u(c.C1), pc(c.C2, c.C1), pc(c.C2p, c.C1), true, +1.0},     // gamma_1
        {u(c.C2p), pc(c.C1, c.C2p), pc(c.C1p, c.C2p), false, +1.0},  // gamma_2'
        {u(c.C1p), pc(c.C2, c.C1p), pc(c.C2p, c.C1p), true, -1.0},   // gamma_1'
        {u(c.C2), pc(c.C1, c.C2), pc(c.C1p, c.C2), false, -1.0},     // gamma_2
    }};
}

double boundary_integral_psi(const Vec& x, const SurfaceChart& chart, double abs_tol,
                             int cap) {
    const InnerProductSpace& V = chart.space();
    auto sides = boundary_sides(chart.config());

    double total = 0.0;
    for (const BoundarySide& side : sides) {
        double b = V.inner(x, side.fixed_unit);
        Vec bdot = vec_sub(side.to, side.from);
        auto integrand = [&](double t) {
            Vec B = vec_lerp(side.from, side.to, t);
            double nb = std::sqrt(-V.inner(B, B));
            double uB = V.inner(x, B) / nb;
            double R = b * b + uB * uB;
            if (R < 1e-12)
                throw singular_locus_error(
                    "boundary integral: singular locus meets the boundary");
            double xdot = V.inner(x, unit_derivative(V, B, bdot));
            double num = side.fixed_first ? b * xdot : -b * xdot;
            return -(1.0 / (2.0 * M_PI)) * std::exp(-2.0 * M_PI * R) * num / R;
        };
        AdaptiveResult r = integrate_gk15(integrand, 0.0, 1.0, abs_tol / 4.0, cap);
        if (!r.converged)
            throw accuracy_error("boundary integral: cell budget exhausted", r.value,
                                 r.error_estimate);
        total += side.sign * r.value;
    }
    return total;
}

std::optional<std::pair<double, double>> intersection_point(const Vec& x,
                                                            const FrameConfig& cfg) {
    const InnerProductSpace& V = cfg.V;
    double a1 = V.inner(x, cfg.C1), a1p = V.inner(x, cfg.C1p);
    double a2 = V.inner(x, cfg.C2), a2p = V.inner(x, cfg.C2p);
    double den_s = a1 - a1p, den_t = a2 - a2p;
    if (den_s == 0.0 || den_t == 0.0) return std::nullopt;
    double s0 = a1 / den_s, t0 = a2 / den_t;
    if (s0 < 0.0 || s0 > 1.0 || t0 < 0.0 || t0 > 1.0) return std::nullopt;
    return std::make_pair(s0, t0);
}

double phi2(const Vec& x, const FrameConfig& cfg) {
    const InnerProductSpace& V = cfg.V;
    return 0.25 * (sgn(V.inner(x, cfg.C1)) - sgn(V.inner(x, cfg.C1p))) *
           (sgn(V.inner(x, cfg.C2)) - sgn(V.inner(x, cfg.C2p)));
}

int intersection_number(const Vec& x, const FrameConfig& cfg) {
    if (!cfg.regular(x) || phi2(x, cfg) == 0.0)
        throw input_error(
            "intersection_number: x must be regular with a transverse crossing");
    const InnerProductSpace& V = cfg.V;
    double s1 = sgn(V.inner(x, cfg.C1p) - V.inner(x, cfg.C1));
    double s2 = sgn(V.inner(x, cfg.C2p) - V.inner(x, cfg.C2));
    return static_cast<int>(s1 * s2);
}

double phi_r(const InnerProductSpace& V, const Vec& x,
             const std::vector<std::pair<Vec, Vec>>& pairs) {
    double prod = 1.0;
    for (const auto& [c, cp] : pairs)
        prod *= 0.5 * (sgn(V.inner(x, c)) - sgn(V.inner(x, cp)));
    return prod;
}

bool same_component(const InnerProductSpace& V, const OrientedFrame& f1,
                    const OrientedFrame& f2) {
    double m00 = V.inner(f1.z1, f2.z1), m01 = V.inner(f1.z1, f2.z2);
    double m10 = V.inner(f1.z2, f2.z1), m11 = V.inner(f1.z2, f2.z2);
    double det = m00 * m11 - m01 * m10;
    if (std::fabs(det) < 1e-12)
        throw degenerate_error("same_component: pairing matrix is numerically singular");
    return det > 0.0;
}

}  // namespace itheta
