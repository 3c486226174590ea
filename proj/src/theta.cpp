#include "itheta/theta.hpp"

#include <cmath>

#include "itheta/quadrature.hpp"

namespace itheta {

namespace {

constexpr double kCoeffTol = 1e-12;  // sign-product sums are quarter-integers

// Uniform bound on |I(y;S)|: each boosted error function is bounded by 3
// in absolute value (two tilde terms bounded by 1 plus a sign product).
constexpr double kClosedFormBound = 3.0;

struct BoostedKernel {
    double alpha;
    Vec a_vec, b_vec;  // u1 = (x, a_vec), u2 = (x, b_vec)
};

BoostedKernel make_kernel(const InnerProductSpace& V, const Vec& C1, const Vec& C2) {
    double c11 = V.inner(C1, C1), c22 = V.inner(C2, C2), c12 = V.inner(C1, C2);
    double d = c11 * c22 - c12 * c12;
    if (c11 >= 0.0 || c22 >= 0.0 || d <= 0.0)
        throw incidence_error("boosted kernel: pair must span a negative 2-plane");
    BoostedKernel k;
    k.alpha = -c12 / std::sqrt(d);
    k.a_vec = normalize(V, perp_component(V, C1, C2));
    k.b_vec = normalize(V, C2);
    return k;
}

struct ClosedFormKernel {
    std::array<BoostedKernel, 4> corner;  // 12, 12', 1'2, 1'2'
    explicit ClosedFormKernel(const FrameConfig& cfg)
        : corner{make_kernel(cfg.V, cfg.C1, cfg.C2),
                 make_kernel(cfg.V, cfg.C1, cfg.C2p),
                 make_kernel(cfg.V, cfg.C1p, cfg.C2),
                 make_kernel(cfg.V, cfg.C1p, cfg.C2p)} {}

    double I(const InnerProductSpace& V, const Vec& y,
             const QuadratureSpec& spec) const {
        Vec x = vec_scale(std::sqrt(2.0), y);
        double s = 0.0;
        const double signs[4] = {+1.0, -1.0, -1.0, +1.0};
        for (int i = 0; i < 4; ++i) {
            const BoostedKernel& k = corner[i];
            s += signs[i] *
                 e2_flat(k.alpha, V.inner(x, k.a_vec), V.inner(x, k.b_vec), spec);
        }
        return -0.25 * s;
    }
};

Cplx q_power(const TauPoint& tau, double Q) {
    // q^Q = exp(2 pi i tau Q)
    double mag = std::exp(-2.0 * M_PI * tau.v * Q);
    double ph = 2.0 * M_PI * tau.u * Q;
    return {mag * std::cos(ph), mag * std::sin(ph)};
}

Cplx unit_phase(const Rational& r) {
    double ph = 2.0 * M_PI * r.to_double();
    return {std::cos(ph), std::sin(ph)};
}

}  // namespace

double closed_form_I(const FrameConfig& cfg, const Vec& y,
                     const QuadratureSpec& spec) {
    return ClosedFormKernel(cfg).I(cfg.V, y, spec);
}

QSeries sign_product_series(const EvenLattice& L, const Coset& mu,
                            const VecPairs& pairs, double qmax) {
    if (!validate_pairs(L.space(), pairs).pass)
        throw incidence_error("sign_product_series: pairs fail the incidence conditions");
    MajorantForm M = majorant_on_pairs(L.space(), pairs);
    QSeries out;
    out.coset = mu;
    out.guarantee = qmax;
    auto pts = enumerate_points(L, mu, M, 2.0 * qmax);
    for (const auto& p : pts) {
        double w = phi_r(L.space(), p.x, pairs);
        if (w == 0.0) continue;
        Rational Q = q_exponent(L, mu, p.k);
        if (qmax * Q.den < static_cast<double>(Q.num)) continue;  // beyond guarantee
        out.terms[Q] += w;
    }
    for (auto it = out.terms.begin(); it != out.terms.end();)
        it = std::fabs(it->second) < kCoeffTol ? out.terms.erase(it) : std::next(it);
    return out;
}

QSeries holomorphic_part(const EvenLattice& L, const Coset& mu,
                         const FrameConfig& cfg, double qmax) {
    SurfaceChart chart(cfg);
    MajorantForm M = majorant_on_chart(chart);
    QSeries out;
    out.coset = mu;
    out.guarantee = qmax;
    auto pts = enumerate_points(L, mu, M, 2.0 * qmax);
    for (const auto& p : pts) {
        double w = phi2(p.x, cfg);
        if (w == 0.0) continue;
        Rational Q = q_exponent(L, mu, p.k);
        if (qmax * Q.den < static_cast<double>(Q.num)) continue;
        out.terms[Q] += w;
    }
    for (auto it = out.terms.begin(); it != out.terms.end();)
        it = std::fabs(it->second) < kCoeffTol ? out.terms.erase(it) : std::next(it);
    return out;
}

CompletedTheta::CompletedTheta(const EvenLattice& L, const Coset& mu,
                               const FrameConfig& cfg, double qmax,
                               QuadratureSpec spec)
    : cfg_(cfg), spec_(spec), bound_(2.0 * qmax) {
    SurfaceChart chart(cfg_);
    MajorantForm M = majorant_on_chart(chart);
    i_zero_ = closed_form_I(cfg_, Vec(cfg_.V.dim(), 0.0), spec_);

    auto sides = boundary_sides(cfg_);
    std::array<std::pair<Vec, std::pair<Vec, Vec>>, 4> side_units;
    for (int s = 0; s < 4; ++s)
        side_units[s] = {sides[s].fixed_unit,
                         {normalize(cfg_.V, sides[s].from),
                          normalize(cfg_.V, sides[s].to)}};

    auto pts = enumerate_points(L, mu, M, bound_);
    terms_.reserve(pts.size());
    for (const auto& p : pts) {
        Term t;
        t.x = p.x;
        t.Q = q_exponent(L, mu, p.k);
        t.qx = cfg_.V.inner(p.x, p.x);
        t.phi2 = phi2(p.x, cfg_);
        t.norm_s = p.norm_m;
        for (int s = 0; s < 4; ++s)
            t.side[s] = {cfg_.V.inner(p.x, side_units[s].first),
                         cfg_.V.inner(p.x, side_units[s].second.first),
                         cfg_.V.inner(p.x, side_units[s].second.second)};
        terms_.push_back(std::move(t));
    }
}

double CompletedTheta::term_weight(const Term& t, double v) const {
    double norm2 = 0.0;
    for (double c : t.x) norm2 += c * c;
    if (norm2 == 0.0) return i_zero_;

    // A vector orthogonal to the whole configuration (possible only for
    // n > 4) zeroes every boundary pairing while the integral itself is a
    // corner-angle combination; such x is spacelike, so the smooth closed
    // form is safe (no q^Q amplification).
    double pair_scale = 0.0;
    for (const auto& side : t.side)
        for (double p : side) pair_scale = std::max(pair_scale, std::fabs(p));
    if (pair_scale <= 1e-12 * std::sqrt(norm2)) {
        double sv = std::sqrt(v);
        return closed_form_I(cfg_, vec_scale(sv, t.x), spec_) *
               std::exp(-M_PI * v * t.qx);
    }

    // sigma * kappa per side: boundary orientation sign times the numerator
    // flip on the sides whose fixed vector is the second frame component.
    static constexpr double sk[4] = {+1.0, -1.0, -1.0, +1.0};
    double shift = v * t.qx;  // v (x,x); exponents fold |q^Q| = e^{-pi v (x,x)}
    double s2v = std::sqrt(2.0 * v);
    double acc = 0.0;
    for (int s = 0; s < 4; ++s) {
        double b = s2v * t.side[s][0];
        if (b == 0.0) continue;
        double af = s2v * t.side[s][1];
        double at = s2v * t.side[s][2];
        if (af == at) continue;
        double lo = std::min(at, af), hi = std::max(at, af);
        double flip = (af >= at) ? 1.0 : -1.0;
        auto f = [b, shift](double w) {
            return std::exp(-M_PI * (w * w + b * b + shift)) / (b * b + w * w);
        };
        AdaptiveResult r =
            integrate_gk15(f, lo, hi, spec_.abs_tol, spec_.max_subdivisions);
        if (!r.converged)
            throw accuracy_error("completed theta: term integral budget exhausted",
                                 r.value, r.error_estimate);
        acc += sk[s] * flip * (2.0 / M_PI) * b * r.value;
    }
    double mag = std::exp(-M_PI * shift);  // e^{-pi v (x,x)}; finite iff qx bounded
    double phi_term =
        (t.phi2 != 0.0) ? t.phi2 * mag : 0.0;  // phi2 != 0 forces (x,x) > 0
    return 0.25 * acc - phi_term;
}

const std::vector<double>& CompletedTheta::weights(double v) const {
    auto it = cache_.find(v);
    if (it != cache_.end()) return it->second;
    std::vector<double> vals;
    vals.reserve(terms_.size());
    for (const auto& t : terms_) vals.push_back(term_weight(t, v));
    return cache_.emplace(v, std::move(vals)).first->second;
}

Cplx CompletedTheta::eval(const TauPoint& tau) const {
    // weights carry |q^Q|, so only the phase of q^Q remains.
    const std::vector<double>& w = weights(tau.v);
    Cplx s{0.0, 0.0};
    for (size_t i = 0; i < terms_.size(); ++i) {
        double ph = 2.0 * M_PI * tau.u * terms_[i].Q.to_double();
        s += w[i] * Cplx(std::cos(ph), std::sin(ph));
    }
    return s;
}

Cplx CompletedTheta::eval_by_quadrature(const TauPoint& tau, double surf_tol) const {
    SurfaceChart chart(cfg_);
    double sv = std::sqrt(tau.v);
    Cplx s{0.0, 0.0};
    for (const auto& t : terms_) {
        double I = surface_integral_phi(vec_scale(sv, t.x), chart, surf_tol);
        s += I * q_power(tau, t.Q.to_double());
    }
    return s;
}

double CompletedTheta::tail_bound(double v) const {
    // Terms beyond the enumeration bound B satisfy
    //   |I(sqrt(v) x) q^Q| <= kClosedFormBound e^{-pi v (x,x)_S},
    // so the tail is bounded by a geometric shell estimate seeded with the
    // last enumerated unit shell's population.
    double B = bound_;
    int n_last = 0, n_prev = 0;
    for (const auto& t : terms_) {
        if (t.norm_s > B - 1.0) ++n_last;
        else if (t.norm_s > B - 2.0) ++n_prev;
    }
    double grow = (n_prev > 0) ? static_cast<double>(n_last) / n_prev : 2.0;
    double rho = std::min(4.0, std::max(1.5, grow));
    double r = rho * std::exp(-M_PI * v);
    double seed = std::max(n_last, 1);
    if (r >= 0.9) return 1e300;  // shells outgrow the Gaussian: no certificate
    return kClosedFormBound * seed * rho * std::exp(-M_PI * v * B) / (1.0 - r);
}

CompletedValue completed_theta(const EvenLattice& L, const Coset& mu,
                               const FrameConfig& cfg, const TauPoint& tau,
                               double qmax, const QuadratureSpec& spec) {
    CompletedTheta ct(L, mu, cfg, qmax, spec);
    CompletedValue out;
    out.value = ct.eval(tau);
    out.tail = ct.tail_bound(tau.v);
    out.terms = ct.term_count();
    return out;
}

ModularityReport verify_T(const EvenLattice& L, const FrameConfig& cfg,
                          const TauPoint& tau, double qmax,
                          const QuadratureSpec& spec) {
    ModularityReport rep;
    rep.transform = 'T';
    for (const Coset& mu : discriminant_group(L)) {
        CompletedTheta ct(L, mu, cfg, qmax, spec);
        Cplx lhs = ct.eval({tau.u + 1.0, tau.v});
        Cplx rhs = unit_phase(q_exponent(L, mu, std::vector<int64_t>(L.dim(), 0))) *
                   ct.eval(tau);
        rep.residual = std::max(rep.residual, std::abs(lhs - rhs));
    }
    rep.measured_phase = {1.0, 0.0};
    return rep;
}

ModularityReport verify_S(const EvenLattice& L, const FrameConfig& cfg,
                          const TauPoint& tau, double qmax,
                          const QuadratureSpec& spec) {
    ModularityReport rep;
    rep.transform = 'S';
    auto cosets = discriminant_group(L);
    size_t m = cosets.size();

    Cplx t{tau.u, tau.v};
    Cplx neg_inv = -1.0 / t;
    TauPoint tau_s{neg_inv.real(), neg_inv.imag()};

    std::vector<Cplx> at_tau(m), at_s(m);
    for (size_t i = 0; i < m; ++i) {
        CompletedTheta ct(L, cosets[i], cfg, qmax, spec);
        at_tau[i] = ct.eval(tau);
        at_s[i] = ct.eval(tau_s);
    }

    int n = L.dim();
    Cplx tpow = std::pow(t, 0.5 * n);
    double disc = static_cast<double>(L.discriminant());
    std::vector<Cplx> ratio;
    for (size_t i = 0; i < m; ++i) {
        Cplx den{0.0, 0.0};
        for (size_t j = 0; j < m; ++j)
            den += std::conj(unit_phase(coset_pairing(L, cosets[i], cosets[j]))) *
                   at_tau[j];
        den *= tpow / std::sqrt(disc);
        if (std::abs(den) < 1e-12) {
            rep.conclusive = false;
            continue;
        }
        ratio.push_back(at_s[i] / den);
    }
    if (ratio.empty()) {
        rep.conclusive = false;
        return rep;
    }
    Cplx mean{0.0, 0.0};
    for (const Cplx& r : ratio) mean += r;
    mean /= static_cast<double>(ratio.size());
    rep.measured_phase = mean;
    for (size_t i = 0; i < ratio.size(); ++i)
        for (size_t j = i + 1; j < ratio.size(); ++j)
            rep.residual = std::max(rep.residual, std::abs(ratio[i] - ratio[j]));
    return rep;
}

Cplx shadow_fd(const EvenLattice& L, const Coset& mu, const FrameConfig& cfg,
               const TauPoint& tau, double qmax, const QuadratureSpec& spec) {
    CompletedTheta ct(L, mu, cfg, qmax, spec);
    const double h = 1e-4;
    auto in_u = [&](double u) { return ct.eval({u, tau.v}); };
    auto in_v = [&](double v) { return ct.eval({tau.u, v}); };
    auto rich = [&](auto&& f, double x0) {
        Cplx d1 = (f(x0 + h) - f(x0 - h)) / (2.0 * h);
        Cplx d2 = (f(x0 + 0.5 * h) - f(x0 - 0.5 * h)) / h;
        return (4.0 * d2 - d1) / 3.0;
    };
    Cplx du = rich(in_u, tau.u);
    Cplx dv = rich(in_v, tau.v);
    Cplx dtaubar = 0.5 * (du + Cplx(0.0, 1.0) * dv);
    return Cplx(0.0, -2.0) * tau.v * tau.v * dtaubar;
}

Cplx shadow_boundary(const EvenLattice& L, const Coset& mu, const FrameConfig& cfg,
                     const TauPoint& tau, double qmax, const QuadratureSpec& spec) {
    CompletedTheta ct(L, mu, cfg, qmax, spec);  // reuse its term enumeration
    const InnerProductSpace& V = cfg.V;
    auto sides = boundary_sides(cfg);
    double v = tau.v;

    Cplx total{0.0, 0.0};
    for (const auto& term : ct.terms()) {
        const Vec& x = term.x;
        // |q^Q| = e^{-pi v (x,x)} folded into the line integrands: the
        // combined exponent is -pi v (x,x)_z along the geodesic, bounded by
        // the chart majorant, so timelike terms cannot overflow.
        double shift = v * term.qx;
        double line = 0.0;
        for (const auto& side : sides) {
            double b = V.inner(x, side.fixed_unit);
            Vec bdot = vec_sub(side.to, side.from);
            auto integrand = [&](double t) {
                Vec B = vec_lerp(side.from, side.to, t);
                double nb = std::sqrt(-V.inner(B, B));
                double uB = V.inner(x, B) / nb;
                double twoR = 2.0 * (b * b + uB * uB);
                double xdot = V.inner(x, unit_derivative(V, B, bdot));
                double num = side.fixed_first ? b * xdot : -b * xdot;
                return v * std::exp(-M_PI * (v * twoR + shift)) * num;
            };
            AdaptiveResult r =
                integrate_gk15(integrand, 0.0, 1.0, spec.abs_tol, spec.max_subdivisions);
            line += side.sign * r.value;
        }
        double ph = 2.0 * M_PI * tau.u * term.Q.to_double();
        total += line * Cplx(std::cos(ph), std::sin(ph));
    }
    return v * total;
}

Cplx unary_theta(const InnerProductSpace& V, const Vec& gen, const Rational& frac,
                 const Vec& C1, const TauPoint& tau) {
    double g2 = V.inner(gen, gen);
    if (g2 >= 0.0)
        throw degenerate_error("unary_theta: generator must be timelike");
    Vec uc1 = normalize(V, C1);
    double coeff_unit = V.inner(gen, uc1);
    double f = frac.to_double();
    // |q^{-(x0,x0)/2}| = exp(-pi v |g2| (m+f)^2): sum until the factor
    // drops below 1e-18.
    double w = std::sqrt(42.0 / (M_PI * tau.v * (-g2))) + 2.0;
    int64_t lo = static_cast<int64_t>(std::floor(-f - w));
    int64_t hi = static_cast<int64_t>(std::ceil(-f + w));
    Cplx s{0.0, 0.0};
    for (int64_t mm = lo; mm <= hi; ++mm) {
        double c = static_cast<double>(mm) + f;
        double expo = -0.5 * g2 * c * c;  // -(x0,x0)/2 > 0
        s += (coeff_unit * c) * q_power(tau, expo);
    }
    return s;
}

double zwegers_line_integral(const InnerProductSpace& V1, const Vec& x1,
                             const Vec& C, const Vec& Cp, const TauPoint& tau,
                             const QuadratureSpec& spec) {
    if (V1.inner(C, C) >= 0.0 || V1.inner(Cp, Cp) >= 0.0)
        throw input_error("zwegers_line_integral: endpoints must be timelike");
    if (V1.inner(C, Cp) >= 0.0)
        throw input_error("zwegers_line_integral: endpoints lie on opposite components");
    double v = tau.v;
    Vec bdot = vec_sub(Cp, C);
    auto integrand = [&](double t) {
        Vec B = vec_lerp(C, Cp, t);
        Vec nu = normalize(V1, B);
        double p = V1.inner(x1, nu);
        double xdot = V1.inner(x1, unit_derivative(V1, B, bdot));
        return xdot * std::exp(-2.0 * M_PI * v * p * p);
    };
    AdaptiveResult r =
        integrate_gk15(integrand, 0.0, 1.0, spec.abs_tol, spec.max_subdivisions);
    if (!r.converged)
        throw accuracy_error("zwegers_line_integral: budget exhausted",
                             std::sqrt(v) * r.value, r.error_estimate);
    return std::sqrt(v) * r.value;
}

}  // namespace itheta
