#include "itheta/hypercube.hpp"

#include <cmath>

#include "itheta/smallmat.hpp"

namespace itheta {

std::vector<Vec> orthonormal_r_frame(const InnerProductSpace& V,
                                     const std::vector<Vec>& b) {
    int r = static_cast<int>(b.size());
    std::vector<double> P(static_cast<size_t>(r) * r);
    for (int i = 0; i < r; ++i)
        for (int j = i; j < r; ++j) P[i * r + j] = P[j * r + i] = -V.inner(b[i], b[j]);
    std::vector<double> w, E;
    sym_eigen(r, P, w, E);
    for (double lam : w)
        if (lam <= 0.0)
            throw degenerate_error("orthonormal_r_frame: span is not a negative r-plane");
    // Q = P^{-1/2} = E diag(w^{-1/2}) E^T
    std::vector<double> Q(static_cast<size_t>(r) * r, 0.0);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            double s = 0.0;
            for (int k = 0; k < r; ++k)
                s += E[i * r + k] * E[j * r + k] / std::sqrt(w[k]);
            Q[i * r + j] = s;
        }
    std::vector<Vec> frame(r, Vec(V.dim(), 0.0));
    for (int j = 0; j < r; ++j)
        for (int i = 0; i < r; ++i) vec_axpy(Q[i * r + j], b[i], frame[j]);
    return frame;
}

double r_quantity_frame(const InnerProductSpace& V, const Vec& x,
                        const std::vector<Vec>& frame) {
    double s = 0.0;
    for (const Vec& z : frame) {
        double p = V.inner(x, z);
        s += p * p;
    }
    return s;
}

std::vector<Vec> hypercube_point(const VecPairs& pairs,
                                 const std::vector<double>& s) {
    std::vector<Vec> b;
    b.reserve(pairs.size());
    for (size_t j = 0; j < pairs.size(); ++j)
        b.push_back(vec_lerp(pairs[j].first, pairs[j].second, s[j]));
    return b;
}

Vec Subspace::to_ambient(const Vec& coords) const {
    Vec r(basis[0].size(), 0.0);
    for (size_t i = 0; i < basis.size(); ++i) vec_axpy(coords[i], basis[i], r);
    return r;
}

Vec Subspace::project_coords(const InnerProductSpace& ambient, const Vec& x) const {
    int m = space.dim();
    std::vector<double> rhs(m);
    for (int i = 0; i < m; ++i) rhs[i] = ambient.inner(basis[i], x);
    std::vector<double> coords;
    if (!solve_dense(m, space.gram_matrix(), rhs, coords))
        throw degenerate_error("subspace projection: induced form is singular");
    return coords;
}

Subspace orthogonal_complement(const InnerProductSpace& V, const Vec& C) {
    int n = V.dim();
    double cc = V.inner(C, C);
    if (cc == 0.0) throw degenerate_error("orthogonal complement of a null vector");
    Vec w = V.apply_gram(C);
    // Drop the coordinate with the largest pairing against C; the projected
    // standard basis on the rest spans C^perp.  Fall back to other drops if
    // the induced form comes out singular.
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return std::fabs(w[a]) > std::fabs(w[b]); });
    for (int drop : order) {
        std::vector<Vec> basis;
        for (int i = 0; i < n; ++i) {
            if (i == drop) continue;
            Vec e(n, 0.0);
            e[i] = 1.0;
            vec_axpy(-w[i] / cc, C, e);
            basis.push_back(e);
        }
        int m = n - 1;
        std::vector<double> g(static_cast<size_t>(m) * m);
        for (int i = 0; i < m; ++i)
            for (int j = i; j < m; ++j)
                g[i * m + j] = g[j * m + i] = V.inner(basis[i], basis[j]);
        if (std::fabs(det_dense(m, g)) < 1e-12) continue;
        return Subspace(InnerProductSpace(m, g), std::move(basis));
    }
    throw degenerate_error("orthogonal complement: no nondegenerate basis found");
}

namespace {

bool corner_negative(const InnerProductSpace& V, const std::vector<Vec>& b) {
    int r = static_cast<int>(b.size());
    std::vector<double> P(static_cast<size_t>(r) * r), L;
    for (int i = 0; i < r; ++i)
        for (int j = i; j < r; ++j) P[i * r + j] = P[j * r + i] = -V.inner(b[i], b[j]);
    return cholesky(r, P, L);
}

int gram_rank(const InnerProductSpace& V, const std::vector<Vec>& vs) {
    int k = static_cast<int>(vs.size());
    std::vector<double> g(static_cast<size_t>(k) * k);
    for (int i = 0; i < k; ++i)
        for (int j = i; j < k; ++j) g[i * k + j] = g[j * k + i] = V.inner(vs[i], vs[j]);
    std::vector<double> ev = sym_eigenvalues(k, g);
    double scale = 0.0;
    for (double v : ev) scale = std::max(scale, std::fabs(v));
    int rank = 0;
    for (double v : ev)
        if (std::fabs(v) > 1e-9 * std::max(1.0, scale)) ++rank;
    return rank;
}

bool frames_same_component(const InnerProductSpace& V, const std::vector<Vec>& f1,
                           const std::vector<Vec>& f2) {
    int r = static_cast<int>(f1.size());
    std::vector<double> m(static_cast<size_t>(r) * r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) m[i * r + j] = V.inner(f1[i], f2[j]);
    // a frame pairs with itself as -1_r, so the same-component sign is (-1)^r
    double det = det_dense(r, m);
    return (r % 2 == 0) ? det > 0.0 : det < 0.0;
}

}  // namespace

PairsReport validate_pairs(const InnerProductSpace& V, const VecPairs& pairs) {
    PairsReport rep;
    int r = static_cast<int>(pairs.size());
    if (r == 0) return rep;

    for (const auto& [c, cp] : pairs)
        if (V.inner(c, c) >= 0.0 || V.inner(cp, cp) >= 0.0) return rep;

    if (r == 1) {
        rep.corners_negative = true;
        rep.corners_distinct = true;
        rep.projections_pass = true;
        rep.same_component = V.inner(pairs[0].first, pairs[0].second) < 0.0;
        rep.pass = rep.same_component;
        return rep;
    }
    if (r == 2) {
        IncidenceReport inc = validate_incidence(V, pairs[0].first, pairs[1].first,
                                                 pairs[0].second, pairs[1].second);
        rep.corners_negative = inc.deltas[0] > 0 && inc.deltas[1] > 0 &&
                               inc.deltas[2] > 0 && inc.deltas[3] > 0;
        rep.corners_distinct = inc.delta4 > 0;
        rep.same_component = inc.same_component;
        rep.projections_pass = inc.projections[0] < 0 && inc.projections[1] < 0 &&
                               inc.projections[2] < 0 && inc.projections[3] < 0;
        rep.pass = inc.pass;
        return rep;
    }

    int corners = 1 << r;
    std::vector<std::vector<Vec>> frames(corners);
    rep.corners_negative = true;
    for (int mask = 0; mask < corners && rep.corners_negative; ++mask) {
        std::vector<Vec> b;
        for (int j = 0; j < r; ++j)
            b.push_back((mask >> j) & 1 ? pairs[j].second : pairs[j].first);
        if (!corner_negative(V, b)) {
            rep.corners_negative = false;
            break;
        }
        frames[mask] = orthonormal_r_frame(V, b);
    }
    if (!rep.corners_negative) return rep;

    rep.corners_distinct = true;
    for (int a = 0; a < corners && rep.corners_distinct; ++a)
        for (int b = a + 1; b < corners && rep.corners_distinct; ++b) {
            std::vector<Vec> uni;
            for (int j = 0; j < r; ++j)
                uni.push_back((a >> j) & 1 ? pairs[j].second : pairs[j].first);
            for (int j = 0; j < r; ++j) {
                int bit_a = (a >> j) & 1, bit_b = (b >> j) & 1;
                if (bit_a != bit_b)
                    uni.push_back(bit_b ? pairs[j].second : pairs[j].first);
            }
            if (gram_rank(V, uni) <= r) rep.corners_distinct = false;
        }
    if (!rep.corners_distinct) return rep;

    rep.same_component = true;
    for (int mask = 1; mask < corners && rep.same_component; ++mask)
        if (!frames_same_component(V, frames[0], frames[mask]))
            rep.same_component = false;
    if (!rep.same_component) return rep;

    rep.projections_pass = true;
    for (int j = 0; j < r && rep.projections_pass; ++j) {
        for (const Vec* W : {&pairs[j].first, &pairs[j].second}) {
            Subspace sub = orthogonal_complement(V, *W);
            VecPairs proj;
            for (int k = 0; k < r; ++k) {
                if (k == j) continue;
                proj.push_back(
                    {sub.project_coords(V, perp_component(V, pairs[k].first, *W)),
                     sub.project_coords(V, perp_component(V, pairs[k].second, *W))});
            }
            if (!validate_pairs(sub.space, proj).pass) {
                rep.projections_pass = false;
                break;
            }
        }
    }
    rep.pass = rep.projections_pass;
    return rep;
}

std::optional<std::vector<double>> hypercube_intersection(
    const InnerProductSpace& V, const VecPairs& pairs, const Vec& x) {
    std::vector<double> s;
    s.reserve(pairs.size());
    for (const auto& [c, cp] : pairs) {
        double a = V.inner(x, c), b = V.inner(x, cp);
        double den = a - b;
        if (den == 0.0) return std::nullopt;
        double sj = a / den;
        if (sj < 0.0 || sj > 1.0) return std::nullopt;
        s.push_back(sj);
    }
    return s;
}

}  // namespace itheta
