#include "itheta/quadspace.hpp"

#include <cmath>

#include "itheta/smallmat.hpp"

namespace itheta {

InnerProductSpace::InnerProductSpace(int n, std::vector<double> gram)
    : n_(n), g_(std::move(gram)) {
    if (n <= 0 || g_.size() != static_cast<size_t>(n) * n)
        throw input_error("inner-product space: gram must be n x n with n >= 1");
    double scale = 0.0;
    for (double v : g_) scale = std::max(scale, std::fabs(v));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::fabs(g_[i * n + j] - g_[j * n + i]) > 1e-12 * std::max(1.0, scale))
                throw input_error("inner-product space: gram is not symmetric");
}

double InnerProductSpace::inner(const Vec& x, const Vec& y) const {
    require_dim(x);
    require_dim(y);
    double s = 0.0;
    for (int i = 0; i < n_; ++i) {
        double row = 0.0;
        const double* gi = &g_[static_cast<size_t>(i) * n_];
        for (int j = 0; j < n_; ++j) row += gi[j] * y[j];
        s += x[i] * row;
    }
    return s;
}

Vec InnerProductSpace::apply_gram(const Vec& x) const {
    require_dim(x);
    Vec r(n_, 0.0);
    for (int i = 0; i < n_; ++i) {
        double s = 0.0;
        const double* gi = &g_[static_cast<size_t>(i) * n_];
        for (int j = 0; j < n_; ++j) s += gi[j] * x[j];
        r[i] = s;
    }
    return r;
}

std::pair<int, int> InnerProductSpace::signature() const {
    std::vector<double> ev = sym_eigenvalues(n_, g_);
    double scale = 0.0;
    for (double v : ev) scale = std::max(scale, std::fabs(v));
    int p = 0, q = 0;
    for (double v : ev) {
        if (std::fabs(v) < 1e-10 * std::max(1.0, scale))
            throw degenerate_error("inner-product space: form is degenerate");
        (v > 0 ? p : q)++;
    }
    return {p, q};
}

void InnerProductSpace::require_dim(const Vec& x) const {
    if (x.size() != static_cast<size_t>(n_))
        throw input_error("vector dimension does not match the space");
}

DeltaReport delta(const InnerProductSpace& V, const Vec& C, const Vec& Cp) {
    double cc = V.inner(C, C), pp = V.inner(Cp, Cp), cp = V.inner(C, Cp);
    DeltaReport r;
    r.value = cc * pp - cp * cp;
    r.positive = r.value > 0.0;
    return r;
}

double delta_gram(const InnerProductSpace& V, const std::vector<Vec>& vs) {
    int k = static_cast<int>(vs.size());
    std::vector<double> g(static_cast<size_t>(k) * k);
    for (int i = 0; i < k; ++i)
        for (int j = i; j < k; ++j) g[i * k + j] = g[j * k + i] = V.inner(vs[i], vs[j]);
    return det_dense(k, g);
}

Vec perp_component(const InnerProductSpace& V, const Vec& C, const Vec& C0) {
    double n0 = V.inner(C0, C0);
    if (n0 == 0.0)
        throw degenerate_error("perp component: reference vector is null");
    Vec r = C;
    vec_axpy(-V.inner(C, C0) / n0, C0, r);
    return r;
}

Vec normalize(const InnerProductSpace& V, const Vec& C) {
    double cc = V.inner(C, C);
    if (cc == 0.0) throw degenerate_error("normalize: vector is null");
    return vec_scale(1.0 / std::sqrt(std::fabs(cc)), C);
}

Vec vec_add(const Vec& a, const Vec& b) {
    Vec r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

Vec vec_sub(const Vec& a, const Vec& b) {
    Vec r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

Vec vec_scale(double s, const Vec& a) {
    Vec r = a;
    for (double& v : r) v *= s;
    return r;
}

void vec_axpy(double s, const Vec& a, Vec& y) {
    for (size_t i = 0; i < y.size(); ++i) y[i] += s * a[i];
}

Vec vec_lerp(const Vec& a, const Vec& b, double t) {
    Vec r(a.size());
    for (size_t i = 0; i < r.size(); ++i) r[i] = (1.0 - t) * a[i] + t * b[i];
    return r;
}

}  // namespace itheta
