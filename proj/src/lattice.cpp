#include "itheta/lattice.hpp"

#include <algorithm>
#include <cmath>

#include "itheta/smallmat.hpp"

namespace itheta {

EvenLattice::EvenLattice(InnerProductSpace space, std::vector<double> basis)
    : V_(std::move(space)), basis_(std::move(basis)) {
    int n = V_.dim();
    if (basis_.size() != static_cast<size_t>(n) * n)
        throw input_error("lattice: basis must be n x n");
    g_.assign(static_cast<size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i) {
        Vec bi(n), bj(n);
        for (int r = 0; r < n; ++r) bi[r] = basis_[static_cast<size_t>(r) * n + i];
        for (int j = 0; j < n; ++j) {
            for (int r = 0; r < n; ++r) bj[r] = basis_[static_cast<size_t>(r) * n + j];
            double v = V_.inner(bi, bj);
            int64_t iv = std::llround(v);
            if (std::fabs(v - static_cast<double>(iv)) > 1e-9)
                throw input_error("lattice: Gram matrix is not integral");
            g_[static_cast<size_t>(i) * n + j] = iv;
        }
    }
    for (int i = 0; i < n; ++i)
        if (gram(i, i) % 2 != 0)
            throw input_error("lattice: Gram diagonal must be even");
}

int64_t EvenLattice::discriminant() const {
    int n = dim();
    std::vector<double> a(g_.begin(), g_.end());
    double d = det_dense(n, a);
    int64_t r = std::llround(std::fabs(d));
    if (r == 0) throw degenerate_error("lattice: Gram matrix is singular");
    return r;
}

Vec EvenLattice::to_ambient(const std::vector<Rational>& coords) const {
    int n = dim();
    Vec x(n, 0.0);
    for (int j = 0; j < n; ++j) {
        double cj = coords[j].to_double();
        for (int r = 0; r < n; ++r) x[r] += basis_[static_cast<size_t>(r) * n + j] * cj;
    }
    return x;
}

Vec EvenLattice::to_ambient_shifted(const std::vector<int64_t>& k,
                                    const std::vector<Rational>& mu) const {
    int n = dim();
    Vec x(n, 0.0);
    for (int j = 0; j < n; ++j) {
        double cj = static_cast<double>(k[j]) + mu[j].to_double();
        for (int r = 0; r < n; ++r) x[r] += basis_[static_cast<size_t>(r) * n + j] * cj;
    }
    return x;
}

std::vector<Coset> discriminant_group(const EvenLattice& L) {
    int n = L.dim();
    std::vector<int64_t> a = L.gram_int();
    std::vector<int64_t> Q(static_cast<size_t>(n) * n, 0);  // column-op accumulator
    for (int i = 0; i < n; ++i) Q[static_cast<size_t>(i) * n + i] = 1;

    auto A = [&](int i, int j) -> int64_t& { return a[static_cast<size_t>(i) * n + j]; };
    auto swap_cols = [&](int j1, int j2) {
        for (int i = 0; i < n; ++i) {
            std::swap(A(i, j1), A(i, j2));
            std::swap(Q[static_cast<size_t>(i) * n + j1], Q[static_cast<size_t>(i) * n + j2]);
        }
    };
    auto addmul_col = [&](int dst, int src, int64_t f) {
        for (int i = 0; i < n; ++i) {
            A(i, dst) += f * A(i, src);
            Q[static_cast<size_t>(i) * n + dst] += f * Q[static_cast<size_t>(i) * n + src];
        }
    };
    auto swap_rows = [&](int i1, int i2) {
        for (int j = 0; j < n; ++j) std::swap(A(i1, j), A(i2, j));
    };
    auto addmul_row = [&](int dst, int src, int64_t f) {
        for (int j = 0; j < n; ++j) A(dst, j) += f * A(src, j);
    };

    for (int t = 0; t < n; ++t) {
        for (;;) {
            // smallest nonzero pivot in the trailing block
            int pi = -1, pj = -1;
            int64_t best = 0;
            for (int i = t; i < n; ++i)
                for (int j = t; j < n; ++j) {
                    int64_t v = A(i, j) < 0 ? -A(i, j) : A(i, j);
                    if (v != 0 && (pi < 0 || v < best)) {
                        best = v;
                        pi = i;
                        pj = j;
                    }
                }
            if (pi < 0)
                throw degenerate_error("discriminant group: Gram matrix is singular");
            if (pi != t) swap_rows(t, pi);
            if (pj != t) swap_cols(t, pj);

            bool clean = true;
            for (int i = t + 1; i < n; ++i)
                if (A(i, t) != 0) {
                    int64_t q = A(i, t) / A(t, t);
                    addmul_row(i, t, -q);
                    if (A(i, t) != 0) clean = false;
                }
            for (int j = t + 1; j < n; ++j)
                if (A(t, j) != 0) {
                    int64_t q = A(t, j) / A(t, t);
                    addmul_col(j, t, -q);
                    if (A(t, j) != 0) clean = false;
                }
            if (!clean) continue;

            bool divides = true;
            for (int i = t + 1; i < n && divides; ++i)
                for (int j = t + 1; j < n && divides; ++j)
                    if (A(i, j) % A(t, t) != 0) {
                        addmul_col(t, j, 1);
                        divides = false;
                    }
            if (divides) break;
        }
        if (A(t, t) < 0) {
            for (int i = 0; i < n; ++i) {
                A(i, t) = -A(i, t);
                Q[static_cast<size_t>(i) * n + t] = -Q[static_cast<size_t>(i) * n + t];
            }
        }
    }

    std::vector<int64_t> d(n);
    for (int t = 0; t < n; ++t) d[t] = A(t, t);

    // Representatives Q * (c_1/d_1, ..., c_n/d_n) mod 1.
    std::vector<Coset> out;
    std::vector<int64_t> c(n, 0);
    for (;;) {
        Coset mu;
        mu.mu.resize(n);
        for (int i = 0; i < n; ++i) {
            Rational acc(0);
            for (int j = 0; j < n; ++j)
                acc = acc + Rational(Q[static_cast<size_t>(i) * n + j] * c[j], d[j]);
            mu.mu[i] = acc.mod1();
        }
        out.push_back(std::move(mu));
        int t = n - 1;
        while (t >= 0 && ++c[t] == d[t]) c[t--] = 0;
        if (t < 0) break;
    }
    return out;
}

MajorantForm majorant_matrix(const InnerProductSpace& V,
                             const std::vector<Vec>& frame) {
    int n = V.dim();
    MajorantForm M;
    M.n = n;
    M.m.assign(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M.m[static_cast<size_t>(i) * n + j] = V.gram(i, j);
    for (const Vec& z : frame) {
        Vec gz = V.apply_gram(z);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                M.m[static_cast<size_t>(i) * n + j] += 2.0 * gz[i] * gz[j];
    }
    return M;
}

namespace {

MajorantForm scaled_identity(int n, double nu) {
    MajorantForm M;
    M.n = n;
    M.m.assign(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) M.m[static_cast<size_t>(i) * n + i] = nu;
    return M;
}

}  // namespace

MajorantForm majorant_on_chart(const SurfaceChart& chart) {
    const InnerProductSpace& V = chart.space();
    double nu = 0.0;
    bool first = true;
    for (int i = 0; i <= 8; ++i)
        for (int j = 0; j <= 8; ++j) {
            OrientedFrame z = chart.point(i / 8.0, j / 8.0);
            MajorantForm M = majorant_matrix(V, {z.z1, z.z2});
            double lam = sym_eigenvalues(V.dim(), M.m).front();
            if (first || lam < nu) nu = lam;
            first = false;
        }
    if (nu <= 0.0)
        throw degenerate_error("chart majorant: pointwise form not positive definite");
    return scaled_identity(V.dim(), 0.9 * nu);
}

MajorantForm majorant_on_pairs(const InnerProductSpace& V, const VecPairs& pairs) {
    int r = static_cast<int>(pairs.size());
    int grid = r <= 1 ? 17 : (r == 2 ? 9 : (r == 3 ? 7 : 5));
    std::vector<double> s(r, 0.0);
    double nu = 0.0;
    bool first = true;
    std::vector<int> idx(r, 0);
    for (;;) {
        for (int j = 0; j < r; ++j) s[j] = static_cast<double>(idx[j]) / (grid - 1);
        std::vector<Vec> frame = orthonormal_r_frame(V, hypercube_point(pairs, s));
        MajorantForm M = majorant_matrix(V, frame);
        double lam = sym_eigenvalues(V.dim(), M.m).front();
        if (first || lam < nu) nu = lam;
        first = false;
        int t = r - 1;
        while (t >= 0 && ++idx[t] == grid) idx[t--] = 0;
        if (t < 0) break;
    }
    if (nu <= 0.0)
        throw degenerate_error("hypercube majorant: pointwise form not positive definite");
    return scaled_identity(V.dim(), 0.9 * nu);
}

std::vector<LatticePoint> enumerate_points(const EvenLattice& L, const Coset& mu,
                                           const MajorantForm& M, double bound) {
    if (bound <= 0.0) throw input_error("enumerate_points: bound must be positive");
    int n = L.dim();
    // Quadratic form on lattice coordinates: A = B^T M B.
    std::vector<double> A(static_cast<size_t>(n) * n, 0.0);
    {
        std::vector<Vec> cols(n, Vec(n, 0.0));
        for (int j = 0; j < n; ++j) {
            std::vector<Rational> e(n, Rational(0));
            e[j] = Rational(1);
            cols[j] = L.to_ambient(e);
        }
        for (int i = 0; i < n; ++i) {
            Vec Mci(n, 0.0);
            for (int r = 0; r < n; ++r) {
                double s = 0.0;
                for (int c = 0; c < n; ++c)
                    s += M.m[static_cast<size_t>(r) * n + c] * cols[i][c];
                Mci[r] = s;
            }
            for (int j = 0; j < n; ++j) {
                double s = 0.0;
                for (int r = 0; r < n; ++r) s += cols[j][r] * Mci[r];
                A[static_cast<size_t>(i) * n + j] = s;
            }
        }
    }
    std::vector<double> Lc;
    if (!cholesky(n, A, Lc))
        throw degenerate_error("enumerate_points: majorant form is not positive definite");
    // Upper-triangular R with A = R^T R: R = Lc^T.
    auto R = [&](int i, int j) { return Lc[static_cast<size_t>(j) * n + i]; };

    std::vector<double> shift(n);
    for (int i = 0; i < n; ++i) shift[i] = mu.mu[i].to_double();

    std::vector<LatticePoint> out;
    std::vector<int64_t> k(n, 0);
    std::vector<double> y(n, 0.0);
    double slack = bound * (1.0 + 1e-12) + 1e-12;

    // Depth-first over coordinates n-1 .. 0 with per-level interval bounds.
    auto rec = [&](auto&& self, int level, double used) -> void {
        if (level < 0) {
            std::vector<Rational> coords(n);
            for (int i = 0; i < n; ++i)
                coords[i] = Rational(k[i]) + mu.mu[i];
            LatticePoint p;
            p.k = k;
            p.x = L.to_ambient(coords);
            p.norm_m = M(p.x);
            if (p.norm_m <= slack) out.push_back(std::move(p));
            return;
        }
        double c = 0.0;  // offset from already-fixed outer coordinates
        for (int j = level + 1; j < n; ++j) c += R(level, j) * y[j];
        double rii = R(level, level);
        double room = slack - used;
        if (room < 0.0) return;
        double w = std::sqrt(room) / rii;
        double center = -c / rii - shift[level];
        int64_t lo = static_cast<int64_t>(std::ceil(center - w - 1e-12));
        int64_t hi = static_cast<int64_t>(std::floor(center + w + 1e-12));
        for (int64_t ki = lo; ki <= hi; ++ki) {
            k[level] = ki;
            y[level] = static_cast<double>(ki) + shift[level];
            double term = rii * y[level] + c;
            self(self, level - 1, used + term * term);
        }
    };
    rec(rec, n - 1, 0.0);

    std::sort(out.begin(), out.end(), [](const LatticePoint& a, const LatticePoint& b) {
        if (a.norm_m != b.norm_m) return a.norm_m < b.norm_m;
        return a.k < b.k;
    });
    return out;
}

Rational q_exponent(const EvenLattice& L, const Coset& mu,
                    const std::vector<int64_t>& k) {
    int n = L.dim();
    int64_t D = 1;
    for (const Rational& r : mu.mu) D = std::lcm(D, r.den);
    std::vector<int64_t> w(n);
    for (int i = 0; i < n; ++i) w[i] = D * k[i] + (D / mu.mu[i].den) * mu.mu[i].num;
    int64_t s = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s += w[i] * L.gram(i, j) * w[j];
    return Rational(s, 2 * D * D);
}

Rational coset_pairing(const EvenLattice& L, const Coset& mu, const Coset& nu) {
    int n = L.dim();
    Rational acc(0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            acc = acc + mu.mu[i] * Rational(L.gram(i, j)) * nu.mu[j];
    return acc.mod1();
}

}  // namespace itheta
