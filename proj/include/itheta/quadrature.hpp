#pragma once

// Shared numerical kernels: Gauss-Legendre rules, adaptive 1-D / 2-D
// integration drivers, and difference-quotient derivative estimators.
// All integrands in this project are smooth with Gaussian decay, so the
// drivers use fixed-order rules per cell with two-level error estimates
// and plain bisection.  Cells are refined worst-first and the final sum
// runs in interval order, so identical inputs give bit-identical output.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "itheta/errors.hpp"

namespace itheta {

struct Rule1D {
    int order = 0;
    std::vector<double> nodes;    // on [-1,1]
    std::vector<double> weights;  // sum to 2
};

// Cached Gauss-Legendre rule, 1 <= m <= 64 (Newton on Legendre polynomials).
const Rule1D& gauss_legendre(int m);

struct AdaptiveResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int cells_used = 0;
    bool converged = false;
};

namespace detail {

template <class F>
double apply_rule(const Rule1D& r, const F& f, double a, double b) {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < r.order; ++i) s += r.weights[i] * f(mid + half * r.nodes[i]);
    return s * half;
}

struct Segment {
    double a, b, value, err;
    int idx;
};

template <class EstimateCell>
AdaptiveResult adapt_1d(const EstimateCell& est, double a, double b, double tol,
                        int cap) {
    AdaptiveResult res;
    if (a == b) {
        res.converged = true;
        return res;
    }
    std::vector<Segment> segs;
    int next_idx = 0;
    auto push = [&](double lo, double hi) {
        auto [v, e] = est(lo, hi);
        segs.push_back({lo, hi, v, e, next_idx++});
    };
    push(a, b);
    while (static_cast<int>(segs.size()) < cap) {
        double total_err = 0.0;
        for (const auto& s : segs) total_err += s.err;
        if (total_err <= tol) break;
        size_t worst = 0;
        for (size_t i = 1; i < segs.size(); ++i) {
            if (segs[i].err > segs[worst].err ||
                (segs[i].err == segs[worst].err && segs[i].idx < segs[worst].idx))
                worst = i;
        }
        Segment s = segs[worst];
        segs.erase(segs.begin() + worst);
        double mid = 0.5 * (s.a + s.b);
        if (mid <= s.a || mid >= s.b) {  // interval exhausted at machine precision
            segs.push_back(s);
            break;
        }
        push(s.a, mid);
        push(mid, s.b);
    }
    std::sort(segs.begin(), segs.end(),
              [](const Segment& x, const Segment& y) { return x.a < y.a; });
    for (const auto& s : segs) {
        res.value += s.value;
        res.error_estimate += s.err;
    }
    res.cells_used = static_cast<int>(segs.size());
    res.converged = res.error_estimate <= tol;
    return res;
}

}  // namespace detail

// Adaptive integration of f over [a,b] with a two-level Gauss-Legendre
// estimate (order m vs 2m) per cell.
template <class F>
AdaptiveResult integrate_1d(const F& f, double a, double b, double tol,
                            int cap = 2000, int m = 8) {
    const Rule1D& lo = gauss_legendre(m);
    const Rule1D& hi = gauss_legendre(2 * m);
    auto est = [&](double x0, double x1) {
        double v_lo = detail::apply_rule(lo, f, x0, x1);
        double v_hi = detail::apply_rule(hi, f, x0, x1);
        return std::pair<double, double>(v_hi, std::fabs(v_hi - v_lo));
    };
    return detail::adapt_1d(est, a, b, tol, cap);
}

// Adaptive integration with the classical 7/15 Gauss-Kronrod pair per cell.
template <class F>
AdaptiveResult integrate_gk15(const F& f, double a, double b, double tol,
                              int cap = 2000) {
    // node | Gauss-7 weight | Kronrod-15 weight
    static const double nw[8][3] = {
        {0.000000000000000, 0.417959183673469, 0.209482141084728},
        {0.405845151377397, 0.381830050505119, 0.190350578064785},
        {0.741531185599394, 0.279705391489277, 0.140653259715525},
        {0.949107912342759, 0.129484966168870, 0.063092092629979},
        {0.207784955007898, 0.0, 0.204432940075298},
        {0.586087235467691, 0.0, 0.169004726639267},
        {0.864864423359769, 0.0, 0.104790010322250},
        {0.991455371120813, 0.0, 0.022935322010529}};
    auto est = [&](double x0, double x1) {
        double mid = 0.5 * (x0 + x1), half = 0.5 * (x1 - x0);
        double y0 = f(mid);
        double g7 = nw[0][1] * y0, k15 = nw[0][2] * y0;
        for (int i = 1; i < 8; ++i) {
            double dx = half * nw[i][0];
            double yi = f(mid + dx) + f(mid - dx);
            g7 += nw[i][1] * yi;
            k15 += nw[i][2] * yi;
        }
        g7 *= half;
        k15 *= half;
        return std::pair<double, double>(k15, std::fabs(k15 - g7));
    };
    return detail::adapt_1d(est, a, b, tol, cap);
}

// Adaptive tensor-product integration over [0,1]^2 by quad-tree subdivision,
// 8x8 vs 16x16 Gauss-Legendre two-level estimate per cell.
template <class F2>
AdaptiveResult integrate_2d(const F2& f, double tol, int cap = 4096, int m = 8) {
    const Rule1D& lo = gauss_legendre(m);
    const Rule1D& hi = gauss_legendre(2 * m);
    auto tensor = [&](const Rule1D& r, double x0, double y0, double h) {
        double cx = x0 + 0.5 * h, cy = y0 + 0.5 * h, half = 0.5 * h;
        double s = 0.0;
        for (int i = 0; i < r.order; ++i) {
            double xi = cx + half * r.nodes[i];
            double row = 0.0;
            for (int j = 0; j < r.order; ++j)
                row += r.weights[j] * f(xi, cy + half * r.nodes[j]);
            s += r.weights[i] * row;
        }
        return s * half * half;
    };

    struct Cell {
        double x, y, h, value, err;
        int idx;
    };
    std::vector<Cell> cells;
    int next_idx = 0;
    auto push = [&](double x, double y, double h) {
        double v_lo = tensor(lo, x, y, h);
        double v_hi = tensor(hi, x, y, h);
        cells.push_back({x, y, h, v_hi, std::fabs(v_hi - v_lo), next_idx++});
    };
    push(0.0, 0.0, 1.0);
    while (static_cast<int>(cells.size()) < cap) {
        double total_err = 0.0;
        for (const auto& c : cells) total_err += c.err;
        if (total_err <= tol) break;
        size_t worst = 0;
        for (size_t i = 1; i < cells.size(); ++i) {
            if (cells[i].err > cells[worst].err ||
                (cells[i].err == cells[worst].err && cells[i].idx < cells[worst].idx))
                worst = i;
        }
        Cell c = cells[worst];
        cells.erase(cells.begin() + worst);
        double h2 = 0.5 * c.h;
        if (h2 <= 0.0) {
            cells.push_back(c);
            break;
        }
        push(c.x, c.y, h2);
        push(c.x + h2, c.y, h2);
        push(c.x, c.y + h2, h2);
        push(c.x + h2, c.y + h2, h2);
    }
    std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
        if (a.y != b.y) return a.y < b.y;
        if (a.x != b.x) return a.x < b.x;
        return a.h < b.h;
    });
    AdaptiveResult res;
    for (const auto& c : cells) {
        res.value += c.value;
        res.error_estimate += c.err;
    }
    res.cells_used = static_cast<int>(cells.size());
    res.converged = res.error_estimate <= tol;
    return res;
}

// O(h^2) central difference.
template <class F>
double central_diff(const F& f, double x0, double h) {
    return (f(x0 + h) - f(x0 - h)) / (2.0 * h);
}

// O(h^4) Richardson-extrapolated central difference.
template <class F>
double richardson_diff(const F& f, double x0, double h) {
    double d1 = central_diff(f, x0, h);
    double d2 = central_diff(f, x0, 0.5 * h);
    return (4.0 * d2 - d1) / 3.0;
}

}  // namespace itheta
