#include "itheta/quadrature.hpp"

#include <cmath>

namespace itheta {

namespace {

Rule1D make_rule(int m) {
    Rule1D r;
    r.order = m;
    r.nodes.resize(m);
    r.weights.resize(m);
    // Newton iteration on P_m from the Chebyshev-angle initial guess.
    for (int i = 0; i < (m + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (m + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= m; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = m * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-16) {
                // one polishing step after convergence
                p0 = 1.0;
                p1 = x;
                for (int k = 2; k <= m; ++k) {
                    double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                pp = m * (x * p1 - p0) / (x * x - 1.0);
                break;
            }
        }
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        r.nodes[i] = -x;
        r.weights[i] = w;
        r.nodes[m - 1 - i] = x;
        r.weights[m - 1 - i] = w;
    }
    if (m % 2 == 1) r.nodes[m / 2] = 0.0;
    return r;
}

}  // namespace

const Rule1D& gauss_legendre(int m) {
    if (m < 1 || m > 64) throw input_error("gauss_legendre: order must be in [1,64]");
    static const std::vector<Rule1D> cache = [] {
        std::vector<Rule1D> v;
        v.reserve(65);
        v.push_back({});  // unused slot 0
        for (int k = 1; k <= 64; ++k) v.push_back(make_rule(k));
        return v;
    }();
    return cache[m];
}

}  // namespace itheta
