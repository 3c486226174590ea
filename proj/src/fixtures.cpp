#include "itheta/fixtures.hpp"

#include <cmath>

#include "itheta/hypercube.hpp"
#include "itheta/lattice.hpp"

namespace itheta {

InnerProductSpace space_22() {
    return InnerProductSpace(4, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1, 0, 0, 0, 0, -1});
}

InnerProductSpace space_33() {
    std::vector<double> g(36, 0.0);
    for (int i = 0; i < 3; ++i) g[i * 6 + i] = 1.0;
    for (int i = 3; i < 6; ++i) g[i * 6 + i] = -1.0;
    return InnerProductSpace(6, g);
}

Vec random_vec(SplitMix64& rng, int n, double lo, double hi) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = rng.uniform(lo, hi);
    return v;
}

bool sample_config_22(SplitMix64& rng, Vec& c1, Vec& c2, Vec& c1p, Vec& c2p) {
    // Timelike directions near two separated angles in the negative plane,
    // with a spacelike jitter so the four vectors span all of V.
    double th1 = rng.uniform(0.0, 0.6);
    double th2 = th1 + rng.uniform(1.0, 1.6);
    double d1 = rng.uniform(0.4, 1.0);
    double d2 = rng.uniform(0.4, 1.0);
    auto mk = [&](double th) {
        Vec v{rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3), std::cos(th),
              std::sin(th)};
        return v;
    };
    c1 = mk(th1);
    c1p = mk(th1 + d1);
    c2 = mk(th2);
    c2p = mk(th2 + d2);
    return true;
}

namespace {

FrameConfig search_config(uint64_t seed, const Vec* fixed_c1) {
    InnerProductSpace V = space_22();
    SplitMix64 rng(seed);
    for (int attempt = 0; attempt < 100000; ++attempt) {
        Vec c1, c2, c1p, c2p;
        sample_config_22(rng, c1, c2, c1p, c2p);
        if (fixed_c1) c1 = *fixed_c1;
        bool timelike = true;
        for (const Vec* c : {&c1, &c2, &c1p, &c2p})
            if (V.inner(*c, *c) >= -0.2) timelike = false;
        if (!timelike) continue;
        FrameConfig cfg(V, c1, c2, c1p, c2p);
        if (!cfg.validation.pass) continue;
        try {
            SurfaceChart chart(cfg);  // whole square must stay negative
        } catch (const degenerate_error&) {
            continue;
        }
        return cfg;
    }
    throw degenerate_error("fixture search failed to find a valid configuration");
}

}  // namespace

FrameConfig canonical_config() {
    static const FrameConfig cfg = search_config(kCanonicalSeed, nullptr);
    return cfg;
}

FrameConfig rational_c1_config() {
    static const FrameConfig cfg = [] {
        Vec c1{0.0, 0.0, 1.0, 0.0};
        return search_config(kRationalC1Seed, &c1);
    }();
    return cfg;
}

std::vector<std::pair<Vec, Vec>> canonical_r3_pairs() {
    // The sampling recipe mirrors sample_config_22 one dimension up: three
    // timelike base directions plus jitter, kept mild so the hypercube
    // majorant stays well-conditioned (the series enumerations scale like
    // nu^{-3}; candidates below nu = 0.3 are rejected).
    // One candidate per seed; kR3Seed was scanned until the first candidate
    // passed every gate below, so this returns immediately.
    InnerProductSpace V = space_33();
    SplitMix64 rng(kR3Seed);
    std::vector<std::pair<Vec, Vec>> pairs(3);
    for (int j = 0; j < 3; ++j) {
        // each pair opens an angle inside the timelike 3-space (cyclic
        // sense keeps all corner orientations on one component); the
        // spacelike jitter is what gives the sign-product cone its short
        // lattice vectors
        double d = rng.uniform(0.85, 1.1);
        auto mk = [&](double th) {
            Vec v(6, 0.0);
            for (int i = 0; i < 3; ++i) v[i] = rng.uniform(-0.25, 0.25);
            v[3 + j] += std::cos(th);
            v[3 + (j + 1) % 3] += std::sin(th);
            return v;
        };
        pairs[j].first = mk(rng.uniform(-0.15, 0.15));
        pairs[j].second = mk(d);
        if (V.inner(pairs[j].first, pairs[j].first) >= -0.2 ||
            V.inner(pairs[j].second, pairs[j].second) >= -0.2)
            throw degenerate_error("rank-3 fixture: recorded seed out of date");
    }
    if (!validate_pairs(V, pairs).pass)
        throw degenerate_error("rank-3 fixture: recorded seed out of date");
    return pairs;
}

Vec random_regular(SplitMix64& rng, const FrameConfig& cfg, double lo, double hi) {
    for (int i = 0; i < 10000; ++i) {
        Vec x = random_vec(rng, cfg.V.dim(), lo, hi);
        if (cfg.regular(x)) return x;
    }
    throw degenerate_error("failed to sample a regular vector");
}

}  // namespace itheta
