#pragma once

// Rank-r generalization of the spanning surface: geodesic hypercubes of
// oriented negative r-planes built from r pairs of timelike vectors, with
// the inductive incidence validation and the r null equations.

#include <optional>
#include <utility>
#include <vector>

#include "itheta/geometry.hpp"

namespace itheta {

using VecPairs = std::vector<std::pair<Vec, Vec>>;

// Orthonormal r-frame spanning span{b_0..b_{r-1}} via the symmetric inverse
// square root of P = -(B,B); throws degenerate_error unless the span is a
// negative r-plane.
std::vector<Vec> orthonormal_r_frame(const InnerProductSpace& V,
                                     const std::vector<Vec>& b);

// sum_i (x, zeta_i)^2 over an orthonormal r-frame.
double r_quantity_frame(const InnerProductSpace& V, const Vec& x,
                        const std::vector<Vec>& frame);

// B_j(s_j) = (1-s_j) C_j + s_j C_j'
std::vector<Vec> hypercube_point(const VecPairs& pairs,
                                 const std::vector<double>& s);

// The induced form on the orthogonal complement of a timelike vector.
struct Subspace {
    InnerProductSpace space;  // (n-1)-dimensional induced form
    std::vector<Vec> basis;   // ambient representatives of the basis

    Subspace(InnerProductSpace s, std::vector<Vec> b)
        : space(std::move(s)), basis(std::move(b)) {}

    Vec to_ambient(const Vec& coords) const;
    // Coordinates of the orthogonal projection of an ambient vector.
    Vec project_coords(const InnerProductSpace& ambient, const Vec& x) const;
};
Subspace orthogonal_complement(const InnerProductSpace& V, const Vec& C);

struct PairsReport {
    bool corners_negative = false;
    bool corners_distinct = false;
    bool same_component = false;
    bool projections_pass = false;
    bool pass = false;
};

// Conditions on r pairs: every corner tuple spans a negative r-plane, the
// 2^r corner planes are distinct and lie on one component, and for each of
// the 2r vectors the remaining pairs, projected to its orthogonal
// complement, satisfy the same conditions one rank down (rank 2 bottoms out
// at the surface incidence conditions, rank 1 at a same-component pair).
PairsReport validate_pairs(const InnerProductSpace& V, const VecPairs& pairs);

// Solutions of the r null equations (1-s_j)(x,C_j) + s_j (x,C_j') = 0 when
// every s_j lands in [0,1]; for regular x presence is equivalent to a
// nonzero sign product.
std::optional<std::vector<double>> hypercube_intersection(
    const InnerProductSpace& V, const VecPairs& pairs, const Vec& x);

}  // namespace itheta
