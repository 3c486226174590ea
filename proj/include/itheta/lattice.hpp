#pragma once

// Even integral lattices in an ambient inner-product space, their
// discriminant groups, positive-definite majorants certified over a chart,
// and enumeration of coset vectors below a majorant bound.

#include <cstdint>
#include <utility>
#include <vector>

#include "itheta/geometry.hpp"
#include "itheta/hypercube.hpp"
#include "itheta/rational.hpp"

namespace itheta {

class EvenLattice {
  public:
    // basis is row-major n x n with column j the j-th generator in ambient
    // coordinates.  The induced Gram matrix basis^T G basis must be integral
    // with even diagonal (checked to 1e-9).
    EvenLattice(InnerProductSpace space, std::vector<double> basis);

    const InnerProductSpace& space() const { return V_; }
    int dim() const { return V_.dim(); }
    int64_t gram(int i, int j) const { return g_[static_cast<size_t>(i) * dim() + j]; }
    const std::vector<int64_t>& gram_int() const { return g_; }
    int64_t discriminant() const;  // |det gram|

    // Ambient vector of rational lattice-basis coordinates.
    Vec to_ambient(const std::vector<Rational>& coords) const;
    Vec to_ambient_shifted(const std::vector<int64_t>& k,
                           const std::vector<Rational>& mu) const;

  private:
    InnerProductSpace V_;
    std::vector<double> basis_;
    std::vector<int64_t> g_;
};

struct Coset {
    std::vector<Rational> mu;  // coordinates in the lattice basis, in [0,1)
};

// Coset representatives of L^dual / L via the Smith normal form of the Gram
// matrix; |det gram| of them, closed under negation mod 1.
std::vector<Coset> discriminant_group(const EvenLattice& L);

struct MajorantForm {
    int n = 0;
    std::vector<double> m;  // row-major SPD
    double operator()(const Vec& x) const {
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
            double row = 0.0;
            for (int j = 0; j < n; ++j) row += m[static_cast<size_t>(i) * n + j] * x[j];
            s += x[i] * row;
        }
        return s;
    }
};

// The ambient matrix of (x,x)_z = (x,x) + 2 R(x,z) at a fixed frame.
MajorantForm majorant_matrix(const InnerProductSpace& V,
                             const std::vector<Vec>& frame);

// A single positive form below every majorant on the chart: 0.9 times the
// grid minimum (9x9) of the smallest eigenvalue of the pointwise majorant,
// times the identity reference form.
MajorantForm majorant_on_chart(const SurfaceChart& chart);

// Same construction over the hypercube of an r-pair collection (9 grid
// points per axis for r <= 2, 7 for r = 3, 5 beyond).
MajorantForm majorant_on_pairs(const InnerProductSpace& V, const VecPairs& pairs);

struct LatticePoint {
    std::vector<int64_t> k;  // integer coordinates in the lattice basis
    Vec x;                   // ambient vector of k + mu
    double norm_m;           // value of the majorant form at x
};

// All x in L + mu with (x,x)_M <= bound, each exactly once, sorted by
// ((x,x)_M, lexicographic k).
std::vector<LatticePoint> enumerate_points(const EvenLattice& L, const Coset& mu,
                                           const MajorantForm& M, double bound);

// (x,x)/2 as an exact rational for x = k + mu in lattice coordinates.
Rational q_exponent(const EvenLattice& L, const Coset& mu,
                    const std::vector<int64_t>& k);

// (mu,nu) mod 1 as an exact rational (pairing on the discriminant group).
Rational coset_pairing(const EvenLattice& L, const Coset& mu, const Coset& nu);

}  // namespace itheta
