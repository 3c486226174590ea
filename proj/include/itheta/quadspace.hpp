#pragma once

// Real inner-product spaces of arbitrary signature, their vectors, and the
// 2x2/Gram determinants that drive all of the incidence geometry.

#include <utility>
#include <vector>

#include "itheta/errors.hpp"

namespace itheta {

using Vec = std::vector<double>;

// sgn with the convention sgn(0) = 0.
inline double sgn(double t) { return (t > 0.0) ? 1.0 : (t < 0.0 ? -1.0 : 0.0); }

class InnerProductSpace {
  public:
    // gram is row-major n x n and must be symmetric to working precision.
    InnerProductSpace(int n, std::vector<double> gram);

    int dim() const { return n_; }
    double gram(int i, int j) const { return g_[static_cast<size_t>(i) * n_ + j]; }
    const std::vector<double>& gram_matrix() const { return g_; }

    // (x,y) = x^T G y
    double inner(const Vec& x, const Vec& y) const;

    // G x, the ambient covector of x
    Vec apply_gram(const Vec& x) const;

    // (#positive, #negative) eigenvalues of the form; throws
    // degenerate_error when an eigenvalue sits within 1e-10*||gram|| of 0.
    std::pair<int, int> signature() const;

    void require_dim(const Vec& x) const;

  private:
    int n_;
    std::vector<double> g_;
};

struct DeltaReport {
    double value = 0.0;
    bool positive = false;
};

// Delta(C,C') = (C,C)(C',C') - (C,C')^2
DeltaReport delta(const InnerProductSpace& V, const Vec& C, const Vec& Cp);

// Determinant of the Gram matrix of a list of vectors.
double delta_gram(const InnerProductSpace& V, const std::vector<Vec>& vs);

// C - (C,C0)/(C0,C0) C0; throws degenerate_error when (C0,C0) = 0.
Vec perp_component(const InnerProductSpace& V, const Vec& C, const Vec& C0);

// C / |(C,C)|^{1/2}; throws degenerate_error when (C,C) = 0.
Vec normalize(const InnerProductSpace& V, const Vec& C);

// Elementwise helpers used throughout.
Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scale(double s, const Vec& a);
void vec_axpy(double s, const Vec& a, Vec& y);  // y += s*a
Vec vec_lerp(const Vec& a, const Vec& b, double t);  // (1-t)a + t b

}  // namespace itheta
