#pragma once

// The series layer: the closed-form surface integral, holomorphic sign
// series, completed theta values with certified truncation, modular
// transformation checks, shadows by two routes, unary theta factors, and
// the rank-r generalization.

#include <complex>
#include <map>
#include <vector>

#include "itheta/errfn.hpp"
#include "itheta/lattice.hpp"

namespace itheta {

using Cplx = std::complex<double>;

struct TauPoint {
    double u = 0.0;
    double v = 1.0;  // upper half-plane: v > 0
};

struct QSeries {
    Coset coset;
    std::map<Rational, double> terms;  // exponent -> coefficient
    double guarantee = 0.0;            // exponents <= guarantee are complete
};

// I(y;S) in closed form: -(1/4) of the alternating sum of the four boosted
// error functions evaluated at sqrt(2) y.
double closed_form_I(const FrameConfig& cfg, const Vec& y,
                     const QuadratureSpec& spec = {});

// sum over x in L+mu of the sign product times q^{(x,x)/2}, complete through
// qmax: since (x,x) >= (x,x)_S whenever the sign product is nonzero, the
// enumeration bound (x,x)_S <= 2 qmax captures every contributing term.
QSeries holomorphic_part(const EvenLattice& L, const Coset& mu,
                         const FrameConfig& cfg, double qmax);

// Rank-r version over validated pairs (throws incidence_error otherwise);
// r = 2 reproduces holomorphic_part exactly.
QSeries sign_product_series(const EvenLattice& L, const Coset& mu,
                            const VecPairs& pairs, double qmax);

// Fixed-truncation evaluator for I_mu(tau;S) = sum I(sqrt(v) x) q^{(x,x)/2}.
// Terms are enumerated once with (x,x)_S <= 2 qmax; evaluations at different
// tau reuse the term list (and cache the per-v weights, which makes a single
// evaluator not safe to share across threads).
//
// Each term is evaluated as weight(x,v) * e^{2 pi i u Q} with
//   weight = [ oint psi(sqrt(v) x) - Phi_2(x) ] |q^Q|,
// the magnitude folded into the boundary integrals: every side contributes
// a single integral whose integrand is bounded by e^{-pi v (x,x)_z}, so
// strongly timelike terms (where |q^Q| explodes and the smooth closed form
// loses all precision to cancellation) stay exact.  x = 0 uses the smooth
// closed form directly.
class CompletedTheta {
  public:
    CompletedTheta(const EvenLattice& L, const Coset& mu, const FrameConfig& cfg,
                   double qmax, QuadratureSpec spec = {});

    Cplx eval(const TauPoint& tau) const;
    // Same sum with each I computed by surface quadrature instead of the
    // closed form (the two-path cross-check).  The quadrature path carries
    // the bare q^Q amplification, so keep the truncation modest.
    Cplx eval_by_quadrature(const TauPoint& tau, double surf_tol = 1e-11) const;

    double tail_bound(double v) const;
    int term_count() const { return static_cast<int>(terms_.size()); }
    double enumeration_bound() const { return bound_; }

    struct Term {
        Vec x;
        Rational Q;
        double qx;      // (x,x)
        double phi2;
        double norm_s;
        // per boundary side: unit pairings (fixed, from, to) against x
        std::array<std::array<double, 3>, 4> side;
    };
    const std::vector<Term>& terms() const { return terms_; }
    const FrameConfig& config() const { return cfg_; }

    // weight(x,v) for one term (exposed for the shadow cross-checks).
    double term_weight(const Term& t, double v) const;

  private:
    FrameConfig cfg_;
    QuadratureSpec spec_;
    double bound_;
    double i_zero_;  // smooth I at x = 0
    std::vector<Term> terms_;
    mutable std::map<double, std::vector<double>> cache_;
    const std::vector<double>& weights(double v) const;
};

struct CompletedValue {
    Cplx value{0.0, 0.0};
    double tail = 0.0;
    int terms = 0;
};

CompletedValue completed_theta(const EvenLattice& L, const Coset& mu,
                               const FrameConfig& cfg, const TauPoint& tau,
                               double qmax, const QuadratureSpec& spec = {});

struct ModularityReport {
    char transform = '?';
    double residual = 0.0;
    Cplx measured_phase{0.0, 0.0};
    bool conclusive = true;
};

// Residual of I_mu(tau+1) = e^{2 pi i (mu,mu)/2} I_mu(tau) over all cosets.
ModularityReport verify_T(const EvenLattice& L, const FrameConfig& cfg,
                          const TauPoint& tau, double qmax,
                          const QuadratureSpec& spec = {});

// Measures r_mu = I_mu(-1/tau) / (tau^{n/2} |disc|^{-1/2} sum_nu
// e^{-2 pi i (mu,nu)} I_nu(tau)); reports the maximal pairwise spread of the
// r_mu and their mean as measured_phase.
ModularityReport verify_S(const EvenLattice& L, const FrameConfig& cfg,
                          const TauPoint& tau, double qmax,
                          const QuadratureSpec& spec = {});

// Image under the weight-lowering operator -2iv^2 d/dtaubar, assembled from
// Richardson central differences of the completed series (step 1e-4).
Cplx shadow_fd(const EvenLattice& L, const Coset& mu, const FrameConfig& cfg,
               const TauPoint& tau, double qmax, const QuadratureSpec& spec = {});

// The same image as v times the boundary theta integral of the momentum
// 1-form Psi_M, four signed line integrals per lattice term.
Cplx shadow_boundary(const EvenLattice& L, const Coset& mu, const FrameConfig& cfg,
                     const TauPoint& tau, double qmax,
                     const QuadratureSpec& spec = {});

// Weight-3/2 unary theta of the rank-1 lattice Z gen shifted by frac*gen:
//   sum over x0 = (m+frac) gen of (x0, C1/||C1||) q^{-(x0,x0)/2}.
// gen must be timelike; throws degenerate_error otherwise.
Cplx unary_theta(const InnerProductSpace& V, const Vec& gen, const Rational& frac,
                 const Vec& C1, const TauPoint& tau);

// Line integral of the rank-1 theta kernel along the geodesic between two
// same-component timelike vectors of a Lorentzian space:
//   sqrt(v) int_0^1 (x1, d/dt nu(t)) e^{-2 pi v (x1, nu(t))^2} dt,
// nu(t) = unit((1-t)C + t C').  The constant holomorphic factor
// q^{(x1,x1)/2} is left to the caller.
double zwegers_line_integral(const InnerProductSpace& V1, const Vec& x1,
                             const Vec& C, const Vec& Cp, const TauPoint& tau,
                             const QuadratureSpec& spec = {});

}  // namespace itheta
