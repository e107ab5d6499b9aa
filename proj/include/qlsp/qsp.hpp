#pragma once

#include <functional>
#include <vector>

#include "qlsp/blockenc.hpp"
#include "qlsp/problem.hpp"
#include "qlsp/types.hpp"

namespace qlsp {

// Chebyshev eigenstate filter R_k(w; delta): equals 1 at w = 0 and is
// uniformly small on delta <= |w| <= 1.
struct FilterPolynomial {
  int half_degree = 0;     // k; the polynomial degree is 2k
  double delta = 0.5;
  RealVector cheb_coeffs;  // T_0 .. T_{2k}; odd orders are exactly 0
  double sup_error = 0.0;  // certified max of |R_k| on delta <= |w| <= 1

  int degree() const { return 2 * half_degree; }
  // Stable closed-form evaluation (log-domain Chebyshev ratio); exact 1 at 0.
  double operator()(double w) const;
};

// Filter of fixed half-degree k.
FilterPolynomial filter_polynomial(int k, double delta);

// Minimal even-degree filter with grid-certified sup error <= epsilon on
// delta <= |w| <= 1; k found by doubling then bisection.
FilterPolynomial build_filter(double delta, double epsilon, int k_cap = 10000);

// Phase factors realizing the filter through the QSP product
//   Z(phi_1) U_B Z(phi_2) U_B ... Z(phi_l) U_B,
// where Z(phi) = exp(i phi (2|0><0| - I)) acts on the encoding ancilla and
// U_B is the Hermitian reflection dilation. The real target polynomial is
// obtained as the average of the +phi and -phi branches (the one-extra-
// ancilla real-part construction).
struct PhaseFactorSequence {
  std::vector<double> phases;  // length = degree
  FilterPolynomial target;
  double residual = 0.0;       // sup misfit on a Chebyshev grid of >= 4l points
};

PhaseFactorSequence solve_phases(const FilterPolynomial& poly);

// Scalar realization Re M_00(w) of a phase sequence; what the block of the
// simulated circuit applies at eigenvalue w.
double qsp_scalar_map(const std::vector<double>& phases, double w);

namespace detail {
// Symmetric-phase Gauss-Newton solve in the Wx frame for an arbitrary even
// target bounded by 1 in magnitude; returns phases in the reflection slots.
// Exposed for the round-trip property tests.
std::vector<double> solve_even_phases(const std::function<double(double)>& f,
                                      int degree, double& residual_out);
}  // namespace detail

// One QSP pass: (<0| ⊗ I) U_phi (|0> ⊗ I) |state>, i.e. P(B/alpha) * state,
// unnormalized. Charges `degree` block-encoding uses when a model is given.
Vector apply_qsp(const BlockEncoding& enc, const PhaseFactorSequence& seq,
                 const Vector& state, OracleCostModel* model = nullptr);

// Independent reference: applies R_k(B/alpha) by the Chebyshev three-term
// recurrence on matrix-vector products, no QSP machinery involved.
Vector direct_filter_apply(const AugmentedSystem& sys,
                           const FilterPolynomial& poly, const Vector& state);

struct QefResult {
  Vector output_state;         // normalized projected state, dimension 2n+1
  double success_probability;  // squared norm before renormalization
  double fidelity_vs_target;   // against the embedded null vector
  int degree_used;
  OracleCostModel queries;
};

// Full eigenstate-filtering pipeline from the initial state |1>.
QefResult qef_solve(const AugmentedSystem& sys, double epsilon);

}  // namespace qlsp
