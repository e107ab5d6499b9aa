#pragma once

#include <random>

#include "qlsp/types.hpp"

namespace qlsp {

// Full SVD M = left * diag(singular_values) * right.adjoint().
// `right` is always the full square factor, so for an N x (N+1) input the
// null-space right singular vector is present as the last column.
struct SvdResult {
  Matrix left;
  RealVector singular_values;  // descending, non-negative; length min(rows, cols)
  Matrix right;
};

// Hermitian eigendecomposition, eigenvalues ascending, eigenvectors
// orthonormal columns.
struct EigResult {
  RealVector eigenvalues;
  Matrix eigenvectors;
};

SvdResult svd(const Eigen::Ref<const Matrix>& m);

EigResult eig_hermitian(const Eigen::Ref<const Matrix>& m);

// exp(-i * m * t) for Hermitian m, via eigendecomposition.
Matrix expm_i(const Eigen::Ref<const Matrix>& m, double t);
Matrix expm_i(const EigResult& eig, double t);
Vector expm_i_apply(const EigResult& eig, double t, const Vector& state);

// Chebyshev polynomial of the first kind, stable for |y| > 1 through the
// hyperbolic branch.
double chebyshev_T(int k, double y);

// log|T_k(y)| and the sign of T_k(y), valid for |y| >= 1; used where the
// plain value would overflow.
struct LogAbsT {
  double log_abs;
  double sign;
};
LogAbsT chebyshev_T_log(int k, double y);

// Max entrywise |M - M^\dagger|.
double hermiticity_defect(const Eigen::Ref<const Matrix>& m);

Vector normalized(const Vector& v);

// |<a, b>|^2 for unit vectors (inputs are normalized defensively).
double fidelity(const Vector& a, const Vector& b);

Vector random_unit_vector(int dim, std::mt19937_64& rng);

}  // namespace qlsp
