#pragma once

#include <cstdint>

#include "qlsp/linalg.hpp"
#include "qlsp/types.hpp"

namespace qlsp {

enum class SpectrumShape { geometric, two_cluster, linear };

// A linear system A x = b with controlled singular spectrum:
// sigma_1(A) = 1, sigma_N(A) = 1/kappa, ||b|| = 1.
struct LseInstance {
  Matrix a;
  Vector b;
  double kappa = 1.0;
  int sparsity = 0;  // max nonzeros per row of the augmented matrix (A | b/beta)
  std::uint64_t seed = 0;
  SpectrumShape shape = SpectrumShape::geometric;

  int size() const { return static_cast<int>(a.rows()); }
};

LseInstance generate_instance(int n, double kappa, int sparsity,
                              std::uint64_t seed, SpectrumShape shape);

// The augmented matrix C = (A | b/beta), its Hermitian dilation
// [[0, C], [C^dag, 0]], and the cached spectral data every solver needs.
struct AugmentedSystem {
  double beta = 1.0;
  Matrix augmented;          // C, n x (n+1)
  Matrix dilation;           // (2n+1) x (2n+1), Hermitian by construction
  SvdResult svd_c;           // full right factor: null vector = last column
  RealVector sigma_a;        // singular values of A, descending
  double sigma_null = 0.0;   // ||C v_{n+1}||, the trailing singular value
  double gap = 0.0;          // sigma_n(C) - sigma_null
  double alpha = 1.0;        // block-encoding normalizer, >= sigma_1(C)
  int n = 0;
  int sparsity = 0;          // carried over from the instance

  // Right singular vector of C with singular value 0 (dimension n+1).
  Vector null_vector() const { return svd_c.right.col(n); }
  // The same vector embedded in the register space of the dilation:
  // (0_n, v_{n+1}), dimension 2n+1.
  Vector embedded_null_vector() const;
  // Initial state |1> = (0, ..., 0, 1) of the register space.
  Vector one_state() const;
};

AugmentedSystem augment(const LseInstance& inst, double beta);

// Direct dense solve of A x = b (partial-pivoted LU); the classical ground
// truth for residual and Theorem-1 checks.
Vector classical_solve(const LseInstance& inst);

struct Theorem1Report {
  double angle;     // between v_{n+1} and normalized (x, -beta), radians
  double residual;  // ||C v_{n+1}||
};
Theorem1Report verify_theorem1(const AugmentedSystem& sys,
                               const Vector& x_classical);

// sigma_1 >= sbar_1 >= sigma_2 >= ... >= sbar_n > sigma_{n+1} = 0,
// each comparison within tol::interlacing_slack.
bool verify_interlacing(const LseInstance& inst, const AugmentedSystem& sys);

// Split of the null vector into solution block and last component.
// Canonical phase: the last component of v is real negative, so that the
// head block is a positive multiple of x; reported d0, d1 are magnitudes.
struct SolutionDecomposition {
  double d0;
  double d1;
  Vector x_normalized;  // dimension n
  Vector v;             // phase-canonical null vector, dimension n+1
};
SolutionDecomposition decompose_solution(const AugmentedSystem& sys);

const char* to_string(SpectrumShape shape);
SpectrumShape spectrum_shape_from_string(const std::string& name);

}  // namespace qlsp
