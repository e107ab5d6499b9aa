#pragma once

#include <cstdint>

#include "qlsp/problem.hpp"
#include "qlsp/types.hpp"

namespace qlsp {

// Exact one-ancilla unitary dilation of a Hermitian contraction:
// U = [[M, sqrt(I - M^2)], [sqrt(I - M^2), -M]] with M = B/alpha.
struct BlockEncoding {
  double alpha = 1.0;
  int ancillas = 1;
  Matrix u;
  double epsilon_enc = 0.0;

  int block_dim() const { return static_cast<int>(u.rows()) / 2; }
  Matrix extracted_block() const {
    const int d = block_dim();
    return u.topLeftCorner(d, d);
  }
};

BlockEncoding dilate(const Eigen::Ref<const Matrix>& b_over_alpha,
                     double alpha = 1.0);

// Query accounting for the sparse-access oracle model; alpha_model = s.
struct OracleCostModel {
  int sparsity = 0;
  double alpha_model = 0.0;
  std::uint64_t o_c1 = 0;
  std::uint64_t o_c2 = 0;
  std::uint64_t o_b = 0;
  std::uint64_t o_b1 = 0;

  explicit OracleCostModel(int s = 0)
      : sparsity(s), alpha_model(static_cast<double>(s)) {}

  // One block-encoding use costs one O_{C,1} plus one O_{C,2} query.
  void charge_block_encoding_use(std::uint64_t times) {
    o_c1 += times;
    o_c2 += times;
  }
  std::uint64_t total() const { return o_c1 + o_c2 + o_b + o_b1; }
};

// Row-wise sparse access to the augmented matrix C, mirroring the oracle
// pair O_{C,1} (column of the l-th structural nonzero) and O_{C,2} (value).
// Indices are 0-based. Padding slots use the self-loop convention: the
// column query returns the row's own index and the value there reads as the
// true matrix entry, so a full (row, ordinal) sweep rebuilds C exactly.
class SparseOracle {
 public:
  SparseOracle(const AugmentedSystem& sys, OracleCostModel& model);

  // O_{C,1}: column of the `ordinal`-th structural nonzero of `row`,
  // or the self-loop sentinel when the ordinal exceeds the row count.
  int column_of(int row, int ordinal);

  // O_{C,2}: matrix element C(row, col). Reads on the b column (col == n)
  // additionally tick the O_{b,1} counter.
  Complex value_at(int row, int col);

  int rows() const { return static_cast<int>(columns_.size()); }
  int row_nonzeros(int row) const;
  int max_row_nonzeros() const;

 private:
  const AugmentedSystem& sys_;
  OracleCostModel& model_;
  std::vector<std::vector<int>> columns_;  // structural pattern per row
};

}  // namespace qlsp
