#include "qlsp/blockenc.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qlsp/errors.hpp"
#include "qlsp/linalg.hpp"

namespace qlsp {

BlockEncoding dilate(const Eigen::Ref<const Matrix>& b_over_alpha,
                     double alpha) {
  const EigResult eig = eig_hermitian(b_over_alpha);
  const double norm2 = eig.eigenvalues.cwiseAbs().maxCoeff();
  if (norm2 > 1.0 + tol::unitarity) {
    std::ostringstream msg;
    msg << "dilate: ||B/alpha|| = " << norm2 << " exceeds 1";
    throw ValidationError(msg.str());
  }

  // sqrt(I - M^2) through the eigenbasis of M, clamping rounding residues.
  RealVector root = (1.0 - eig.eigenvalues.array().square()).cwiseMax(0.0).sqrt();
  const Matrix complement = eig.eigenvectors * root.asDiagonal() *
                            eig.eigenvectors.adjoint();

  const int d = static_cast<int>(b_over_alpha.rows());
  BlockEncoding enc;
  enc.alpha = alpha;
  enc.ancillas = 1;
  enc.u.resize(2 * d, 2 * d);
  enc.u.topLeftCorner(d, d) = b_over_alpha;
  enc.u.topRightCorner(d, d) = complement;
  enc.u.bottomLeftCorner(d, d) = complement;
  enc.u.bottomRightCorner(d, d) = -b_over_alpha;
  enc.epsilon_enc = 0.0;  // the encoded block is stored verbatim
  return enc;
}

SparseOracle::SparseOracle(const AugmentedSystem& sys, OracleCostModel& model)
    : sys_(sys), model_(model) {
  const int n = sys.n;
  columns_.resize(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n + 1; ++j) {
      if (sys.augmented(i, j) != Complex(0)) columns_[i].push_back(j);
    }
  }
  if (model.sparsity > 0 && max_row_nonzeros() > model.sparsity) {
    std::ostringstream msg;
    msg << "SparseOracle: matrix has a row with " << max_row_nonzeros()
        << " nonzeros, more than the declared sparsity " << model.sparsity;
    throw ValidationError(msg.str());
  }
}

int SparseOracle::column_of(int row, int ordinal) {
  if (row < 0 || row >= rows() || ordinal < 0) {
    throw ValidationError("column_of: index out of range");
  }
  ++model_.o_c1;
  const auto& cols = columns_[row];
  if (ordinal >= static_cast<int>(cols.size())) return row;  // padding
  return cols[ordinal];
}

Complex SparseOracle::value_at(int row, int col) {
  if (row < 0 || row >= rows() || col < 0 || col > sys_.n) {
    throw ValidationError("value_at: index out of range");
  }
  ++model_.o_c2;
  if (col == sys_.n) ++model_.o_b1;  // the b column is served by O_{b,1}
  return sys_.augmented(row, col);
}

int SparseOracle::row_nonzeros(int row) const {
  return static_cast<int>(columns_.at(row).size());
}

int SparseOracle::max_row_nonzeros() const {
  int m = 0;
  for (const auto& c : columns_) m = std::max(m, static_cast<int>(c.size()));
  return m;
}

}  // namespace qlsp
