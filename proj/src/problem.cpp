#include "qlsp/problem.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "qlsp/errors.hpp"

namespace qlsp {
namespace {

RealVector make_spectrum(int n, double kappa, SpectrumShape shape) {
  RealVector s(n);
  const double lo = 1.0 / kappa;
  switch (shape) {
    case SpectrumShape::geometric:
      for (int j = 0; j < n; ++j) {
        s(j) = std::pow(kappa, -static_cast<double>(j) / (n - 1));
      }
      break;
    case SpectrumShape::two_cluster:
      // Smallest value isolated at 1/kappa, the rest clustered near 1;
      // worst case for the gap once the b column is appended.
      for (int j = 0; j < n - 1; ++j) {
        s(j) = 1.0 - 0.1 * (1.0 - lo) * j / std::max(1, n - 2);
      }
      s(n - 1) = lo;
      break;
    case SpectrumShape::linear:
      for (int j = 0; j < n; ++j) {
        s(j) = 1.0 - (1.0 - lo) * j / (n - 1);
      }
      break;
  }
  return s;
}

Matrix haar_unitary(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    q.col(j) *= (d == Complex(0) ? Complex(1) : d / std::abs(d));
  }
  return q;
}

// Applies random complex Givens rotations to a working matrix, rejecting
// any rotation that would push a row past `row_budget` structural nonzeros.
// Unitarity of the accumulated factors is exact up to rounding, so the
// prescribed spectrum is preserved.
void sparsify_rotations(Matrix& a, int row_budget, std::mt19937_64& rng) {
  const int n = static_cast<int>(a.rows());
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> pattern(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) pattern(i, j) = a(i, j) != Complex(0);

  std::uniform_int_distribution<int> pick(0, n - 1);
  std::uniform_real_distribution<double> angle(0.2, std::numbers::pi / 2 - 0.2);
  std::uniform_real_distribution<double> phase(0.0, 2 * std::numbers::pi);
  std::bernoulli_distribution side(0.5);

  const int attempts = 8 * n * n;
  for (int it = 0; it < attempts; ++it) {
    int p = pick(rng), q = pick(rng);
    if (p == q) continue;
    const double th = angle(rng);
    const Complex ph = std::polar(1.0, phase(rng));
    const Complex c = std::cos(th);
    const Complex s = std::sin(th) * ph;
    if (side(rng)) {
      // Left rotation mixes rows p and q: both rows take the union support.
      int merged = 0;
      for (int j = 0; j < n; ++j) merged += (pattern(p, j) || pattern(q, j));
      if (merged > row_budget) continue;
      const Eigen::RowVectorXcd rp = a.row(p), rq = a.row(q);
      a.row(p) = c * rp + s * rq;
      a.row(q) = -std::conj(s) * rp + c * rq;
      for (int j = 0; j < n; ++j) {
        const bool nz = pattern(p, j) || pattern(q, j);
        pattern(p, j) = nz;
        pattern(q, j) = nz;
      }
    } else {
      // Right rotation mixes columns p and q: rows touching exactly one of
      // the two columns gain one entry.
      bool ok = true;
      for (int i = 0; i < n && ok; ++i) {
        if (pattern(i, p) != pattern(i, q)) {
          int cnt = 0;
          for (int j = 0; j < n; ++j) cnt += pattern(i, j);
          if (cnt + 1 > row_budget) ok = false;
        }
      }
      if (!ok) continue;
      const Vector cp = a.col(p), cq = a.col(q);
      a.col(p) = c * cp + s * cq;
      a.col(q) = -std::conj(s) * cp + c * cq;
      for (int i = 0; i < n; ++i) {
        const bool nz = pattern(i, p) || pattern(i, q);
        pattern(i, p) = nz;
        pattern(i, q) = nz;
      }
    }
  }
}

}  // namespace

LseInstance generate_instance(int n, double kappa, int sparsity,
                              std::uint64_t seed, SpectrumShape shape) {
  if (n < 2) throw ValidationError("generate_instance: need n >= 2");
  if (kappa < 1.0) throw ValidationError("generate_instance: kappa < 1");
  if (sparsity < 2) {
    throw ValidationError(
        "generate_instance: invalid sparsity, the augmented matrix needs the "
        "b column plus at least one entry of A per row (s >= 2)");
  }
  if (sparsity > n + 1) {
    throw ValidationError("generate_instance: sparsity exceeds n + 1");
  }

  std::mt19937_64 rng(seed);
  const RealVector spectrum = make_spectrum(n, kappa, shape);
  Matrix a;
  if (sparsity >= n + 1) {
    a = haar_unitary(n, rng) * spectrum.asDiagonal().toDenseMatrix() *
        haar_unitary(n, rng).adjoint();
  } else {
    a = spectrum.cast<Complex>().asDiagonal();
    // Random diagonal phases keep the matrix genuinely complex without
    // touching the sparsity pattern.
    std::uniform_real_distribution<double> phase(0.0, 2 * std::numbers::pi);
    Vector dl(n), dr(n);
    for (int i = 0; i < n; ++i) dl(i) = std::polar(1.0, phase(rng));
    for (int i = 0; i < n; ++i) dr(i) = std::polar(1.0, phase(rng));
    a = dl.asDiagonal() * a * dr.asDiagonal();
    sparsify_rotations(a, sparsity - 1, rng);
  }

  LseInstance inst;
  inst.a = std::move(a);
  inst.b = random_unit_vector(n, rng);
  inst.kappa = kappa;
  inst.sparsity = sparsity;
  inst.seed = seed;
  inst.shape = shape;
  return inst;
}

Vector AugmentedSystem::embedded_null_vector() const {
  Vector v = Vector::Zero(2 * n + 1);
  v.tail(n + 1) = null_vector();
  return v;
}

Vector AugmentedSystem::one_state() const {
  Vector v = Vector::Zero(2 * n + 1);
  v(2 * n) = Complex(1.0);
  return v;
}

AugmentedSystem augment(const LseInstance& inst, double beta) {
  if (beta <= 0.0) throw ValidationError("augment: beta must be positive");
  const int n = inst.size();

  AugmentedSystem sys;
  sys.beta = beta;
  sys.n = n;
  sys.sparsity = inst.sparsity;

  const SvdResult svd_a = svd(inst.a);
  sys.sigma_a = svd_a.singular_values;
  if (sys.sigma_a(n - 1) < tol::rank_deficiency) {
    std::ostringstream msg;
    msg << "augment: A is rank deficient, smallest singular value "
        << sys.sigma_a(n - 1);
    throw RankDeficiencyError(msg.str());
  }

  sys.augmented.resize(n, n + 1);
  sys.augmented.leftCols(n) = inst.a;
  sys.augmented.col(n) = inst.b / beta;

  sys.dilation = Matrix::Zero(2 * n + 1, 2 * n + 1);
  sys.dilation.topRightCorner(n, n + 1) = sys.augmented;
  sys.dilation.bottomLeftCorner(n + 1, n) = sys.augmented.adjoint();

  sys.svd_c = svd(sys.augmented);
  sys.sigma_null = (sys.augmented * sys.svd_c.right.col(n)).norm();
  sys.gap = sys.svd_c.singular_values(n - 1) - sys.sigma_null;
  sys.alpha = sys.sigma_a(0) + 1.0 / beta;
  return sys;
}

Vector classical_solve(const LseInstance& inst) {
  return inst.a.partialPivLu().solve(inst.b);
}

Theorem1Report verify_theorem1(const AugmentedSystem& sys,
                               const Vector& x_classical) {
  const int n = sys.n;
  Vector target(n + 1);
  target.head(n) = x_classical;
  target(n) = Complex(-sys.beta);
  target.normalize();

  const Vector v = sys.null_vector();
  const double overlap = std::min(1.0, std::abs(target.dot(v)));
  return Theorem1Report{std::acos(overlap), (sys.augmented * v).norm()};
}

bool verify_interlacing(const LseInstance& inst, const AugmentedSystem& sys) {
  const int n = inst.size();
  const RealVector& sbar = sys.sigma_a;
  const RealVector& sig = sys.svd_c.singular_values;
  for (int i = 0; i < n; ++i) {
    if (sig(i) < sbar(i) - tol::interlacing_slack) return false;
    if (i + 1 < n && sbar(i) < sig(i + 1) - tol::interlacing_slack) return false;
  }
  // sbar_n > sigma_{n+1} = 0
  if (sbar(n - 1) <= sys.sigma_null + tol::interlacing_slack) return false;
  return sys.sigma_null <= tol::null_singular_value;
}

SolutionDecomposition decompose_solution(const AugmentedSystem& sys) {
  if (sys.sigma_null > tol::null_singular_value) {
    throw ValidationError("decompose_solution: trailing singular value not 0");
  }
  const int n = sys.n;
  Vector v = sys.null_vector();
  const Complex last = v(n);
  if (std::abs(last) < tol::degenerate_decomposition) {
    throw ValidationError(
        "decompose_solution: last component vanishes; beta is far below "
        "||x|| and the decomposition is degenerate");
  }
  // Canonical phase: last component real negative, so the head block is a
  // positive multiple of x.
  v *= -std::abs(last) / last;

  SolutionDecomposition dec;
  dec.d1 = -v(n).real();
  dec.d0 = v.head(n).norm();
  dec.x_normalized = v.head(n) / dec.d0;
  dec.v = std::move(v);
  return dec;
}

const char* to_string(SpectrumShape shape) {
  switch (shape) {
    case SpectrumShape::geometric: return "geometric";
    case SpectrumShape::two_cluster: return "two_cluster";
    case SpectrumShape::linear: return "linear";
  }
  return "geometric";
}

SpectrumShape spectrum_shape_from_string(const std::string& name) {
  if (name == "geometric") return SpectrumShape::geometric;
  if (name == "two_cluster") return SpectrumShape::two_cluster;
  if (name == "linear") return SpectrumShape::linear;
  throw ValidationError("unknown spectrum shape: " + name);
}

}  // namespace qlsp
