#include "qlsp/linalg.hpp"

#include <cmath>
#include <sstream>

#include "qlsp/errors.hpp"

namespace qlsp {

SvdResult svd(const Eigen::Ref<const Matrix>& m) {
  if (m.rows() < 1 || m.cols() < 1) {
    throw ValidationError("svd: empty matrix");
  }
  if (!m.allFinite()) {
    throw ValidationError("svd: non-finite entry in input");
  }
  Eigen::JacobiSVD<Matrix> jac(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (jac.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "svd: Jacobi sweep did not converge within "
        << m.rows() * m.cols() * 40 << " rotations";
    throw NumericalError(msg.str());
  }
  return SvdResult{jac.matrixU(), jac.singularValues(), jac.matrixV()};
}

EigResult eig_hermitian(const Eigen::Ref<const Matrix>& m) {
  const double defect = hermiticity_defect(m);
  if (defect > tol::hermitian_input) {
    std::ostringstream msg;
    msg << "eig_hermitian: input is not Hermitian, max asymmetry " << defect;
    throw ValidationError(msg.str());
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  if (es.info() != Eigen::Success) {
    throw NumericalError("eig_hermitian: eigensolver did not converge");
  }
  return EigResult{es.eigenvalues(), es.eigenvectors()};
}

Matrix expm_i(const Eigen::Ref<const Matrix>& m, double t) {
  return expm_i(eig_hermitian(m), t);
}

Matrix expm_i(const EigResult& eig, double t) {
  const Vector phases =
      (Complex(0, -t) * eig.eigenvalues.cast<Complex>().array()).exp();
  return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

Vector expm_i_apply(const EigResult& eig, double t, const Vector& state) {
  const Vector phases =
      (Complex(0, -t) * eig.eigenvalues.cast<Complex>().array()).exp();
  Vector coeffs = eig.eigenvectors.adjoint() * state;
  coeffs.array() *= phases.array();
  return eig.eigenvectors * coeffs;
}

double chebyshev_T(int k, double y) {
  if (k < 0) throw ValidationError("chebyshev_T: negative degree");
  if (k == 0) return 1.0;
  if (std::abs(y) <= 1.0) {
    return std::cos(k * std::acos(y));
  }
  const double sign = (y < 0.0 && k % 2 == 1) ? -1.0 : 1.0;
  return sign * std::cosh(k * std::acosh(std::abs(y)));
}

LogAbsT chebyshev_T_log(int k, double y) {
  const double ay = std::abs(y);
  if (ay < 1.0) throw ValidationError("chebyshev_T_log: |y| < 1");
  double sign = (y < 0.0 && k % 2 == 1) ? -1.0 : 1.0;
  if (k == 0) return {0.0, 1.0};
  const double u = std::acosh(ay);
  // log cosh(k u) = k u + log((1 + exp(-2ku)) / 2)
  const double la = k * u + std::log1p(std::exp(-2.0 * k * u)) - std::log(2.0);
  return {la, sign};
}

double hermiticity_defect(const Eigen::Ref<const Matrix>& m) {
  if (m.rows() != m.cols()) {
    throw ValidationError("hermiticity_defect: matrix not square");
  }
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Vector normalized(const Vector& v) {
  const double n = v.norm();
  if (n == 0.0) throw ValidationError("normalized: zero vector");
  return v / n;
}

double fidelity(const Vector& a, const Vector& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) throw ValidationError("fidelity: zero vector");
  const double overlap = std::abs(a.dot(b)) / (na * nb);
  return overlap * overlap;
}

Vector random_unit_vector(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(dim);
  for (int i = 0; i < dim; ++i) {
    v(i) = Complex(gauss(rng), gauss(rng));
  }
  return normalized(v);
}

}  // namespace qlsp
