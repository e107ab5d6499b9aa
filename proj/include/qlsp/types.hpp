#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>

namespace qlsp {

using Real = double;
using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Central tolerance table. Tests assert against these same constants so the
// checks cannot drift from the implementation.
namespace tol {
inline constexpr double hermitian_input = 1e-12;
inline constexpr double reconstruction = 1e-10;
inline constexpr double orthonormality = 1e-10;
inline constexpr double unitarity = 1e-10;
inline constexpr double state_norm = 1e-10;
inline constexpr double null_singular_value = 1e-10;
inline constexpr double rank_deficiency = 1e-12;
inline constexpr double gap_slack = 1e-8;
inline constexpr double sigma_bound_slack = 1e-8;
inline constexpr double interlacing_slack = 1e-9;
inline constexpr double theorem1_angle = 1e-8;
inline constexpr double degenerate_decomposition = 1e-12;
inline constexpr double phase_residual = 1e-10;
inline constexpr double qsp_equivalence = 1e-8;
inline constexpr double cheb_recurrence = 1e-12;
}  // namespace tol

}  // namespace qlsp
