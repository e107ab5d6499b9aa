#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include "qlsp/blockenc.hpp"
#include "qlsp/problem.hpp"
#include "qlsp/types.hpp"

namespace qlsp {

enum class Method { qef, qrt };

// exact: amplitudes are read directly (separates algorithmic error from shot
// noise); sampled: every estimate comes from Born-rule counts.
enum class Mode { exact, sampled };

struct SolverOptions {
  Mode mode = Mode::exact;
  int shots = 10000;
  // State-error target of the calibration run; only d1 to a few percent is
  // needed there.
  double calibration_epsilon = 1e-4;
};

struct D1Estimate {
  double d1 = 0.0;
  double std_error = 0.0;
  int successes = 0;
  int shots = 0;
};

struct CalibrationTrace {
  double beta1 = 0.0;
  double d1_phase1 = 0.0;
  double x_norm_estimate = 0.0;
  double beta2 = 0.0;
  double d1_phase2 = 0.0;
  bool recalibrated = false;
  bool d1_in_band = true;  // d0, d1 within [0.4, 0.8] after calibration
};

struct SolveReport {
  Method method = Method::qef;
  double beta_phase1 = 0.0;
  double d1_estimate = 0.0;
  double d1_std_error = 0.0;
  double beta_phase2 = 0.0;
  Vector x_estimate;            // unit vector, dimension n
  double x_norm_estimate = 0.0;
  double residual = 0.0;        // ||A x_est * ||x||_est - b|| / ||b||
  double state_fidelity = 0.0;  // vs the classical x / ||x||
  double degree_or_time = 0.0;  // QEF: polynomial degree; QRT: evolution time
  OracleCostModel queries;
  double wall_time = 0.0;       // seconds
  std::uint64_t seed = 0;
  CalibrationTrace trace;
};

// Documented acceptance constant: solve() guarantees residual <= 5 epsilon.
inline constexpr double kResidualAcceptanceFactor = 5.0;

// One solver run at the given state-error target; returns the normalized
// register state (dimension 2n+1) plus query accounting. For QRT, d1_hint
// sets the evolution time t = pi/(2 c d1); NaN falls back to the exact
// decomposition value.
struct PipelineRun {
  Vector register_state;
  OracleCostModel queries;
  double degree_or_time = 0.0;
};
PipelineRun run_pipeline(
    const AugmentedSystem& sys, Method method, double state_error_target,
    double kappa, std::uint64_t seed,
    double d1_hint = std::numeric_limits<double>::quiet_NaN());

// Estimate d1 = |<1 | v>| by measuring the last register component of the
// solver output across `shots` repetitions (or reading the amplitude in
// exact mode).
D1Estimate estimate_d1(const AugmentedSystem& sys, Method method, int shots,
                       std::uint64_t seed, Mode mode, double kappa,
                       double state_error_target);

// Two-phase beta calibration: beta1 = kappa, estimate ||x|| = beta1 d0/d1,
// then beta2 = clamp(||x||, 1, kappa). One optional re-calibration pass when
// d1 leaves [0.4, 0.8].
CalibrationTrace calibrate_beta(const LseInstance& inst, Method method,
                                std::uint64_t seed, const SolverOptions& opts);

// Post-selection on the solution block: strips the last component of the
// (n+1)-dimensional solution-carrying state and renormalizes with the phase
// canonicalization of decompose_solution. In sampled mode the acceptance
// rate is measured from `shots` Born samples and starvation (< 1%) throws.
Vector extract_solution(const Vector& v, double beta2, int shots,
                        std::uint64_t seed, Mode mode);

SolveReport solve(const LseInstance& inst, Method method, double epsilon,
                  std::uint64_t seed, const SolverOptions& opts = {});

const char* to_string(Method m);
Method method_from_string(const std::string& name);
const char* to_string(Mode m);
Mode mode_from_string(const std::string& name);

}  // namespace qlsp
