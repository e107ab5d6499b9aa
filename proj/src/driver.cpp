#include "qlsp/driver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qlsp/errors.hpp"
#include "qlsp/qrt.hpp"
#include "qlsp/qsp.hpp"

namespace qlsp {
namespace {

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// d1 from a prepared register state: exact mode reads the amplitude of the
// last component, sampled mode draws Born-rule counts. Running the solver
// `shots` times and measuring once each is statistically identical to
// sampling `shots` outcomes from one exact simulation, which is what we do.
D1Estimate d1_from_state(const Vector& register_state, int shots,
                         std::uint64_t seed, Mode mode) {
  const double p = std::norm(register_state(register_state.size() - 1)) /
                   register_state.squaredNorm();
  D1Estimate est;
  if (mode == Mode::exact) {
    est.d1 = std::sqrt(p);
    est.std_error = 0.0;
    return est;
  }
  if (shots < 1) throw ValidationError("estimate_d1: shots must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  int hits = 0;
  for (int i = 0; i < shots; ++i) hits += (unif(rng) < p) ? 1 : 0;
  if (hits == 0) {
    throw EstimationError(
        "estimate_d1: no outcome landed on the last component; beta is "
        "grossly mis-set");
  }
  const double freq = static_cast<double>(hits) / shots;
  est.d1 = std::sqrt(freq);
  est.std_error = std::sqrt(freq * (1.0 - freq) / shots) / (2.0 * est.d1);
  est.successes = hits;
  est.shots = shots;
  return est;
}

double predicted_d1(double x_norm, double beta) {
  return beta / std::sqrt(beta * beta + x_norm * x_norm);
}

}  // namespace

PipelineRun run_pipeline(const AugmentedSystem& sys, Method method,
                         double state_error_target, double kappa,
                         std::uint64_t seed, double d1_hint) {
  PipelineRun run;
  if (method == Method::qef) {
    // Normalized output error is at most eps_f sqrt(1-d1^2)/d1 with
    // d1 >= 0.4 everywhere the driver operates.
    const double eps_filter = 0.4 * state_error_target;
    QefResult qef = qef_solve(sys, eps_filter);
    run.register_state = std::move(qef.output_state);
    run.queries = qef.queries;
    run.degree_or_time = qef.degree_used;
    return run;
  }

  const double d1 =
      std::isfinite(d1_hint) ? d1_hint : decompose_solution(sys).d1;
  QrtConfig cfg;
  cfg.coupling = choose_coupling(
      sys, kappa, state_error_target * state_error_target);
  cfg.time = std::numbers::pi / (2.0 * cfg.coupling * d1);
  const double p_pred = std::pow(std::sin(cfg.coupling * cfg.time * d1), 2);
  cfg.max_rounds =
      std::max(10, static_cast<int>(std::ceil(10.0 / std::max(p_pred, 1e-6))));
  cfg.rng_seed = seed;

  QrtRunRecord rec = qrt_solve(sys, cfg);
  run.register_state = std::move(rec.final_state);
  run.queries = OracleCostModel(sys.sparsity);
  const double alpha_h = cfg.omega / 2.0 +
                         std::max(sys.alpha, std::abs(cfg.epsilon0)) +
                         cfg.coupling;
  run.queries.charge_block_encoding_use(estimate_qrt_queries(
      cfg, alpha_h, std::min(state_error_target, 0.5), sys.sparsity));
  run.degree_or_time = cfg.time;
  return run;
}

D1Estimate estimate_d1(const AugmentedSystem& sys, Method method, int shots,
                       std::uint64_t seed, Mode mode, double kappa,
                       double state_error_target) {
  const PipelineRun run =
      run_pipeline(sys, method, state_error_target, kappa, mix_seed(seed));
  return d1_from_state(run.register_state, shots, mix_seed(seed ^ 0xd1), mode);
}

CalibrationTrace calibrate_beta(const LseInstance& inst, Method method,
                                std::uint64_t seed, const SolverOptions& opts) {
  CalibrationTrace trace;
  const double kappa = inst.kappa;
  trace.beta1 = kappa;

  const AugmentedSystem sys1 = augment(inst, trace.beta1);
  const PipelineRun run1 =
      run_pipeline(sys1, method, opts.calibration_epsilon, kappa,
                   mix_seed(seed ^ 0xca1), 1.0 / std::numbers::sqrt2);
  const D1Estimate est1 =
      d1_from_state(run1.register_state, opts.shots, mix_seed(seed ^ 0xca2),
                    opts.mode);
  trace.d1_phase1 = est1.d1;
  const double d0_1 = std::sqrt(std::max(0.0, 1.0 - est1.d1 * est1.d1));
  trace.x_norm_estimate = trace.beta1 * d0_1 / est1.d1;
  trace.beta2 = std::clamp(trace.x_norm_estimate, 1.0, kappa);

  const auto measure_phase2 = [&](double beta, std::uint64_t s) {
    const AugmentedSystem sys2 = augment(inst, beta);
    const PipelineRun run =
        run_pipeline(sys2, method, opts.calibration_epsilon, kappa,
                     mix_seed(s ^ 0xca3),
                     predicted_d1(trace.x_norm_estimate, beta));
    return d1_from_state(run.register_state, opts.shots, mix_seed(s ^ 0xca4),
                         opts.mode);
  };

  D1Estimate est2 = measure_phase2(trace.beta2, seed);
  trace.d1_phase2 = est2.d1;
  auto in_band = [](double d1) {
    const double d0 = std::sqrt(std::max(0.0, 1.0 - d1 * d1));
    return d1 >= 0.4 && d1 <= 0.8 && d0 >= 0.4 && d0 <= 0.8;
  };
  trace.d1_in_band = in_band(est2.d1);
  if (!trace.d1_in_band) {
    // One re-calibration pass from the phase-2 statistics.
    const double d0_2 = std::sqrt(std::max(0.0, 1.0 - est2.d1 * est2.d1));
    trace.x_norm_estimate = trace.beta2 * d0_2 / est2.d1;
    trace.beta2 = std::clamp(trace.x_norm_estimate, 1.0, kappa);
    est2 = measure_phase2(trace.beta2, seed ^ 0x5eca1);
    trace.d1_phase2 = est2.d1;
    trace.recalibrated = true;
    trace.d1_in_band = in_band(est2.d1);
  }
  return trace;
}

Vector extract_solution(const Vector& v, double beta2, int shots,
                        std::uint64_t seed, Mode mode) {
  (void)beta2;
  const int n = static_cast<int>(v.size()) - 1;
  if (n < 1) throw ValidationError("extract_solution: state too small");
  const double norm2 = v.squaredNorm();
  const double accept_exact = v.head(n).squaredNorm() / norm2;

  double accept = accept_exact;
  if (mode == Mode::sampled) {
    if (shots < 1) throw ValidationError("extract_solution: shots must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    int kept = 0;
    for (int i = 0; i < shots; ++i) kept += (unif(rng) < accept_exact) ? 1 : 0;
    accept = static_cast<double>(kept) / shots;
  }
  if (accept < 0.01) {
    std::ostringstream msg;
    msg << "extract_solution: post-selection acceptance " << accept
        << " below 1%, beta is mis-calibrated";
    throw PostSelectionError(msg.str());
  }

  // Post-selection keeps the solution block as a pure state; fix the global
  // phase by the same convention as decompose_solution when possible.
  Vector head = v.head(n);
  const Complex last = v(n);
  if (std::abs(last) >= tol::degenerate_decomposition) {
    head *= -std::abs(last) / last;
  }
  return head / head.norm();
}

SolveReport solve(const LseInstance& inst, Method method, double epsilon,
                  std::uint64_t seed, const SolverOptions& opts) {
  if (!(epsilon > 0.0 && epsilon <= 0.1)) {
    throw ValidationError("solve: epsilon must lie in (0, 0.1]");
  }
  const auto t_start = std::chrono::steady_clock::now();
  const auto phase = [](const char* name, auto&& fn) {
    try {
      return fn();
    } catch (const std::exception& e) {
      throw NumericalError(std::string("solve[") + name + "]: " + e.what());
    }
  };

  SolveReport report;
  report.method = method;
  report.seed = seed;

  const Vector x_classical = classical_solve(inst);

  report.trace = phase("calibration", [&] {
    return calibrate_beta(inst, method, seed, opts);
  });
  report.beta_phase1 = report.trace.beta1;
  report.beta_phase2 = report.trace.beta2;

  const AugmentedSystem sys = augment(inst, report.beta_phase2);
  const double state_error_target =
      epsilon / std::max(1.0, 1.1 * report.trace.x_norm_estimate);

  const PipelineRun run = phase("solver", [&] {
    return run_pipeline(sys, method, state_error_target, inst.kappa,
                        mix_seed(seed ^ 0x50f),
                        predicted_d1(report.trace.x_norm_estimate,
                                     report.beta_phase2));
  });
  report.queries = run.queries;
  report.degree_or_time = run.degree_or_time;

  const D1Estimate d1_est = phase("d1-estimation", [&] {
    return d1_from_state(run.register_state, opts.shots,
                         mix_seed(seed ^ 0xe57), opts.mode);
  });
  report.d1_estimate = d1_est.d1;
  report.d1_std_error = d1_est.std_error;

  // The register output is (0, v) up to the solver error; keep the v block.
  const int n = inst.size();
  const Vector v_block = normalized(run.register_state.tail(n + 1));
  report.x_estimate = phase("extraction", [&] {
    return extract_solution(v_block, report.beta_phase2, opts.shots,
                            mix_seed(seed ^ 0xe7a), opts.mode);
  });

  const double d0 =
      std::sqrt(std::max(0.0, 1.0 - report.d1_estimate * report.d1_estimate));
  report.x_norm_estimate = report.beta_phase2 * d0 / report.d1_estimate;

  report.residual = (inst.a * (report.x_estimate * report.x_norm_estimate) -
                     inst.b).norm() / inst.b.norm();
  report.state_fidelity = fidelity(report.x_estimate, x_classical);
  report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  return report;
}

const char* to_string(Method m) { return m == Method::qef ? "QEF" : "QRT"; }

Method method_from_string(const std::string& name) {
  if (name == "qef" || name == "QEF") return Method::qef;
  if (name == "qrt" || name == "QRT") return Method::qrt;
  throw ValidationError("unknown method: " + name);
}

const char* to_string(Mode m) { return m == Mode::exact ? "exact" : "sampled"; }

Mode mode_from_string(const std::string& name) {
  if (name == "exact") return Mode::exact;
  if (name == "sampled") return Mode::sampled;
  throw ValidationError("unknown mode: " + name);
}

}  // namespace qlsp
