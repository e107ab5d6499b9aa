#include "qlsp/qrt.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qlsp/errors.hpp"

namespace qlsp {
namespace {

void check_config(const QrtConfig& cfg) {
  if (std::abs(cfg.omega + cfg.epsilon0) > 1e-12) {
    throw ValidationError(
        "QrtConfig: resonance requires omega = -epsilon0");
  }
  if (cfg.coupling <= 0.0) {
    throw ValidationError("QrtConfig: coupling must be positive");
  }
}

}  // namespace

Matrix build_unperturbed(const AugmentedSystem& sys, const QrtConfig& cfg) {
  check_config(cfg);
  const int d = 2 * sys.n + 1;
  Matrix h = Matrix::Zero(2 * d, 2 * d);
  // Probe |0> block: -(omega/2) I + B.
  h.topLeftCorner(d, d) = sys.dilation;
  h.topLeftCorner(d, d).diagonal().array() -= Complex(cfg.omega / 2.0);
  // Probe |1> block: +(omega/2) I + epsilon0 |1_reg><1_reg|.
  h.bottomRightCorner(d, d).diagonal().array() += Complex(cfg.omega / 2.0);
  h(2 * d - 1, 2 * d - 1) += Complex(cfg.epsilon0);
  return h;
}

Matrix build_hamiltonian(const AugmentedSystem& sys, const QrtConfig& cfg) {
  const int d = 2 * sys.n + 1;
  Matrix h = build_unperturbed(sys, cfg);
  h.topRightCorner(d, d).diagonal().array() += Complex(cfg.coupling);
  h.bottomLeftCorner(d, d).diagonal().array() += Complex(cfg.coupling);
  return h;
}

QrtPropagator::QrtPropagator(const AugmentedSystem& sys, const QrtConfig& cfg)
    : eig_(eig_hermitian(build_hamiltonian(sys, cfg))) {}

Vector QrtPropagator::evolve(const Vector& state, double t) const {
  if (state.size() != dim()) {
    throw ValidationError("QrtPropagator: state dimension mismatch");
  }
  return expm_i_apply(eig_, t, state);
}

Vector evolve_once(const QrtPropagator& prop, const QrtConfig& cfg,
                   const Vector& state) {
  return prop.evolve(state, cfg.time);
}

ProbeMeasurement measure_probe(const Vector& state, std::mt19937_64& rng) {
  const int half = static_cast<int>(state.size()) / 2;
  const double p0 = state.head(half).squaredNorm();
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const int outcome = (unif(rng) < p0) ? 0 : 1;

  Vector collapsed = Vector::Zero(state.size());
  if (outcome == 0) {
    collapsed.head(half) = state.head(half) / std::sqrt(p0);
  } else {
    collapsed.tail(half) = state.tail(half) / std::sqrt(1.0 - p0);
  }
  return ProbeMeasurement{outcome, std::move(collapsed)};
}

QrtRunRecord qrt_solve(const AugmentedSystem& sys, const QrtConfig& cfg) {
  check_config(cfg);
  const int d = 2 * sys.n + 1;
  const SolutionDecomposition dec = decompose_solution(sys);

  QrtRunRecord rec;
  rec.predicted_p =
      std::pow(std::sin(cfg.coupling * cfg.time * dec.d1), 2);
  rec.error_budget = leakage_bound(sys, cfg, dec.d1);

  const QrtPropagator prop(sys, cfg);
  std::mt19937_64 rng(cfg.rng_seed);

  // Initial state |1>|1_reg>: probe excited, register at the last basis state.
  Vector state = Vector::Zero(2 * d);
  state(2 * d - 1) = Complex(1.0);

  for (int round = 1; round <= cfg.max_rounds; ++round) {
    state = prop.evolve(state, cfg.time);
    if (round == 1) {
      rec.decay_probability_estimate = state.head(d).squaredNorm();
    }
    ProbeMeasurement m = measure_probe(state, rng);
    rec.probe_outcomes.push_back(m.outcome);
    rec.rounds = round;
    if (m.outcome == 0) {
      rec.final_state = m.collapsed.head(d);
      rec.fidelity_vs_target =
          fidelity(rec.final_state, sys.embedded_null_vector());
      return rec;
    }
    state = std::move(m.collapsed);
  }
  std::ostringstream msg;
  msg << "qrt_solve: probe did not decay within " << cfg.max_rounds
      << " rounds (predicted decay probability " << rec.predicted_p << ")";
  throw NoDecayError(msg.str(), std::move(rec));
}

double rabi_transition_probability(double c, double d1, double energy,
                                   double t) {
  const double g = 4.0 * c * c * (1.0 - d1 * d1);
  if (g == 0.0) return 0.0;
  const double denom = g + energy * energy;
  const double s = std::sin(0.5 * t * std::sqrt(denom));
  return g / denom * s * s;
}

double leakage_bound(const AugmentedSystem& sys, const QrtConfig& cfg,
                     double d1) {
  const double sigma_n = sys.svd_c.singular_values(sys.n - 1);
  return 4.0 * cfg.coupling * cfg.coupling * (1.0 - d1 * d1) /
         (sigma_n * sigma_n);
}

double leakage_population(const AugmentedSystem& sys,
                          const Vector& full_state) {
  const int d = 2 * sys.n + 1;
  if (full_state.size() != 2 * d) {
    throw ValidationError("leakage_population: state dimension mismatch");
  }
  // Everything in the probe-0 branch orthogonal to the target eigenstate;
  // the 0-eigenspace of the dilation is one-dimensional.
  const Vector probe0 = full_state.head(d);
  const Complex on_target = sys.embedded_null_vector().dot(probe0);
  return probe0.squaredNorm() - std::norm(on_target);
}

std::uint64_t estimate_qrt_queries(const QrtConfig& cfg, double alpha,
                                   double epsilon, int sparsity) {
  if (alpha <= 0.0 || epsilon <= 0.0 || epsilon >= 1.0 || sparsity <= 0) {
    throw ValidationError("estimate_qrt_queries: positive inputs required");
  }
  const double at = alpha * cfg.time;
  const double lg = std::log(1.0 / epsilon);
  const double est =
      sparsity * (at + lg / std::log(std::numbers::e + lg / at));
  return static_cast<std::uint64_t>(std::ceil(est));
}

double choose_coupling(const AugmentedSystem& sys, double kappa,
                       double leakage_target) {
  if (leakage_target <= 0.0) {
    throw ValidationError("choose_coupling: leakage target must be positive");
  }
  const double sigma_n = sys.svd_c.singular_values(sys.n - 1);
  return std::min(0.5 / kappa, 0.5 * sigma_n * std::sqrt(leakage_target));
}

}  // namespace qlsp
