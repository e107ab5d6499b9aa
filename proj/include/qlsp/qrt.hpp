#pragma once

#include <random>
#include <vector>

#include "qlsp/errors.hpp"
#include "qlsp/linalg.hpp"
#include "qlsp/problem.hpp"
#include "qlsp/types.hpp"

namespace qlsp {

// Resonant-transition run parameters. The probe is driven at omega = -epsilon0
// so that |1>|1_reg> is degenerate with |0>|v_{n+1}>.
struct QrtConfig {
  double omega = 1.0;
  double epsilon0 = -1.0;
  double coupling = 0.01;   // c, must stay below the gap
  double time = 1.0;        // evolution time per round
  int max_rounds = 1000;
  std::uint64_t rng_seed = 0;
};

// H = -(omega/2) sigma_z (x) I + H_R + c sigma_x (x) I on probe (x) register,
// with H_R = epsilon0 |1><1| (x) |1_reg><1_reg| + |0><0| (x) B.
Matrix build_hamiltonian(const AugmentedSystem& sys, const QrtConfig& cfg);

// The unperturbed part H0 = H - c sigma_x (x) I.
Matrix build_unperturbed(const AugmentedSystem& sys, const QrtConfig& cfg);

// Eigendata of H cached once and reused across rounds.
class QrtPropagator {
 public:
  QrtPropagator(const AugmentedSystem& sys, const QrtConfig& cfg);
  Vector evolve(const Vector& state, double t) const;
  int dim() const { return static_cast<int>(eig_.eigenvalues.size()); }
  const EigResult& eigendata() const { return eig_; }

 private:
  EigResult eig_;
};

Vector evolve_once(const QrtPropagator& prop, const QrtConfig& cfg,
                   const Vector& state);

struct ProbeMeasurement {
  int outcome;       // 0 = probe decayed to ground
  Vector collapsed;  // renormalized post-measurement state (full space)
};
ProbeMeasurement measure_probe(const Vector& state, std::mt19937_64& rng);

struct QrtRunRecord {
  int rounds = 0;
  std::vector<int> probe_outcomes;
  Vector final_state;                      // register state after decay (2n+1)
  double decay_probability_estimate = 0;   // exact Born probability, round 1
  double predicted_p = 0;                  // sin^2(c t d1)
  double error_budget = 0;                 // 4c^2(1-d1^2)/sigma_n^2
  double fidelity_vs_target = 0;           // vs the embedded null vector
};

class NoDecayError : public NumericalError {
 public:
  NoDecayError(const std::string& msg, QrtRunRecord rec)
      : NumericalError(msg), record(std::move(rec)) {}
  QrtRunRecord record;
};

// Full protocol: prepare |1>|1_reg>, evolve, read the probe, repeat until it
// decays; throws NoDecayError past max_rounds.
QrtRunRecord qrt_solve(const AugmentedSystem& sys, const QrtConfig& cfg);

// Rabi two-level transition probability at detuning `energy`:
// G/(G+E^2) sin^2(t/2 sqrt(G+E^2)) with G = 4c^2(1-d1^2).
double rabi_transition_probability(double c, double d1, double energy,
                                   double t);

// 4c^2 (1 - d1^2) / sigma_n^2: bound on total off-target population.
double leakage_bound(const AugmentedSystem& sys, const QrtConfig& cfg,
                     double d1);

// Population of the full-space state outside span{|1>|.>, |0>|v_{n+1}>}.
double leakage_population(const AugmentedSystem& sys, const Vector& full_state);

// Analytic query-cost estimator s (alpha t + log(1/eps)/log(e + log(1/eps)/(alpha t))).
std::uint64_t estimate_qrt_queries(const QrtConfig& cfg, double alpha,
                                   double epsilon, int sparsity);

// c = min(gap_bound/2, sigma_n sqrt(leakage_target)/2); keeps the Eq.-18
// budget under `leakage_target` while respecting c < Delta*.
double choose_coupling(const AugmentedSystem& sys, double kappa,
                       double leakage_target);

}  // namespace qlsp
