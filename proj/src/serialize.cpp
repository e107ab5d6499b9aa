#include "qlsp/serialize.hpp"

#include <cstdio>
#include <fstream>

#include "qlsp/errors.hpp"

namespace qlsp {
namespace {

Json complex_list(const Vector& v) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    arr.push_back({v(i).real(), v(i).imag()});
  }
  return arr;
}

Json complex_list_row_major(const Matrix& m) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      arr.push_back({m(i, j).real(), m(i, j).imag()});
    }
  }
  return arr;
}

Complex complex_from(const Json& j) {
  return Complex(j.at(0).get<double>(), j.at(1).get<double>());
}

}  // namespace

Json to_json(const LseInstance& inst) {
  return Json{{"N", inst.size()},
              {"kappa", inst.kappa},
              {"s", inst.sparsity},
              {"seed", inst.seed},
              {"spectrum_shape", to_string(inst.shape)},
              {"A", complex_list_row_major(inst.a)},
              {"b", complex_list(inst.b)}};
}

LseInstance instance_from_json(const Json& j) {
  LseInstance inst;
  const int n = j.at("N").get<int>();
  if (n < 1) throw ValidationError("instance_from_json: bad dimension");
  inst.kappa = j.at("kappa").get<double>();
  inst.sparsity = j.at("s").get<int>();
  inst.seed = j.at("seed").get<std::uint64_t>();
  inst.shape = spectrum_shape_from_string(j.at("spectrum_shape").get<std::string>());

  const Json& a = j.at("A");
  if (static_cast<int>(a.size()) != n * n) {
    throw ValidationError("instance_from_json: A has wrong length");
  }
  inst.a.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) inst.a(i, k) = complex_from(a.at(i * n + k));
  }
  const Json& b = j.at("b");
  if (static_cast<int>(b.size()) != n) {
    throw ValidationError("instance_from_json: b has wrong length");
  }
  inst.b.resize(n);
  for (int i = 0; i < n; ++i) inst.b(i) = complex_from(b.at(i));
  return inst;
}

Json to_json(const OracleCostModel& model) {
  return Json{{"O_C1", model.o_c1},
              {"O_C2", model.o_c2},
              {"O_b", model.o_b},
              {"O_b1", model.o_b1},
              {"alpha_model", model.alpha_model}};
}

Json to_json(const SolveReport& report) {
  return Json{{"method", to_string(report.method)},
              {"beta_phase1", report.beta_phase1},
              {"d1_estimate", report.d1_estimate},
              {"d1_std_error", report.d1_std_error},
              {"beta_phase2", report.beta_phase2},
              {"x_estimate", complex_list(report.x_estimate)},
              {"x_norm_estimate", report.x_norm_estimate},
              {"residual", report.residual},
              {"state_fidelity", report.state_fidelity},
              {"degree_or_time", report.degree_or_time},
              {"queries", to_json(report.queries)},
              {"wall_time", report.wall_time},
              {"seed", report.seed},
              {"recalibrated", report.trace.recalibrated},
              {"d1_in_band", report.trace.d1_in_band}};
}

Json to_json(const QrtRunRecord& record) {
  return Json{{"rounds", record.rounds},
              {"outcomes", record.probe_outcomes},
              {"p_pred", record.predicted_p},
              {"p_emp", record.decay_probability_estimate},
              {"leakage_bound", record.error_budget},
              {"fidelity", record.fidelity_vs_target}};
}

Json to_json(const FilterPolynomial& poly) {
  return Json{{"k", poly.half_degree},
              {"delta", poly.delta},
              {"sup_error", poly.sup_error}};
}

Json to_json(const PhaseFactorSequence& seq) {
  return Json{{"phases", seq.phases},
              {"residual", seq.residual},
              {"filter", to_json(seq.target)}};
}

void save_instance(const LseInstance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("save_instance: cannot write " + path);
  out << to_json(inst).dump(2) << "\n";
}

LseInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("load_instance: cannot read " + path);
  Json j;
  in >> j;
  return instance_from_json(j);
}

std::string instance_file_name(int n, double kappa, std::uint64_t seed) {
  char kbuf[32];
  std::snprintf(kbuf, sizeof(kbuf), "%g", kappa);
  return std::to_string(n) + "_" + kbuf + "_" + std::to_string(seed) + ".json";
}

}  // namespace qlsp
