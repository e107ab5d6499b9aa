#include "qlsp/qsp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qlsp/errors.hpp"
#include "qlsp/linalg.hpp"

namespace qlsp {
namespace {

constexpr double kPi = std::numbers::pi;

// Argument of the Chebyshev ratio in Eq.-form y(w) = y0 + 2 w^2 / (1 - d^2):
// written this way so that y(0) == y0 bitwise and R(0) is exactly 1.
struct FilterFrame {
  double y0;
  double scale;  // 2 / (1 - delta^2)
  LogAbsT den;
  int k;
};

FilterFrame make_frame(int k, double delta) {
  const double d2 = delta * delta;
  FilterFrame fr;
  fr.k = k;
  fr.y0 = -(1.0 + d2) / (1.0 - d2);
  fr.scale = 2.0 / (1.0 - d2);
  fr.den = chebyshev_T_log(k, fr.y0);
  return fr;
}

double eval_filter(const FilterFrame& fr, double w) {
  const double y = fr.y0 + fr.scale * w * w;
  if (std::abs(y) <= 1.0) {
    const double num = std::cos(fr.k * std::acos(y));
    return fr.den.sign * num * std::exp(-fr.den.log_abs);
  }
  const LogAbsT num = chebyshev_T_log(fr.k, y);
  return num.sign * fr.den.sign * std::exp(num.log_abs - fr.den.log_abs);
}

// Certified max of |R_k| on delta <= |w| <= 1: spec'd 10k points per unit
// interval plus both endpoints; R_k is even so positive w suffices.
double sup_on_stopband(const FilterFrame& fr, double delta) {
  const int points = std::max(32, static_cast<int>(std::ceil(10.0 * fr.k * (1.0 - delta))));
  double sup = 0.0;
  for (int i = 0; i <= points; ++i) {
    const double w = delta + (1.0 - delta) * i / points;
    sup = std::max(sup, std::abs(eval_filter(fr, w)));
  }
  return sup;
}

RealVector chebyshev_coefficients(const FilterFrame& fr) {
  const int m = 2 * fr.k;
  RealVector coeffs = RealVector::Zero(m + 1);
  if (m == 0) {
    coeffs(0) = 1.0;
    return coeffs;
  }
  RealVector samples(m + 1);
  for (int j = 0; j <= m; ++j) {
    samples(j) = eval_filter(fr, std::cos(kPi * j / m));
  }
  for (int order = 0; order <= m; order += 2) {  // odd orders vanish by parity
    double acc = 0.5 * (samples(0) + (order % 2 == 0 ? samples(m) : -samples(m)));
    for (int j = 1; j < m; ++j) {
      acc += samples(j) * std::cos(kPi * order * j / m);
    }
    coeffs(order) = 2.0 * acc / m;
  }
  coeffs(0) *= 0.5;
  coeffs(m) *= 0.5;
  return coeffs;
}

}  // namespace

double FilterPolynomial::operator()(double w) const {
  if (half_degree == 0) return 1.0;
  return eval_filter(make_frame(half_degree, delta), w);
}

FilterPolynomial filter_polynomial(int k, double delta) {
  if (k < 0) throw ValidationError("filter_polynomial: negative half-degree");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw ValidationError("filter_polynomial: delta must lie in (0, 1)");
  }
  FilterPolynomial poly;
  poly.half_degree = k;
  poly.delta = delta;
  if (k == 0) {
    poly.cheb_coeffs = RealVector::Ones(1);
    poly.sup_error = 1.0;
    return poly;
  }
  const FilterFrame fr = make_frame(k, delta);
  poly.cheb_coeffs = chebyshev_coefficients(fr);
  poly.sup_error = sup_on_stopband(fr, delta);
  return poly;
}

FilterPolynomial build_filter(double delta, double epsilon, int k_cap) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw ValidationError("build_filter: delta must lie in (0, 1)");
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw ValidationError("build_filter: epsilon must lie in (0, 1)");
  }
  const auto sup_at = [&](int k) {
    return sup_on_stopband(make_frame(k, delta), delta);
  };
  // Double until the suppression target is met, then bisect for minimal k.
  int hi = 1;
  while (sup_at(hi) > epsilon) {
    hi *= 2;
    if (hi > k_cap) {
      std::ostringstream msg;
      msg << "build_filter: required half-degree exceeds cap " << k_cap
          << " for delta=" << delta << " epsilon=" << epsilon;
      throw DegreeOverflowError(msg.str(), k_cap);
    }
  }
  int lo = hi / 2;  // sup_at(lo) > epsilon when lo >= 1
  while (hi - lo > 1 && lo >= 1) {
    const int mid = lo + (hi - lo) / 2;
    (sup_at(mid) <= epsilon ? hi : lo) = mid;
  }
  return filter_polynomial(hi, delta);
}

// ---------------------------------------------------------------------------
// Phase-factor solving.
//
// The solver works in the Wx frame U = Z(p_0) prod_j [W(x) Z(p_j)] with
// symmetric phases p_j = p_{l-j}, Gauss-Newton on the Chebyshev-node misfit
// of Re U_00 against the target, initialized at the canonical
// (pi/4, 0, ..., 0, pi/4). The solution is then mapped exactly into the
// reflection slots Z(phi_1) U_B ... Z(phi_l) U_B via constant end shifts.
// ---------------------------------------------------------------------------
namespace {

using Eigen::Matrix2cd;

Matrix2cd wx_rotation(double x) {
  const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
  Matrix2cd w;
  w << Complex(x, 0), Complex(0, s), Complex(0, s), Complex(x, 0);
  return w;
}

Matrix2cd z_rotation(double p) {
  Matrix2cd z = Matrix2cd::Zero();
  z(0, 0) = std::polar(1.0, p);
  z(1, 1) = std::polar(1.0, -p);
  return z;
}

// Work buffers for one node: the flat factor list Z0, W, Z1, W, ..., Zl and
// its prefix/suffix products.
struct NodeWork {
  std::vector<Matrix2cd> factors;
  std::vector<Matrix2cd> prefix;
  std::vector<Matrix2cd> suffix;
};

void eval_node(const std::vector<double>& psi, double x, NodeWork& wk,
               double& value, double* grad /* size l+1, may be null */) {
  const int l = static_cast<int>(psi.size()) - 1;
  const int nfac = 2 * l + 1;
  wk.factors.resize(nfac);
  const Matrix2cd w = wx_rotation(x);
  wk.factors[0] = z_rotation(psi[0]);
  for (int j = 1; j <= l; ++j) {
    wk.factors[2 * j - 1] = w;
    wk.factors[2 * j] = z_rotation(psi[j]);
  }
  if (grad == nullptr) {
    Matrix2cd u = wk.factors[0];
    for (int i = 1; i < nfac; ++i) u = u * wk.factors[i];
    value = u(0, 0).real();
    return;
  }
  wk.prefix.resize(nfac + 1);
  wk.suffix.resize(nfac + 1);
  wk.prefix[0] = Matrix2cd::Identity();
  for (int i = 0; i < nfac; ++i) wk.prefix[i + 1] = wk.prefix[i] * wk.factors[i];
  wk.suffix[nfac] = Matrix2cd::Identity();
  for (int i = nfac - 1; i >= 0; --i) wk.suffix[i] = wk.factors[i] * wk.suffix[i + 1];
  value = wk.prefix[nfac](0, 0).real();

  Matrix2cd sz = Matrix2cd::Zero();
  sz(0, 0) = Complex(0, 1);
  sz(1, 1) = Complex(0, -1);
  for (int p = 0; p <= l; ++p) {
    const int fi = (p == 0) ? 0 : 2 * p;
    const Matrix2cd d =
        wk.prefix[fi] * (sz * wk.factors[fi]) * wk.suffix[fi + 1];
    grad[p] = d(0, 0).real();
  }
}

std::vector<double> symmetric_expand(const RealVector& half, int l) {
  std::vector<double> psi(l + 1);
  const int k = l / 2;
  for (int j = 0; j <= k; ++j) psi[j] = half(j);
  for (int j = k + 1; j <= l; ++j) psi[j] = half(l - j);
  return psi;
}

struct WxSolution {
  RealVector half;
  double residual;
};

// Gauss-Newton with backtracking; returns the best iterate seen.
WxSolution solve_wx_symmetric(const std::function<double(double)>& f, int l,
                              const RealVector& init) {
  const int k = l / 2;
  const int dof = k + 1;
  RealVector nodes(dof), target(dof);
  for (int i = 0; i < dof; ++i) {
    nodes(i) = std::cos((2.0 * (i + 1) - 1.0) * kPi / (4.0 * dof));
    target(i) = f(nodes(i));
  }

  RealVector half = init;
  NodeWork wk;
  std::vector<double> grad(l + 1);
  Eigen::MatrixXd jac(dof, dof);
  RealVector vals(dof);

  const auto values_at = [&](const RealVector& h, RealVector& out) {
    const std::vector<double> psi = symmetric_expand(h, l);
    double v;
    for (int i = 0; i < dof; ++i) {
      eval_node(psi, nodes(i), wk, v, nullptr);
      out(i) = v;
    }
  };

  WxSolution best{half, std::numeric_limits<double>::infinity()};
  for (int iter = 0; iter < 120; ++iter) {
    const std::vector<double> psi = symmetric_expand(half, l);
    for (int i = 0; i < dof; ++i) {
      double v;
      eval_node(psi, nodes(i), wk, v, grad.data());
      vals(i) = v;
      for (int j = 0; j <= k; ++j) {
        jac(i, j) = grad[j] + ((j < k) ? grad[l - j] : 0.0);
      }
    }
    const RealVector resid = vals - target;
    const double sup = resid.cwiseAbs().maxCoeff();
    if (sup < best.residual) best = {half, sup};
    if (sup < 1e-13) break;

    const RealVector step = jac.colPivHouseholderQr().solve(-resid);
    const double base = resid.squaredNorm();
    double t = 1.0;
    bool improved = false;
    RealVector trial(dof), trial_vals(dof);
    for (int ls = 0; ls < 40; ++ls) {
      trial = half + t * step;
      values_at(trial, trial_vals);
      if ((trial_vals - target).squaredNorm() < base) {
        improved = true;
        break;
      }
      t *= 0.5;
    }
    if (!improved) break;  // stagnated; best iterate already recorded
    half = trial;
  }
  return best;
}

std::vector<double> wx_to_reflection(const std::vector<double>& psi) {
  const int l = static_cast<int>(psi.size()) - 1;
  const int k = l / 2;
  std::vector<double> phi(l);
  phi[0] = 2.0 * psi[0] - kPi / 2 + k * kPi;
  for (int j = 1; j < l; ++j) phi[j] = psi[j] - kPi / 2;
  return phi;
}

}  // namespace

double qsp_scalar_map(const std::vector<double>& phases, double w) {
  Matrix2cd m = Matrix2cd::Identity();
  const double s = std::sqrt(std::max(0.0, 1.0 - w * w));
  Matrix2cd r;
  r << Complex(w, 0), Complex(s, 0), Complex(s, 0), Complex(-w, 0);
  for (const double p : phases) {
    m = m * z_rotation(p) * r;
  }
  return m(0, 0).real();
}

namespace detail {

std::vector<double> solve_even_phases(const std::function<double(double)>& f,
                                      int degree, double& residual_out) {
  if (degree % 2 != 0 || degree < 0) {
    throw ValidationError("solve_even_phases: degree must be even");
  }
  if (degree == 0) {
    residual_out = 0.0;
    return {};
  }
  const int k = degree / 2;

  RealVector init = RealVector::Zero(k + 1);
  init(0) = kPi / 4;  // canonical start; the other end is its mirror
  WxSolution sol = solve_wx_symmetric(f, degree, init);
  if (sol.residual > 1e-12) {
    // Deterministic perturbed restarts before giving up.
    std::mt19937_64 rng(0x51a5u);
    std::normal_distribution<double> jitter(0.0, 1e-2);
    for (int attempt = 0; attempt < 4 && sol.residual > 1e-12; ++attempt) {
      RealVector again = init;
      for (int j = 0; j <= k; ++j) again(j) += jitter(rng);
      const WxSolution other = solve_wx_symmetric(f, degree, again);
      if (other.residual < sol.residual) sol = other;
    }
  }
  residual_out = sol.residual;
  return wx_to_reflection(symmetric_expand(sol.half, degree));
}

}  // namespace detail

PhaseFactorSequence solve_phases(const FilterPolynomial& poly) {
  PhaseFactorSequence seq;
  seq.target = poly;
  if (poly.half_degree == 0) {
    seq.residual = 0.0;
    return seq;
  }
  double node_residual = 0.0;
  seq.phases = detail::solve_even_phases(
      [&poly](double w) { return poly(w); }, poly.degree(), node_residual);

  // Certify in sup norm on a Chebyshev grid of >= 4l points.
  const int grid = 4 * poly.degree() + 1;
  double sup = 0.0;
  for (int i = 0; i <= grid; ++i) {
    const double w = std::cos(kPi * i / grid);
    sup = std::max(sup, std::abs(qsp_scalar_map(seq.phases, w) - poly(w)));
  }
  seq.residual = sup;
  if (sup > tol::phase_residual) {
    std::ostringstream msg;
    msg << "solve_phases: optimizer stagnated, best sup residual " << sup;
    throw PhaseSolveError(msg.str(), sup);
  }
  return seq;
}

Vector apply_qsp(const BlockEncoding& enc, const PhaseFactorSequence& seq,
                 const Vector& state, OracleCostModel* model) {
  const int l = static_cast<int>(seq.phases.size());
  if (l % 2 != 0) {
    throw ValidationError("apply_qsp: the QSP product requires even degree");
  }
  const int h = enc.block_dim();
  if (state.size() != h) {
    throw ValidationError("apply_qsp: state dimension mismatch");
  }
  if (l == 0) return state;

  // Two ancilla-phase branches (+phi and -phi); their average is the block
  // action of the real polynomial.
  Vector plus = Vector::Zero(2 * h);
  plus.head(h) = state;
  Vector minus = plus;
  for (int j = l - 1; j >= 0; --j) {
    plus = enc.u * plus;
    minus = enc.u * minus;
    const Complex up = std::polar(1.0, seq.phases[j]);
    plus.head(h) *= up;
    plus.tail(h) *= std::conj(up);
    minus.head(h) *= std::conj(up);
    minus.tail(h) *= up;
  }
  if (model != nullptr) {
    model->charge_block_encoding_use(static_cast<std::uint64_t>(l));
  }
  return 0.5 * (plus.head(h) + minus.head(h));
}

Vector direct_filter_apply(const AugmentedSystem& sys,
                           const FilterPolynomial& poly, const Vector& state) {
  const Matrix scaled = sys.dilation / sys.alpha;
  const RealVector& c = poly.cheb_coeffs;
  Vector prev = state;                 // T_0 * state
  Vector acc = c(0) * prev;
  if (poly.degree() == 0) return acc;
  Vector curr = scaled * state;        // T_1 * state
  acc += c(1) * curr;
  for (int m = 2; m <= poly.degree(); ++m) {
    Vector next = 2.0 * (scaled * curr) - prev;
    acc += c(m) * next;
    prev = std::move(curr);
    curr = std::move(next);
  }
  return acc;
}

QefResult qef_solve(const AugmentedSystem& sys, double epsilon) {
  const double delta_scaled =
      std::min(sys.gap / sys.alpha, 1.0 - 1e-12);
  const FilterPolynomial poly = build_filter(delta_scaled, epsilon);
  const PhaseFactorSequence seq = solve_phases(poly);
  const BlockEncoding enc = dilate(sys.dilation / sys.alpha, sys.alpha);

  QefResult result;
  result.queries = OracleCostModel(sys.sparsity);
  const Vector out =
      apply_qsp(enc, seq, sys.one_state(), &result.queries);
  result.success_probability = out.squaredNorm();
  if (result.success_probability <= 0.0) {
    throw EstimationError("qef_solve: filtered state has zero norm");
  }
  result.output_state = out / std::sqrt(result.success_probability);
  result.fidelity_vs_target =
      fidelity(result.output_state, sys.embedded_null_vector());
  result.degree_used = poly.degree();
  return result;
}

}  // namespace qlsp
