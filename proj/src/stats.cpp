#include "qlsp/stats.hpp"

#include <cmath>

#include "qlsp/errors.hpp"

namespace qlsp {

OriginFit fit_through_origin(const std::vector<double>& x,
                             const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw ValidationError("fit_through_origin: need matching x/y, size >= 2");
  }
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxy += x[i] * y[i];
    sxx += x[i] * x[i];
    syy += y[i] * y[i];
  }
  OriginFit fit;
  fit.slope = sxy / sxx;
  double ss_res = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - fit.slope * x[i];
    ss_res += r * r;
  }
  fit.r2 = (syy > 0.0) ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

LinearFit fit_linear(const std::vector<double>& x,
                     const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw ValidationError("fit_linear: need matching x/y, size >= 2");
  }
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.slope * x[i] + fit.intercept);
    ss_res += r * r;
  }
  fit.r2 = (syy > 0.0) ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

}  // namespace qlsp
