#pragma once

#include <vector>

namespace qlsp {

struct OriginFit {
  double slope = 0.0;
  double r2 = 0.0;  // uncentered: 1 - SS_res / sum(y^2)
};

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;  // centered coefficient of determination
};

// Ordinary least squares through the origin, y ~ slope * x.
OriginFit fit_through_origin(const std::vector<double>& x,
                             const std::vector<double>& y);

// Ordinary least squares with intercept, y ~ slope * x + intercept.
LinearFit fit_linear(const std::vector<double>& x,
                     const std::vector<double>& y);

}  // namespace qlsp
