#pragma once

#include <span>

namespace mfhxa {

/// Quantile of Student's t with `dof` degrees of freedom.
double student_t_quantile(double p, int dof);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Ordinary least squares y = intercept + slope * x. Needs >= 2 distinct x.
LineFit ols_line(std::span<const double> x, std::span<const double> y);

double mean(std::span<const double> v);
/// Sample variance (n - 1 denominator).
double sample_variance(std::span<const double> v);

}  // namespace mfhxa
