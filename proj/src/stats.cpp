#include "mfhxa/stats.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <string>

#include "mfhxa/error.hpp"

namespace mfhxa {

double student_t_quantile(double p, int dof) {
  if (!(p > 0.0 && p < 1.0)) {
    throw ParameterError("t quantile probability " + std::to_string(p) +
                         " must lie in (0, 1)");
  }
  if (dof < 1) {
    throw ParameterError("t quantile needs dof >= 1, got " + std::to_string(dof));
  }
  if (p == 0.5) return 0.0;
  const boost::math::students_t dist(static_cast<double>(dof));
  return boost::math::quantile(dist, p);
}

LineFit ols_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw InsufficientDataError("line fit needs at least two paired points");
  }
  const double mx = mean(x);
  const double my = mean(y);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    sxx += dx * dx;
    sxy += dx * (y[i] - my);
  }
  if (sxx == 0.0) throw InsufficientDataError("line fit x values are all equal");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

double mean(std::span<const double> v) {
  if (v.empty()) throw InsufficientDataError("mean of an empty sample");
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sample_variance(std::span<const double> v) {
  if (v.size() < 2) throw InsufficientDataError("variance needs at least two values");
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

}  // namespace mfhxa
