#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace mfhxa {

/// Trend removal applied to each lag's increment series separately.
enum class TrendFilter { none, constant, linear };

std::string_view to_string(TrendFilter filter);
TrendFilter parse_trend_filter(std::string_view name);

struct TauRange {
  std::size_t first = 5;
  std::size_t last = 100;
  std::size_t count() const { return last - first + 1; }
};

struct EstimationConfig {
  std::vector<double> q_grid;
  std::size_t tau_min = 1;
  // Upper fit bounds; one Hurst estimate per value, pooled into the CI.
  TauRange tau_max_range{5, 100};
  TrendFilter filter = TrendFilter::constant;
  std::size_t min_fit_points = 4;
  double confidence = 0.99;
  // Lags 1..decomposition_tau_max enter the covariance decomposition fit.
  std::size_t decomposition_tau_max = 20;
  // A lag joins the alpha fit only if its covariance is positive and its
  // correlation z-score, r * sqrt(n / tau), reaches this threshold.
  double covariance_z_threshold = 3.0;

  /// Simulation preset: tau_max 5..100, q = 0.1..10 step 0.1, constant filter.
  static EstimationConfig synthetic();
  /// Daily market data preset: tau_max 5..20, q = 0.1..3 step 0.1, linear filter.
  static EstimationConfig real_data();

  void validate() const;
  std::size_t largest_tau() const { return tau_max_range.last; }
};

/// Inclusive arithmetic grid first, first + step, ..., last. Values are
/// rounded to 12 decimals so 0.1-step grids print cleanly.
std::vector<double> q_range(double first, double last, double step);

}  // namespace mfhxa
