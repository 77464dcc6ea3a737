#include "mfhxa/estimation_config.hpp"

#include <cmath>

#include "mfhxa/error.hpp"

namespace mfhxa {

std::string_view to_string(TrendFilter filter) {
  switch (filter) {
    case TrendFilter::none: return "none";
    case TrendFilter::constant: return "constant";
    case TrendFilter::linear: return "linear";
  }
  return "unknown";
}

TrendFilter parse_trend_filter(std::string_view name) {
  if (name == "none") return TrendFilter::none;
  if (name == "constant") return TrendFilter::constant;
  if (name == "linear") return TrendFilter::linear;
  throw ParameterError("filter='" + std::string(name) +
                       "' is not one of none, constant, linear");
}

EstimationConfig EstimationConfig::synthetic() {
  EstimationConfig c;
  c.q_grid = q_range(0.1, 10.0, 0.1);
  c.tau_min = 1;
  c.tau_max_range = {5, 100};
  c.filter = TrendFilter::constant;
  return c;
}

EstimationConfig EstimationConfig::real_data() {
  EstimationConfig c;
  c.q_grid = q_range(0.1, 3.0, 0.1);
  c.tau_min = 1;
  c.tau_max_range = {5, 20};
  c.filter = TrendFilter::linear;
  return c;
}

void EstimationConfig::validate() const {
  if (q_grid.empty()) throw ParameterError("q grid is empty");
  for (std::size_t i = 0; i < q_grid.size(); ++i) {
    if (!(q_grid[i] > 0.0) || !std::isfinite(q_grid[i])) {
      throw ParameterError("q=" + std::to_string(q_grid[i]) + " must be positive");
    }
    if (i > 0 && !(q_grid[i] > q_grid[i - 1])) {
      throw ParameterError("q grid must be strictly increasing");
    }
  }
  if (tau_min < 1) throw ParameterError("tau_min must be >= 1");
  if (tau_max_range.first > tau_max_range.last) {
    throw ParameterError("tau_max range is empty");
  }
  if (tau_min > tau_max_range.first) {
    throw ParameterError("tau_min=" + std::to_string(tau_min) +
                         " exceeds the smallest tau_max=" +
                         std::to_string(tau_max_range.first));
  }
  if (min_fit_points < 2) throw ParameterError("min_fit_points must be >= 2");
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw ParameterError("confidence must lie in (0, 1)");
  }
  if (decomposition_tau_max < tau_min) {
    throw ParameterError("decomposition tau_max is below tau_min");
  }
}

std::vector<double> q_range(double first, double last, double step) {
  if (!(step > 0.0) || last < first) {
    throw ParameterError("q range needs first <= last and a positive step");
  }
  const auto n = static_cast<std::size_t>(std::floor((last - first) / step + 1e-9)) + 1;
  std::vector<double> q(n);
  for (std::size_t i = 0; i < n; ++i) {
    q[i] = std::round((first + static_cast<double>(i) * step) * 1e12) / 1e12;
  }
  return q;
}

}  // namespace mfhxa
