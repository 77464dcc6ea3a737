#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace mfhxa {

/// Ordered level (or increment) series with a short label.
///
/// Values are validated on construction: non-empty and finite. Estimators
/// additionally require at least two points.
class TimeSeries {
 public:
  TimeSeries(std::vector<double> values, std::string label = {});

  std::span<const double> values() const { return values_; }
  const std::string& label() const { return label_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  TimeSeries relabeled(std::string label) const;

 private:
  std::vector<double> values_;
  std::string label_;
};

/// Lagged differences X[t+tau] - X[t] of a source series.
struct IncrementSeries {
  std::vector<double> values;
  std::size_t tau = 1;
  std::string source_label;
};

IncrementSeries tau_increments(const TimeSeries& series, std::size_t tau);

TimeSeries log_returns(const TimeSeries& prices);
TimeSeries absolute_returns(const TimeSeries& prices);

/// (V_t - MA(t)) / MA(t) where MA(t) averages the `window` observations
/// strictly before t. Output starts at t = window.
TimeSeries volume_relative_deviation(const TimeSeries& volumes,
                                     std::size_t window);

/// Keeps every nu-th point starting at index 0 (coarser time resolution).
TimeSeries subsample(const TimeSeries& series, std::size_t nu);

/// Integrates an increment series into levels: out[0] = 0,
/// out[i] = sum of the first i increments. Output length is n + 1.
TimeSeries cumulative_levels(const TimeSeries& increments);

}  // namespace mfhxa
