#include "mfhxa/time_series.hpp"

#include <cmath>
#include <numeric>

#include "mfhxa/error.hpp"

namespace mfhxa {

TimeSeries::TimeSeries(std::vector<double> values, std::string label)
    : values_(std::move(values)), label_(std::move(label)) {
  if (values_.empty()) {
    throw InsufficientDataError("series '" + label_ + "' is empty");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw DomainError("series '" + label_ + "' has a non-finite value at index " +
                        std::to_string(i));
    }
  }
}

TimeSeries TimeSeries::relabeled(std::string label) const {
  TimeSeries copy = *this;
  copy.label_ = std::move(label);
  return copy;
}

IncrementSeries tau_increments(const TimeSeries& series, std::size_t tau) {
  const std::size_t n = series.size();
  if (tau < 1 || tau + 1 > n) {
    throw LagTooLargeError("lag tau=" + std::to_string(tau) +
                           " is out of range for series of length " +
                           std::to_string(n));
  }
  IncrementSeries out;
  out.tau = tau;
  out.source_label = series.label();
  out.values.resize(n - tau);
  const auto v = series.values();
  for (std::size_t i = 0; i + tau < n; ++i) out.values[i] = v[i + tau] - v[i];
  return out;
}

namespace {

void require_positive(const TimeSeries& series, const char* what) {
  const auto v = series.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] > 0.0)) {
      throw DomainError(std::string(what) + " must be strictly positive; index " +
                        std::to_string(i) + " holds " + std::to_string(v[i]));
    }
  }
}

}  // namespace

TimeSeries log_returns(const TimeSeries& prices) {
  require_positive(prices, "prices");
  if (prices.size() < 2) {
    throw InsufficientDataError("log returns need at least two prices");
  }
  const auto p = prices.values();
  std::vector<double> r(p.size() - 1);
  for (std::size_t t = 0; t + 1 < p.size(); ++t) {
    r[t] = std::log(p[t + 1]) - std::log(p[t]);
  }
  return TimeSeries(std::move(r), prices.label());
}

TimeSeries absolute_returns(const TimeSeries& prices) {
  const TimeSeries r = log_returns(prices);
  std::vector<double> a(r.values().begin(), r.values().end());
  for (double& x : a) x = std::fabs(x);
  return TimeSeries(std::move(a), prices.label());
}

TimeSeries volume_relative_deviation(const TimeSeries& volumes,
                                     std::size_t window) {
  if (window < 1) throw ParameterError("window must be a positive integer");
  if (volumes.size() <= window) {
    throw InsufficientDataError("volume series of length " +
                                std::to_string(volumes.size()) +
                                " is too short for window " +
                                std::to_string(window));
  }
  require_positive(volumes, "volumes");
  const auto v = volumes.values();
  std::vector<double> out;
  out.reserve(v.size() - window);
  // Running sum is re-anchored periodically to keep the rounding drift bounded.
  double sum = std::accumulate(v.begin(), v.begin() + window, 0.0);
  for (std::size_t t = window; t < v.size(); ++t) {
    if ((t - window) % 1024 == 0) {
      sum = std::accumulate(v.begin() + (t - window), v.begin() + t, 0.0);
    }
    const double ma = sum / static_cast<double>(window);
    out.push_back((v[t] - ma) / ma);
    sum += v[t] - v[t - window];
  }
  return TimeSeries(std::move(out), volumes.label());
}

TimeSeries subsample(const TimeSeries& series, std::size_t nu) {
  if (nu < 1) throw ParameterError("subsample step must be >= 1");
  std::vector<double> out;
  const auto v = series.values();
  for (std::size_t i = 0; i < v.size(); i += nu) out.push_back(v[i]);
  return TimeSeries(std::move(out), series.label());
}

TimeSeries cumulative_levels(const TimeSeries& increments) {
  const auto v = increments.values();
  std::vector<double> out(v.size() + 1, 0.0);
  double acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    acc += v[i];
    out[i + 1] = acc;
  }
  return TimeSeries(std::move(out), increments.label());
}

}  // namespace mfhxa
