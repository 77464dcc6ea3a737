#pragma once

// Height-height covariance kernels.
//
// The functions at namespace scope are the production kernels: they share
// one increment pass per lag across the whole q grid and spread lags over
// OpenMP threads. Every cell is summed serially in time order, so output is
// identical for any thread count. mfhxa::reference holds direct
// implementations kept for cross-checking in tests and benchmarks.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mfhxa/estimation_config.hpp"
#include "mfhxa/time_series.hpp"

namespace mfhxa {

IncrementSeries detrend_increments(IncrementSeries increments, TrendFilter filter);

/// tau_increments followed by detrend_increments.
std::vector<double> filtered_increments(const TimeSeries& series, std::size_t tau,
                                        TrendFilter filter);

/// K_xy,q(tau): mean over t of |dX_t dY_t|^(q/2) on filtered increments.
double height_covariance(const TimeSeries& x, const TimeSeries& y, double q,
                         std::size_t tau, TrendFilter filter);

/// K values over a (q, tau) lattice with contiguous lags tau_min..tau_max.
class HeightCovarianceGrid {
 public:
  HeightCovarianceGrid(std::vector<double> q_values, std::size_t tau_min,
                       std::size_t tau_max, std::vector<double> values,
                       std::string x_label = {}, std::string y_label = {});

  std::span<const double> q_values() const { return q_values_; }
  std::size_t tau_min() const { return tau_min_; }
  std::size_t tau_max() const { return tau_max_; }
  std::size_t tau_count() const { return tau_max_ - tau_min_ + 1; }
  const std::string& x_label() const { return x_label_; }
  const std::string& y_label() const { return y_label_; }

  /// Index of q in the grid (matched to 1e-9); throws ParameterError if absent.
  std::size_t q_index(double q) const;
  double at(std::size_t q_index, std::size_t tau) const;
  /// K(tau) for tau_min..tau_max at one q.
  std::span<const double> row(std::size_t q_index) const;

  bool operator==(const HeightCovarianceGrid&) const = default;

 private:
  std::vector<double> q_values_;
  std::size_t tau_min_;
  std::size_t tau_max_;
  std::vector<double> values_;  // [q][tau - tau_min]
  std::string x_label_;
  std::string y_label_;
};

HeightCovarianceGrid covariance_grid(const TimeSeries& x, const TimeSeries& y,
                                     std::span<const double> q_grid,
                                     std::size_t tau_min, std::size_t tau_max,
                                     TrendFilter filter);

/// Grid over config.q_grid and tau_min..max(tau_max_range).
HeightCovarianceGrid covariance_grid(const TimeSeries& x, const TimeSeries& y,
                                     const EstimationConfig& config);

/// Per-lag pieces of the split <|dX|^h |dY|^h> = <|dX|^h><|dY|^h> + cov,
/// with h = q / 2.
struct CovarianceTerms {
  std::size_t tau = 0;
  double k_xy = 0.0;
  double product_term = 0.0;
  double covariance_term = 0.0;
  // Correlation of |dX|^h with |dY|^h scaled by sqrt(n / tau).
  double correlation_z = 0.0;
};

CovarianceTerms covariance_terms(const TimeSeries& x, const TimeSeries& y,
                                 double q, std::size_t tau, TrendFilter filter);

std::vector<CovarianceTerms> covariance_terms(const TimeSeries& x,
                                              const TimeSeries& y, double q,
                                              std::size_t tau_min,
                                              std::size_t tau_max,
                                              TrendFilter filter);

/// Threads the kernels will use (1 without OpenMP).
int kernel_threads();

namespace reference {

double height_covariance(const TimeSeries& x, const TimeSeries& y, double q,
                         std::size_t tau, TrendFilter filter);

HeightCovarianceGrid covariance_grid(const TimeSeries& x, const TimeSeries& y,
                                     std::span<const double> q_grid,
                                     std::size_t tau_min, std::size_t tau_max,
                                     TrendFilter filter);

}  // namespace reference

}  // namespace mfhxa
