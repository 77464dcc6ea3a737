#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mfhxa/estimation_config.hpp"
#include "mfhxa/kernels.hpp"
#include "mfhxa/time_series.hpp"

namespace mfhxa {

/// Generalized (bivariate) Hurst exponent at one q with its t-interval over
/// the family of upper fit bounds.
struct HurstEstimate {
  double q = 0.0;
  double h = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::size_t n_resamples = 0;
  std::vector<std::pair<std::size_t, double>> per_tau_max;
};

/// (OLS slope of ln K on ln tau) / q over tau = grid.tau_min()..tau_max.
double fit_hurst_single(const HeightCovarianceGrid& grid, double q,
                        std::size_t tau_max, std::size_t min_fit_points = 4);

/// One fit per tau_max in config.tau_max_range; h is their mean and the
/// interval is h +- t_{(1+confidence)/2, n-1} s / sqrt(n).
HurstEstimate jackknife_hurst(const HeightCovarianceGrid& grid, double q,
                              const EstimationConfig& config);

struct CurvePoint {
  double q = 0.0;
  std::optional<HurstEstimate> estimate;
  std::string diagnostic;  // empty on success
};

struct GeneralizedHurstCurve {
  std::vector<CurvePoint> points;
  std::string x_label;
  std::string y_label;
  EstimationConfig config;

  std::size_t succeeded() const;
};

/// Jackknife estimate at every q of an already computed grid. A failing q
/// records its message and the remaining q values still run.
GeneralizedHurstCurve hurst_curve_from_grid(const HeightCovarianceGrid& grid,
                                            const EstimationConfig& config);

/// Pass the same series twice for the univariate curve.
GeneralizedHurstCurve generalized_hurst_curve(const TimeSeries& x,
                                              const TimeSeries& y,
                                              const EstimationConfig& config);

struct AlphaFit {
  double alpha = 0.0;
  double intercept = 0.0;
  std::size_t n_points = 0;
  std::size_t excluded = 0;  // lags left out of the log-log fit
};

struct ScalingDecomposition {
  double q = 0.0;
  std::vector<CovarianceTerms> terms;  // one per lag tau_min..decomposition_tau_max
  std::optional<AlphaFit> alpha;
  std::string no_alpha_reason;
  std::vector<std::size_t> alpha_fit_taus;
};

ScalingDecomposition scaling_decomposition(const TimeSeries& x, const TimeSeries& y,
                                           double q, const EstimationConfig& config);

enum class Direction { above, below, none };
std::string_view to_string(Direction direction);

struct CrossPersistenceVerdict {
  double q = 0.0;
  HurstEstimate h_xy;
  HurstEstimate h_x;
  HurstEstimate h_y;
  double h_avg = 0.0;
  bool deviates = false;
  Direction direction = Direction::none;
};

/// Compares H_xy(q) against (H_x(q) + H_y(q)) / 2 using H_xy's interval.
CrossPersistenceVerdict make_verdict(HurstEstimate h_xy, HurstEstimate h_x,
                                     HurstEstimate h_y);

CrossPersistenceVerdict cross_persistence_verdict(const TimeSeries& x,
                                                  const TimeSeries& y, double q,
                                                  const EstimationConfig& config);

}  // namespace mfhxa
