#include "mfhxa/estimator.hpp"

#include <cmath>
#include <exception>

#include "mfhxa/error.hpp"
#include "mfhxa/stats.hpp"

namespace mfhxa {

namespace {

std::string annotate(std::size_t tau_max, const std::exception& e) {
  return "tau_max=" + std::to_string(tau_max) + ": " + e.what();
}

}  // namespace

double fit_hurst_single(const HeightCovarianceGrid& grid, double q,
                        std::size_t tau_max, std::size_t min_fit_points) {
  const std::size_t qi = grid.q_index(q);
  const std::size_t tau_min = grid.tau_min();
  if (tau_max > grid.tau_max()) {
    throw LagTooLargeError("tau_max=" + std::to_string(tau_max) +
                           " exceeds the grid's largest lag " +
                           std::to_string(grid.tau_max()));
  }
  if (tau_max < tau_min || tau_max - tau_min + 1 < min_fit_points) {
    throw InsufficientDataError("fit window " + std::to_string(tau_min) + ".." +
                                std::to_string(tau_max) + " has fewer than " +
                                std::to_string(min_fit_points) + " points");
  }
  std::vector<double> log_tau, log_k;
  for (std::size_t tau = tau_min; tau <= tau_max; ++tau) {
    const double k = grid.at(qi, tau);
    if (!(k > 0.0)) {
      throw DegenerateScalingError("K(q=" + std::to_string(q) + ", tau=" +
                                   std::to_string(tau) +
                                   ") is zero; no scaling exponent exists");
    }
    log_tau.push_back(std::log(static_cast<double>(tau)));
    log_k.push_back(std::log(k));
  }
  return ols_line(log_tau, log_k).slope / grid.q_values()[qi];
}

HurstEstimate jackknife_hurst(const HeightCovarianceGrid& grid, double q,
                              const EstimationConfig& config) {
  const TauRange range = config.tau_max_range;
  if (range.first > range.last) throw ParameterError("tau_max range is empty");
  if (range.count() < 2) {
    throw InsufficientDataError(
        "a confidence interval needs at least two tau_max values");
  }
  HurstEstimate est;
  est.q = q;
  std::vector<double> hs;
  hs.reserve(range.count());
  for (std::size_t tau_max = range.first; tau_max <= range.last; ++tau_max) {
    double h = 0.0;
    try {
      h = fit_hurst_single(grid, q, tau_max, config.min_fit_points);
    } catch (const DegenerateScalingError& e) {
      throw DegenerateScalingError(annotate(tau_max, e));
    } catch (const InsufficientDataError& e) {
      throw InsufficientDataError(annotate(tau_max, e));
    } catch (const LagTooLargeError& e) {
      throw LagTooLargeError(annotate(tau_max, e));
    }
    est.per_tau_max.emplace_back(tau_max, h);
    hs.push_back(h);
  }
  const std::size_t n = hs.size();
  est.n_resamples = n;
  est.h = mean(hs);
  const double s = std::sqrt(sample_variance(hs));
  const double t = student_t_quantile((1.0 + config.confidence) / 2.0,
                                      static_cast<int>(n - 1));
  const double half = t * s / std::sqrt(static_cast<double>(n));
  est.ci_low = est.h - half;
  est.ci_high = est.h + half;
  return est;
}

std::size_t GeneralizedHurstCurve::succeeded() const {
  std::size_t n = 0;
  for (const auto& p : points) n += p.estimate.has_value();
  return n;
}

GeneralizedHurstCurve hurst_curve_from_grid(const HeightCovarianceGrid& grid,
                                            const EstimationConfig& config) {
  GeneralizedHurstCurve curve;
  curve.x_label = grid.x_label();
  curve.y_label = grid.y_label();
  curve.config = config;
  for (double q : grid.q_values()) {
    CurvePoint point;
    point.q = q;
    try {
      point.estimate = jackknife_hurst(grid, q, config);
    } catch (const Error& e) {
      point.diagnostic = e.what();
    }
    curve.points.push_back(std::move(point));
  }
  return curve;
}

GeneralizedHurstCurve generalized_hurst_curve(const TimeSeries& x,
                                              const TimeSeries& y,
                                              const EstimationConfig& config) {
  return hurst_curve_from_grid(covariance_grid(x, y, config), config);
}

ScalingDecomposition scaling_decomposition(const TimeSeries& x, const TimeSeries& y,
                                           double q, const EstimationConfig& config) {
  config.validate();
  ScalingDecomposition out;
  out.q = q;
  out.terms = covariance_terms(x, y, q, config.tau_min, config.decomposition_tau_max,
                               config.filter);
  std::vector<double> log_tau, log_cov;
  std::size_t excluded = 0;
  for (const auto& t : out.terms) {
    if (t.covariance_term > 0.0 && t.correlation_z >= config.covariance_z_threshold) {
      out.alpha_fit_taus.push_back(t.tau);
      log_tau.push_back(std::log(static_cast<double>(t.tau)));
      log_cov.push_back(std::log(t.covariance_term));
    } else {
      ++excluded;
    }
  }
  if (out.alpha_fit_taus.size() < config.min_fit_points) {
    out.no_alpha_reason = "no covariance scaling";
    return out;
  }
  const LineFit fit = ols_line(log_tau, log_cov);
  out.alpha = AlphaFit{fit.slope / q, fit.intercept, out.alpha_fit_taus.size(), excluded};
  return out;
}

std::string_view to_string(Direction direction) {
  switch (direction) {
    case Direction::above: return "above";
    case Direction::below: return "below";
    case Direction::none: return "none";
  }
  return "none";
}

CrossPersistenceVerdict make_verdict(HurstEstimate h_xy, HurstEstimate h_x,
                                     HurstEstimate h_y) {
  CrossPersistenceVerdict v;
  v.q = h_xy.q;
  v.h_avg = (h_x.h + h_y.h) / 2.0;
  v.deviates = v.h_avg < h_xy.ci_low || v.h_avg > h_xy.ci_high;
  if (v.deviates) {
    // Above: the joint exponent exceeds the average of the separate ones.
    v.direction = v.h_avg < h_xy.ci_low ? Direction::above : Direction::below;
  }
  v.h_xy = std::move(h_xy);
  v.h_x = std::move(h_x);
  v.h_y = std::move(h_y);
  return v;
}

CrossPersistenceVerdict cross_persistence_verdict(const TimeSeries& x,
                                                  const TimeSeries& y, double q,
                                                  const EstimationConfig& config) {
  EstimationConfig single = config;
  single.q_grid = {q};
  auto h_x = jackknife_hurst(covariance_grid(x, x, single), q, single);
  auto h_y = jackknife_hurst(covariance_grid(y, y, single), q, single);
  auto h_xy = jackknife_hurst(covariance_grid(x, y, single), q, single);
  return make_verdict(std::move(h_xy), std::move(h_x), std::move(h_y));
}

}  // namespace mfhxa
