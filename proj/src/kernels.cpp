#include "mfhxa/kernels.hpp"

#include <cmath>
#include <exception>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mfhxa/error.hpp"

namespace mfhxa {

namespace {

void check_pair(const TimeSeries& x, const TimeSeries& y) {
  if (x.size() != y.size()) {
    throw LengthMismatchError("series lengths differ: " + std::to_string(x.size()) +
                              " vs " + std::to_string(y.size()));
  }
  if (x.size() < 2) {
    throw InsufficientDataError("estimation needs at least two observations");
  }
}

void check_q(double q) {
  if (!(q > 0.0) || !std::isfinite(q)) {
    throw ParameterError("q=" + std::to_string(q) + " must be positive");
  }
}

void check_taus(std::size_t tau_min, std::size_t tau_max, std::size_t n) {
  if (tau_min < 1 || tau_min > tau_max) {
    throw ParameterError("lag range " + std::to_string(tau_min) + ".." +
                         std::to_string(tau_max) + " is invalid");
  }
  if (tau_max + 1 > n) {
    throw LagTooLargeError("lag tau=" + std::to_string(tau_max) +
                           " is out of range for series of length " +
                           std::to_string(n));
  }
}

// log|p|, with -inf for exact zeros so exp(h * log|p|) == 0.
inline double log_abs(double p) {
  const double a = std::fabs(p);
  return a > 0.0 ? std::log(a) : -std::numeric_limits<double>::infinity();
}

// |p|^h given log|p|. h == 1 (q == 2) stays exact.
inline double power_from_log(double log_p, double abs_p, double h) {
  if (h == 1.0) return abs_p;
  return std::exp(h * log_p);
}

double mean_power(const std::vector<double>& abs_p,
                  const std::vector<double>& log_p, double h) {
  double s = 0.0;
  for (std::size_t t = 0; t < abs_p.size(); ++t) s += power_from_log(log_p[t], abs_p[t], h);
  return s / static_cast<double>(abs_p.size());
}

}  // namespace

IncrementSeries detrend_increments(IncrementSeries increments, TrendFilter filter) {
  auto& v = increments.values;
  const std::size_t n = v.size();
  switch (filter) {
    case TrendFilter::none:
      break;
    case TrendFilter::constant: {
      if (n < 2) {
        throw InsufficientDataError("constant filter needs at least 2 increments, got " +
                                    std::to_string(n));
      }
      double m = 0.0;
      for (double x : v) m += x;
      m /= static_cast<double>(n);
      for (double& x : v) x -= m;
      break;
    }
    case TrendFilter::linear: {
      if (n < 3) {
        throw InsufficientDataError("linear filter needs at least 3 increments, got " +
                                    std::to_string(n));
      }
      // OLS line on the index 0..n-1.
      const double nn = static_cast<double>(n);
      const double mt = (nn - 1.0) / 2.0;
      double my = 0.0;
      for (double x : v) my += x;
      my /= nn;
      double sty = 0.0, stt = 0.0;
      for (std::size_t t = 0; t < n; ++t) {
        const double dt = static_cast<double>(t) - mt;
        sty += dt * (v[t] - my);
        stt += dt * dt;
      }
      const double slope = sty / stt;
      for (std::size_t t = 0; t < n; ++t) {
        v[t] -= my + slope * (static_cast<double>(t) - mt);
      }
      break;
    }
  }
  return increments;
}

std::vector<double> filtered_increments(const TimeSeries& series, std::size_t tau,
                                        TrendFilter filter) {
  return detrend_increments(tau_increments(series, tau), filter).values;
}

double height_covariance(const TimeSeries& x, const TimeSeries& y, double q,
                         std::size_t tau, TrendFilter filter) {
  check_pair(x, y);
  check_q(q);
  check_taus(tau, tau, x.size());
  const auto dx = filtered_increments(x, tau, filter);
  const auto dy = &x == &y ? dx : filtered_increments(y, tau, filter);
  const double h = q / 2.0;
  double s = 0.0;
  for (std::size_t t = 0; t < dx.size(); ++t) {
    const double p = dx[t] * dy[t];
    s += power_from_log(log_abs(p), std::fabs(p), h);
  }
  return s / static_cast<double>(dx.size());
}

HeightCovarianceGrid::HeightCovarianceGrid(std::vector<double> q_values,
                                           std::size_t tau_min, std::size_t tau_max,
                                           std::vector<double> values,
                                           std::string x_label, std::string y_label)
    : q_values_(std::move(q_values)),
      tau_min_(tau_min),
      tau_max_(tau_max),
      values_(std::move(values)),
      x_label_(std::move(x_label)),
      y_label_(std::move(y_label)) {
  if (tau_min_ < 1 || tau_min_ > tau_max_) {
    throw ParameterError("grid lag range is invalid");
  }
  if (values_.size() != q_values_.size() * tau_count()) {
    throw ParameterError("grid holds " + std::to_string(values_.size()) +
                         " values, expected " +
                         std::to_string(q_values_.size() * tau_count()));
  }
  for (double k : values_) {
    if (!(k >= 0.0)) throw DomainError("height covariance values must be >= 0");
  }
}

std::size_t HeightCovarianceGrid::q_index(double q) const {
  for (std::size_t i = 0; i < q_values_.size(); ++i) {
    if (std::fabs(q_values_[i] - q) <= 1e-9) return i;
  }
  throw ParameterError("q=" + std::to_string(q) + " is not in the grid");
}

double HeightCovarianceGrid::at(std::size_t q_index, std::size_t tau) const {
  if (tau < tau_min_ || tau > tau_max_) {
    throw LagTooLargeError("lag " + std::to_string(tau) + " is outside the grid range " +
                           std::to_string(tau_min_) + ".." + std::to_string(tau_max_));
  }
  return values_.at(q_index * tau_count() + (tau - tau_min_));
}

std::span<const double> HeightCovarianceGrid::row(std::size_t q_index) const {
  return std::span<const double>(values_).subspan(q_index * tau_count(), tau_count());
}

HeightCovarianceGrid covariance_grid(const TimeSeries& x, const TimeSeries& y,
                                     std::span<const double> q_grid,
                                     std::size_t tau_min, std::size_t tau_max,
                                     TrendFilter filter) {
  check_pair(x, y);
  for (double q : q_grid) check_q(q);
  check_taus(tau_min, tau_max, x.size());
  const std::size_t n_tau = tau_max - tau_min + 1;
  const std::size_t n_q = q_grid.size();
  const bool self_pair = &x == &y || x.values().data() == y.values().data();
  std::vector<double> values(n_q * n_tau);
  std::exception_ptr error;

#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(n_tau); ++j) {
    try {
      const std::size_t tau = tau_min + static_cast<std::size_t>(j);
      const auto dx = filtered_increments(x, tau, filter);
      const auto dy = self_pair ? dx : filtered_increments(y, tau, filter);
      std::vector<double> abs_p(dx.size()), log_p(dx.size());
      for (std::size_t t = 0; t < dx.size(); ++t) {
        const double p = dx[t] * dy[t];
        abs_p[t] = std::fabs(p);
        log_p[t] = log_abs(p);
      }
      for (std::size_t i = 0; i < n_q; ++i) {
        values[i * n_tau + static_cast<std::size_t>(j)] =
            mean_power(abs_p, log_p, q_grid[i] / 2.0);
      }
    } catch (...) {
#pragma omp critical(mfhxa_grid_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return HeightCovarianceGrid(std::vector<double>(q_grid.begin(), q_grid.end()),
                              tau_min, tau_max, std::move(values), x.label(),
                              y.label());
}

HeightCovarianceGrid covariance_grid(const TimeSeries& x, const TimeSeries& y,
                                     const EstimationConfig& config) {
  config.validate();
  return covariance_grid(x, y, config.q_grid, config.tau_min, config.largest_tau(),
                         config.filter);
}

CovarianceTerms covariance_terms(const TimeSeries& x, const TimeSeries& y,
                                 double q, std::size_t tau, TrendFilter filter) {
  check_pair(x, y);
  check_q(q);
  check_taus(tau, tau, x.size());
  const auto dx = filtered_increments(x, tau, filter);
  const auto dy = filtered_increments(y, tau, filter);
  const double h = q / 2.0;
  const std::size_t n = dx.size();
  double sa = 0.0, sb = 0.0, sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    const double a = power_from_log(log_abs(dx[t]), std::fabs(dx[t]), h);
    const double b = power_from_log(log_abs(dy[t]), std::fabs(dy[t]), h);
    sa += a;
    sb += b;
    sab += a * b;
    saa += a * a;
    sbb += b * b;
  }
  const double nn = static_cast<double>(n);
  const double ma = sa / nn, mb = sb / nn, mab = sab / nn;
  CovarianceTerms out;
  out.tau = tau;
  out.k_xy = mab;
  out.product_term = ma * mb;
  out.covariance_term = mab - ma * mb;
  const double va = saa / nn - ma * ma;
  const double vb = sbb / nn - mb * mb;
  if (va > 0.0 && vb > 0.0) {
    const double r = out.covariance_term / std::sqrt(va * vb);
    out.correlation_z = r * std::sqrt(nn / static_cast<double>(tau));
  }
  return out;
}

std::vector<CovarianceTerms> covariance_terms(const TimeSeries& x,
                                              const TimeSeries& y, double q,
                                              std::size_t tau_min,
                                              std::size_t tau_max,
                                              TrendFilter filter) {
  check_pair(x, y);
  check_q(q);
  check_taus(tau_min, tau_max, x.size());
  std::vector<CovarianceTerms> out(tau_max - tau_min + 1);
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(out.size()); ++j) {
    try {
      out[static_cast<std::size_t>(j)] =
          covariance_terms(x, y, q, tau_min + static_cast<std::size_t>(j), filter);
    } catch (...) {
#pragma omp critical(mfhxa_terms_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

int kernel_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace reference {

double height_covariance(const TimeSeries& x, const TimeSeries& y, double q,
                         std::size_t tau, TrendFilter filter) {
  check_pair(x, y);
  check_q(q);
  check_taus(tau, tau, x.size());
  const auto dx = filtered_increments(x, tau, filter);
  const auto dy = filtered_increments(y, tau, filter);
  double s = 0.0;
  for (std::size_t t = 0; t < dx.size(); ++t) {
    s += std::pow(std::fabs(dx[t] * dy[t]), q / 2.0);
  }
  return s / static_cast<double>(dx.size());
}

HeightCovarianceGrid covariance_grid(const TimeSeries& x, const TimeSeries& y,
                                     std::span<const double> q_grid,
                                     std::size_t tau_min, std::size_t tau_max,
                                     TrendFilter filter) {
  check_taus(tau_min, tau_max, x.size());
  const std::size_t n_tau = tau_max - tau_min + 1;
  std::vector<double> values(q_grid.size() * n_tau);
  for (std::size_t i = 0; i < q_grid.size(); ++i) {
    for (std::size_t j = 0; j < n_tau; ++j) {
      values[i * n_tau + j] = reference::height_covariance(x, y, q_grid[i], tau_min + j, filter);
    }
  }
  return HeightCovarianceGrid(std::vector<double>(q_grid.begin(), q_grid.end()),
                              tau_min, tau_max, std::move(values), x.label(),
                              y.label());
}

}  // namespace reference

}  // namespace mfhxa
