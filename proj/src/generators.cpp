#include "mfhxa/generators.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "mfhxa/error.hpp"
#include "mfhxa/random.hpp"

namespace mfhxa {

namespace {

void check_memory_parameter(double d, const char* name) {
  if (!(d > 0.0 && d < 0.5)) {
    throw ParameterError(std::string(name) + "=" + std::to_string(d) +
                         " must lie in (0, 0.5)");
  }
}

// sum_{i=1..m} a[i-1] * x[t-i] with a fixed four-way accumulation order so
// results do not depend on compiler vectorization choices.
double memory_sum(const double* a, const double* x, std::size_t t,
                  std::size_t m) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  const double* h = x + t - 1;  // h[-i+1] == x[t-i]
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) {
    s0 += a[i] * h[-static_cast<std::ptrdiff_t>(i)];
    s1 += a[i + 1] * h[-static_cast<std::ptrdiff_t>(i + 1)];
    s2 += a[i + 2] * h[-static_cast<std::ptrdiff_t>(i + 2)];
    s3 += a[i + 3] * h[-static_cast<std::ptrdiff_t>(i + 3)];
  }
  for (; i < m; ++i) s0 += a[i] * h[-static_cast<std::ptrdiff_t>(i)];
  return (s0 + s1) + (s2 + s3);
}

void require_noise(const TimeSeries& noise, std::size_t needed) {
  if (noise.size() < needed) {
    throw InsufficientDataError("noise series has " + std::to_string(noise.size()) +
                                " values but " + std::to_string(needed) +
                                " are needed (length + burn_in)");
  }
}

}  // namespace

std::vector<double> arfima_weights(double d, std::size_t max_lag) {
  check_memory_parameter(d, "d");
  if (max_lag < 1) throw ParameterError("max_lag must be >= 1");
  std::vector<double> a(max_lag);
  a[0] = d;
  for (std::size_t i = 1; i < max_lag; ++i) {
    const double di = static_cast<double>(i);
    a[i] = a[i - 1] * (di - d) / (di + 1.0);
  }
  return a;
}

TimeSeries generate_mbm(const MbmConfig& config) {
  if (!(config.m0 > 0.0 && config.m0 < 1.0)) {
    throw ParameterError("m0=" + std::to_string(config.m0) + " must lie in (0, 1)");
  }
  if (config.k < 1 || config.k > 30) {
    throw ParameterError("k=" + std::to_string(config.k) + " must lie in [1, 30]");
  }
  const double m1 = 1.0 - config.m0;
  const int k = config.k;
  std::vector<double> by_ones(static_cast<std::size_t>(k) + 1);
  for (int c = 0; c <= k; ++c) {
    by_ones[c] = std::pow(config.m0, k - c) * std::pow(m1, c);
  }
  const std::size_t n = std::size_t{1} << k;
  std::vector<double> mu(n);
  for (std::size_t j = 0; j < n; ++j) mu[j] = by_ones[std::popcount(j)];
  return TimeSeries(std::move(mu), "mbm(m0=" + std::to_string(config.m0) + ")");
}

SeriesPair correlated_noise_pair(const NoisePairConfig& config) {
  if (!(std::fabs(config.rho) <= 1.0)) {
    throw ParameterError("rho=" + std::to_string(config.rho) + " must lie in [-1, 1]");
  }
  if (config.length < 1) throw ParameterError("length must be >= 1");
  NormalStream first(config.seed, 0);
  NormalStream second(config.seed, 1);
  const double rho = config.rho;
  const double rest = std::sqrt(1.0 - rho * rho);
  std::vector<double> eps(config.length), nu(config.length);
  for (std::size_t t = 0; t < config.length; ++t) {
    eps[t] = first.next();
    const double eta = second.next();
    nu[t] = rho * eps[t] + rest * eta;
  }
  return {TimeSeries(std::move(eps), "eps"), TimeSeries(std::move(nu), "nu")};
}

TimeSeries standard_normal_noise(std::size_t length, std::uint64_t seed) {
  if (length < 1) throw ParameterError("length must be >= 1");
  NormalStream stream(seed, 0);
  std::vector<double> v(length);
  for (double& x : v) x = stream.next();
  return TimeSeries(std::move(v), "noise");
}

TimeSeries generate_arfima(std::span<const double> weights, std::size_t length,
                           std::size_t burn_in, const TimeSeries& noise) {
  if (length < 1) throw ParameterError("length must be >= 1");
  const std::size_t total = length + burn_in;
  require_noise(noise, total);
  const auto eps = noise.values();
  const std::size_t trunc = weights.size();
  std::vector<double> x(total, 0.0);
  for (std::size_t t = 0; t < total; ++t) {
    const std::size_t m = std::min(t, trunc);
    x[t] = eps[t] + (m > 0 ? memory_sum(weights.data(), x.data(), t, m) : 0.0);
  }
  return TimeSeries(std::vector<double>(x.begin() + burn_in, x.end()), "arfima");
}

TimeSeries generate_arfima(const ArfimaConfig& config, const TimeSeries& noise) {
  check_memory_parameter(config.d, "d");
  if (config.truncation < 1) throw ParameterError("truncation must be >= 1");
  const auto a = arfima_weights(config.d, config.truncation);
  return generate_arfima(a, config.length, config.burn_in, noise)
      .relabeled("arfima(d=" + std::to_string(config.d) + ")");
}

SeriesPair generate_arfima_pair(double d1, double d2, double rho,
                                std::size_t length, std::size_t burn_in,
                                std::size_t truncation, std::uint64_t seed) {
  check_memory_parameter(d1, "d1");
  check_memory_parameter(d2, "d2");
  auto [eps, nu] = correlated_noise_pair({rho, length + burn_in, seed});
  TimeSeries x = generate_arfima({d1, length, truncation, burn_in, seed}, eps);
  TimeSeries y = generate_arfima({d2, length, truncation, burn_in, seed}, nu);
  return {x.relabeled("x"), y.relabeled("y")};
}

SeriesPair generate_two_component(const TwoComponentConfig& config,
                                  const TimeSeries& eps, const TimeSeries& nu) {
  check_memory_parameter(config.d1, "d1");
  check_memory_parameter(config.d2, "d2");
  if (!(config.w >= 0.5 && config.w <= 1.0)) {
    throw ParameterError("w=" + std::to_string(config.w) + " must lie in [0.5, 1]");
  }
  if (config.length < 1) throw ParameterError("length must be >= 1");
  if (config.truncation < 1) throw ParameterError("truncation must be >= 1");
  const std::size_t total = config.length + config.burn_in;
  require_noise(eps, total);
  require_noise(nu, total);
  const auto a1 = arfima_weights(config.d1, config.truncation);
  const auto a2 = arfima_weights(config.d2, config.truncation);
  const double w = config.w;
  const auto e = eps.values();
  const auto v = nu.values();
  std::vector<double> big_x(total, 0.0), big_y(total, 0.0);
  for (std::size_t t = 0; t < total; ++t) {
    const std::size_t m = std::min(t, config.truncation);
    const double mx = m > 0 ? memory_sum(a1.data(), big_x.data(), t, m) : 0.0;
    const double my = m > 0 ? memory_sum(a2.data(), big_y.data(), t, m) : 0.0;
    big_x[t] = (w * mx + (1.0 - w) * my) + e[t];
    big_y[t] = ((1.0 - w) * mx + w * my) + v[t];
  }
  const auto skip = static_cast<std::ptrdiff_t>(config.burn_in);
  return {TimeSeries(std::vector<double>(big_x.begin() + skip, big_x.end()), "x"),
          TimeSeries(std::vector<double>(big_y.begin() + skip, big_y.end()), "y")};
}

SeriesPair generate_two_component(const TwoComponentConfig& config) {
  auto [eps, nu] =
      correlated_noise_pair({0.0, config.length + config.burn_in, config.seed});
  return generate_two_component(config, eps, nu);
}

}  // namespace mfhxa
