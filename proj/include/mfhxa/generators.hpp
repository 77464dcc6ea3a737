#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "mfhxa/time_series.hpp"

namespace mfhxa {

// Deterministic binomial multiplicative cascade on [0, 1].
struct MbmConfig {
  double m0 = 0.3;
  int k = 16;
};

struct ArfimaConfig {
  double d = 0.3;
  std::size_t length = 10000;
  std::size_t truncation = 10000;
  std::size_t burn_in = 2000;
  std::uint64_t seed = 1;
};

struct NoisePairConfig {
  double rho = 0.0;
  std::size_t length = 10000;
  std::uint64_t seed = 1;
};

struct TwoComponentConfig {
  double d1 = 0.3;
  double d2 = 0.3;
  double w = 0.75;
  std::size_t length = 10000;
  std::size_t burn_in = 2000;
  std::size_t truncation = 10000;
  std::uint64_t seed = 1;
};

using SeriesPair = std::pair<TimeSeries, TimeSeries>;

/// AR(infinity) weights a_1..a_max_lag of (1 - L)^d, via
/// a_1 = d, a_{i+1} = a_i (i - d) / (i + 1).
std::vector<double> arfima_weights(double d, std::size_t max_lag);

/// Cascade masses after k stages; index j carries m0^(zeros) m1^(ones) of
/// its k-bit expansion. The values are an increment (measure) series.
TimeSeries generate_mbm(const MbmConfig& config);

/// Standard-normal innovations (eps, nu) with correlation rho, built as
/// nu = rho eps + sqrt(1 - rho^2) eta from two independent streams.
SeriesPair correlated_noise_pair(const NoisePairConfig& config);

/// White noise from the seeded stream used by the single-series generator.
TimeSeries standard_normal_noise(std::size_t length, std::uint64_t seed);

/// ARFIMA(0,d,0) increments driven by `noise`. The recursion starts from
/// zeros, runs burn_in + length steps with memory truncated at
/// min(t, truncation) lags, and drops the first burn_in values.
TimeSeries generate_arfima(const ArfimaConfig& config, const TimeSeries& noise);

/// Same recursion with explicit weights (tests force them to zero).
TimeSeries generate_arfima(std::span<const double> weights, std::size_t length,
                           std::size_t burn_in, const TimeSeries& noise);

/// ARFIMA(0,d1,0) / ARFIMA(0,d2,0) pair sharing correlated innovations.
SeriesPair generate_arfima_pair(double d1, double d2, double rho,
                                std::size_t length, std::size_t burn_in,
                                std::size_t truncation, std::uint64_t seed);

/// Two-component ARFIMA with independent innovations drawn from the seed.
SeriesPair generate_two_component(const TwoComponentConfig& config);

/// Two-component ARFIMA driven by caller-supplied innovations.
SeriesPair generate_two_component(const TwoComponentConfig& config,
                                  const TimeSeries& eps, const TimeSeries& nu);

}  // namespace mfhxa
