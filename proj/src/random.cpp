#include "mfhxa/random.hpp"

#include <cmath>
#include <numbers>

namespace mfhxa {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

NormalStream::NormalStream(std::uint64_t seed, std::uint64_t stream_id)
    : engine_(splitmix64(seed ^ splitmix64(stream_id + 0x5851F42D4C957F2DULL))) {}

double NormalStream::uniform_open() {
  // (k + 0.5) / 2^53 lies strictly inside (0, 1).
  const std::uint64_t k = engine_() >> 11;
  return (static_cast<double>(k) + 0.5) * 0x1.0p-53;
}

double NormalStream::next() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  const double u1 = uniform_open();
  const double u2 = uniform_open();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  cached_ = r * std::sin(theta);
  has_cached_ = true;
  return r * std::cos(theta);
}

}  // namespace mfhxa
