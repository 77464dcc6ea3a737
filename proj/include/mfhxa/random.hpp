#pragma once

#include <cstdint>
#include <random>

namespace mfhxa {

/// Seedable standard-normal source.
///
/// Engine: std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The 64-bit seed is mixed with the stream id through splitmix64
/// so independent streams can share one user seed. Uniforms are built from
/// the top 53 bits; normals use the Box-Muller transform, returning the
/// cosine branch first and caching the sine branch. std::normal_distribution
/// is avoided because its algorithm differs between standard libraries.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed, std::uint64_t stream_id = 0);

  double next();

 private:
  double uniform_open();

  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace mfhxa
