#pragma once

#include <cstdint>
#include <vector>

namespace conelearn {

/// Portable deterministic generator: xoshiro256++ seeded through splitmix64.
/// Gaussian draws use Box-Muller so streams are identical across platforms and
/// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();
  /// Uniform double in [0, 1), 53-bit resolution.
  double next_double();
  /// Standard normal.
  double next_gaussian();
  /// Uniform on the unit sphere in R^d.
  std::vector<double> unit_vector(std::size_t d);
  /// Uniform integer in [0, n).
  std::uint64_t next_below(std::uint64_t n);

  /// Deterministic per-stream split: mixes (seed, stream) into a fresh state.
  static Rng substream(std::uint64_t seed, std::uint64_t stream);

 private:
  std::uint64_t s_[4];
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace conelearn
