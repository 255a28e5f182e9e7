#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace escprob {

/// Seedable, splittable random stream (xoshiro256** keyed through splitmix64).
///
/// Streams are identified by (seed, index): `RandomStream(seed)` is stream 0,
/// `RandomStream(seed, i)` is an independent substream used for chunk `i` of a
/// parallel Monte Carlo run. The variate transforms are implemented here rather
/// than taken from <random> so sequences are identical across standard
/// libraries.
class RandomStream {
 public:
  static constexpr std::string_view kFamily = "xoshiro256**/splitmix64";

  explicit RandomStream(std::uint64_t seed, std::uint64_t index = 0);

  /// Independent child stream; deterministic in (parent key, index).
  RandomStream split(std::uint64_t index) const;

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal (Box-Muller, second variate cached).
  double normal();
  /// Exponential with the given rate.
  double exponential(double rate);

 private:
  std::array<std::uint64_t, 4> s_{};
  std::uint64_t key_ = 0;
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

/// splitmix64 finaliser; also used to derive per-run seeds.
std::uint64_t mix64(std::uint64_t x);

}  // namespace escprob
