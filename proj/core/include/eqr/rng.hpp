#pragma once

#include <cstdint>

namespace eqr {

/// Counter-based generator: the n-th draw of a stream (n = 1, 2, ...) is
///   splitmix64_mix(key + n * 0x9E3779B97F4A7C15)
/// where `key` is derived from (seed, trial, channel) by repeated mixing.
/// Identical keys give identical streams on every platform; normals use the
/// Box-Muller transform on 53-bit uniforms in (0, 1).
class StreamRng {
 public:
  enum Channel : std::uint64_t { kInitialPerturbation = 1, kProcessNoise = 2 };

  StreamRng(std::uint64_t seed, std::uint64_t trial, std::uint64_t channel);

  std::uint64_t next_u64();
  /// Uniform in the open interval (0, 1).
  double uniform();
  double normal();
  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

std::uint64_t splitmix64_mix(std::uint64_t z);

/// Key of the (seed, trial, channel) substream.
std::uint64_t stream_key(std::uint64_t seed, std::uint64_t trial, std::uint64_t channel);

}  // namespace eqr
