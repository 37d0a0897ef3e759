#include "eqr/rng.hpp"

#include <cmath>
#include <numbers>

namespace eqr {

namespace {
constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t stream_key(std::uint64_t seed, std::uint64_t trial, std::uint64_t channel) {
  std::uint64_t k = splitmix64_mix(seed + kGamma);
  k = splitmix64_mix(k ^ splitmix64_mix(trial + 2 * kGamma));
  return splitmix64_mix(k ^ splitmix64_mix(channel + 3 * kGamma));
}

StreamRng::StreamRng(std::uint64_t seed, std::uint64_t trial, std::uint64_t channel)
    : key_(stream_key(seed, trial, channel)) {}

std::uint64_t StreamRng::next_u64() {
  ++counter_;
  return splitmix64_mix(key_ + counter_ * kGamma);
}

double StreamRng::uniform() {
  // (m + 0.5) / 2^53 never hits 0 or 1
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double StreamRng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

}  // namespace eqr
