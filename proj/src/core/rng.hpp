#pragma once

#include <cstdint>

// Counter-based random numbers. Every draw is a pure function of
// (key, counter), so a run never shares generator state with another run and
// results do not depend on scheduling.
namespace gre::rng {

constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Independent key for sub-stream `stream` of `seed`.
constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) noexcept {
  return splitmix64(seed ^ splitmix64(stream ^ 0xD1B54A32D192ED03ULL));
}

// Uniform on the open interval (0, 1), 53-bit resolution.
constexpr double open_uniform(std::uint64_t key, std::uint64_t counter) noexcept {
  const std::uint64_t bits = splitmix64(derive(key, counter)) >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1p-53;
}

// Uniform on the open interval (lo, hi).
constexpr double open_uniform(std::uint64_t key, std::uint64_t counter, double lo,
                              double hi) noexcept {
  return lo + (hi - lo) * open_uniform(key, counter);
}

// Named sub-streams used by the encoders and the experiment harness.
enum Stream : std::uint64_t {
  kStreamInput = 1,
  kStreamThreshold = 2,
  kStreamNoise = 3,
  kStreamGain = 4,
};

}  // namespace gre::rng
