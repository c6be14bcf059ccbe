#pragma once

#include <cstdint>

namespace ceor {

// Counter-based randomness built from the splitmix64 finalizer. Every draw
// is a pure function of (seed, round, draw index, component), so results do
// not depend on evaluation order and stay bit-identical under parallel
// scoring or sweep-tile chunking.

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix_keys(std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(a + kGolden) ^ (b + 0x85ebca6b0f64ee4dULL));
}

class RoundRng {
 public:
  RoundRng(std::uint64_t seed, std::uint64_t round)
      : key_(mix_keys(seed, round)) {}

  std::uint64_t bits(std::uint64_t draw, std::uint64_t component = 0) const {
    return splitmix64(mix_keys(key_, draw) + component * kGolden);
  }

  // Uniform on [0, 1), 53-bit mantissa.
  double uniform01(std::uint64_t draw, std::uint64_t component = 0) const {
    return static_cast<double>(bits(draw, component) >> 11) * 0x1.0p-53;
  }

  // Uniform on the open interval (0, 1); never returns either endpoint.
  double uniform_open(std::uint64_t draw, std::uint64_t component = 0) const {
    return (static_cast<double>(bits(draw, component) >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(std::uint64_t draw, std::uint64_t component, double lo,
                 double hi) const {
    return lo + uniform01(draw, component) * (hi - lo);
  }

  std::uint64_t key() const { return key_; }

 private:
  std::uint64_t key_;
};

}  // namespace ceor
