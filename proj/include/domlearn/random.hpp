#pragma once

#include <cstddef>
#include <cstdint>

namespace domlearn {

/// SplitMix64 finalizer; also used to derive independent seeds.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Portable seedable 64-bit generator (SplitMix64). Identical streams on
/// every platform for a given seed.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform on [0, 1) with 53 bits of precision.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform on [0, n); n > 0.
  std::size_t below(std::size_t n) {
    auto index = static_cast<std::size_t>(uniform01() * static_cast<double>(n));
    return index < n ? index : n - 1;
  }

 private:
  std::uint64_t state_;
};

}  // namespace domlearn
