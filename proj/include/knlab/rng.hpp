#pragma once

#include <cstdint>

#include "knlab/combinatorics.hpp"

namespace knlab {

// splitmix64 finalizer. Used only to expand user seeds into generator state.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// xorshift64* generator. State advance:
//   x ^= x >> 12; x ^= x << 25; x ^= x >> 27;
// output = x * 0x2545F4914F6CDD1D.
// Seeding: state = splitmix64(seed), replaced by 1 if that is zero.
// Bounded draws use rejection on the top of the 64-bit range so that every
// value in [0, bound) is equally likely.
class Xorshift64Star {
 public:
  explicit Xorshift64Star(std::uint64_t seed) noexcept : state_(splitmix64(seed)) {
    if (state_ == 0) state_ = 1;
  }

  std::uint64_t next() noexcept {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1DULL;
  }

  // Uniform in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound) noexcept {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % bound;
  }

  // Uniform in [0, bound) for 128-bit bounds.
  u128 below128(u128 bound) noexcept {
    if (bound <= UINT64_MAX) return below(static_cast<std::uint64_t>(bound));
    const u128 max = ~u128{0};
    const u128 limit = max - max % bound;
    u128 x;
    do {
      x = (static_cast<u128>(next()) << 64) | next();
    } while (x >= limit);
    return x % bound;
  }

  bool coin() noexcept { return (next() >> 63) != 0; }

  std::uint64_t state() const noexcept { return state_; }

 private:
  std::uint64_t state_;
};

// Seed for an independent stream, derived from a base seed and a stream index.
constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  return splitmix64(seed ^ splitmix64(stream + 0x632BE59BD9B4E019ULL));
}

}  // namespace knlab
