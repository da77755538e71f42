#pragma once

#include <cstdint>

namespace wmbench {

/// Counter-based SplitMix64 stream. Draw i is a pure function of
/// (seed, i), so results do not depend on the platform or on the
/// standard library's generators. One owner per stream; parallel users
/// derive child streams with child().
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t counter() const noexcept { return counter_; }

  std::uint64_t next_u64();

  /// Uniform draw in [lo, hi); returns lo when lo == hi. Always consumes
  /// exactly one draw. Throws InvalidRange when lo > hi.
  double uniform(double lo, double hi);

  /// Uniform integer in [0, n) without modulo bias. n must be > 0.
  std::uint64_t below(std::uint64_t n);

  /// Seed of child stream `index`; children of one parent never collide
  /// with each other for distinct indices.
  static std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index);
  Rng child(std::uint64_t index) const { return Rng(derive_seed(seed_, index)); }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

/// SplitMix64 finalizer (a bijection on 64-bit words).
std::uint64_t mix64(std::uint64_t z);

}  // namespace wmbench
