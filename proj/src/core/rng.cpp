#include "wmbench/core/rng.hpp"

#include <cmath>
#include <string>

#include "wmbench/core/error.hpp"

namespace wmbench {
namespace {
constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kChildGamma = 0xD1B54A32D192ED03ULL;
}  // namespace

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t Rng::next_u64() {
  ++counter_;
  return mix64(seed_ + counter_ * kGamma);
}

double Rng::uniform(double lo, double hi) {
  if (!(lo <= hi)) {
    throw InvalidRange("uniform range [" + std::to_string(lo) + ", " + std::to_string(hi) + ")");
  }
  const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  if (lo == hi) return lo;
  const double x = lo + (hi - lo) * u;
  return x < hi ? x : std::nextafter(hi, lo);
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw InvalidArgument("Rng::below(0)");
  // Lemire's multiply-shift with rejection.
  while (true) {
    const unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
    const auto low = static_cast<std::uint64_t>(m);
    if (low >= (0 - n) % n) return static_cast<std::uint64_t>(m >> 64);
  }
}

std::uint64_t Rng::derive_seed(std::uint64_t parent, std::uint64_t index) {
  return mix64(mix64(parent) + (index + 1) * kChildGamma);
}

}  // namespace wmbench
