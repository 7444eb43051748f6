#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <utility>

namespace genopt {

/// SplitMix64 finalizer. Used both as the generator step and to derive
/// independent stream seeds from (seed, evolver, generation, lane) tuples.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts) noexcept {
  std::uint64_t h = 0x243f6a8885a308d3ULL;
  for (auto p : parts) h = mix64(h ^ (p + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
  return h;
}

/// Small deterministic random stream. Seeding is O(1), so a fresh stream per
/// lane per generation costs nothing; draws are identical on every platform
/// because no std distribution is involved.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed = 0) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

  /// Uniform integer in [lo, hi] (inclusive). Lemire's multiply-shift with rejection.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) noexcept {
    if (hi <= lo) return lo;
    const auto range = static_cast<std::uint64_t>(hi - lo) + 1;
    if (range == 0) return static_cast<std::int64_t>((*this)());
    auto x = (*this)();
    auto m = static_cast<unsigned __int128>(x) * range;
    auto l = static_cast<std::uint64_t>(m);
    if (l < range) {
      const std::uint64_t t = (0 - range) % range;
      while (l < t) {
        x = (*this)();
        m = static_cast<unsigned __int128>(x) * range;
        l = static_cast<std::uint64_t>(m);
      }
    }
    return lo + static_cast<std::int64_t>(m >> 64);
  }

  /// Uniform index in [0, n). n must be positive.
  int index(int n) noexcept { return static_cast<int>(uniform_int(0, n - 1)); }

  /// Uniform real in [0, 1) with 53 random bits.
  double uniform01() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  bool coin() noexcept { return ((*this)() >> 63) != 0; }

 private:
  std::uint64_t state_;
};

template <typename It>
void shuffle(It first, It last, Rng& rng) {
  const auto n = static_cast<int>(last - first);
  for (int i = n - 1; i > 0; --i) {
    const int j = rng.index(i + 1);
    using std::swap;
    swap(first[i], first[j]);
  }
}

}  // namespace genopt
