#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace swarmsim {

// Run-level random source. One Rng instance per simulation run; every module
// draws from it, so the seed pins the entire trace. Bounded draws are
// implemented by hand because the std:: distributions are not specified
// bit-identically across standard libraries, while mt19937_64 itself is.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0, n). Rejection sampling keeps it unbiased.
  std::uint64_t next_below(std::uint64_t n) {
    if (n == 0) throw std::logic_error("Rng::next_below: empty range");
    const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      const std::uint64_t x = gen_();
      if (x >= threshold) return x % n;
    }
  }

  // Uniform in [0, 1), 53-bit resolution.
  double next_unit() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [lo, hi], both ends included.
  std::int64_t next_int_inclusive(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw std::logic_error("Rng::next_int_inclusive: empty range");
    const std::uint64_t span =
        static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    return lo + static_cast<std::int64_t>(next_below(span));
  }

  // Fisher-Yates shuffle driven by this stream.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(next_below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 gen_;
};

// SplitMix64 finalizer. Bijective on 64-bit values; used to widen packed
// run coordinates into well-spread per-run seeds.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace swarmsim
