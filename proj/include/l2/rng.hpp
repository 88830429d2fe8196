#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace l2 {

/// SplitMix64 step. Fully specified, identical on every platform, which is
/// what keeps seeded pipelines byte-reproducible.
inline constexpr std::uint64_t splitmix64_next(std::uint64_t& state) noexcept {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t fnv1a64(std::string_view s) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

/// Derive an independent stream seed from a base seed and a stream index.
inline constexpr std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t stream) noexcept {
  std::uint64_t s = seed;
  std::uint64_t h = splitmix64_next(s);
  s = h ^ (stream * 0xD6E8FEB86659FD93ull + 0x2545F4914F6CDD1Dull);
  return splitmix64_next(s);
}

inline constexpr std::uint64_t derive_stream(std::uint64_t seed, std::string_view label) noexcept {
  return derive_stream(seed, fnv1a64(label));
}

/// Source of uniform draws. Virtual so tests can count or script draws.
class UniformSource {
 public:
  virtual ~UniformSource() = default;
  /// Next uniform double in [0, 1).
  virtual double next_u01() = 0;
};

class SeededRng final : public UniformSource {
 public:
  explicit SeededRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() noexcept { return splitmix64_next(state_); }

  double next_u01() override {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Unbiased integer in [0, n). n must be positive.
  std::uint64_t next_below(std::uint64_t n) noexcept {
    // Rejection sampling over the top of the range.
    const std::uint64_t limit = ~0ull - (~0ull % n);
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % n;
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(next_below(i));
      using std::swap;
      swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace l2
