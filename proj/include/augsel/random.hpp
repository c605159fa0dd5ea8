#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace augsel {

using Rng = std::mt19937_64;

/// FNV-1a over raw bytes. Stable across platforms; used for feature hashing,
/// stream derivation and checksums.
constexpr std::uint64_t fnv1a64(std::string_view bytes,
                                std::uint64_t hash = 0xcbf29ce484222325ULL) {
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derives an independent stream seed from a master seed and a list of keys.
/// The result depends only on the values, never on call order.
class StreamKey {
 public:
  explicit StreamKey(std::uint64_t seed) : state_(splitmix64(seed)) {}

  StreamKey& add(std::string_view key) {
    state_ = splitmix64(state_ ^ fnv1a64(key));
    return *this;
  }
  StreamKey& add(std::uint64_t key) {
    state_ = splitmix64(state_ ^ splitmix64(key + 0x632be59bd9b4e019ULL));
    return *this;
  }

  std::uint64_t value() const { return state_; }
  Rng rng() const { return Rng(state_); }

 private:
  std::uint64_t state_;
};

/// Uniform double in [0, 1). The std distributions are implementation
/// defined, so sampling helpers are spelled out to keep runs reproducible
/// across standard libraries.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n). n must be positive.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % n;
}

inline double uniform_real(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

/// Fisher-Yates with uniform_index.
template <typename Container>
void shuffle(Container& items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = uniform_index(rng, i);
    using std::swap;
    swap(items[i - 1], items[j]);
  }
}

}  // namespace augsel
