#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace coherence {

// SplitMix64 finalizer (Steele, Lea, Flood). Bijective on 64-bit words.
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Folds `keys` into `seed` one word at a time: h <- mix(h ^ key).
// Used to derive per-task seeds from a master seed and canonical indices.
constexpr std::uint64_t hash64(std::uint64_t seed, std::initializer_list<std::uint64_t> keys) {
  std::uint64_t h = splitmix64_mix(seed);
  for (auto k : keys) h = splitmix64_mix(h ^ k);
  return h;
}

// Seedable, splittable 64-bit generator. The engine is std::mt19937_64,
// whose output sequence is fixed by the C++ standard; uniform doubles are
// formed from the top 53 bits so the stream is reproducible across
// standard libraries.
class RandomStream {
 public:
  using result_type = std::uint64_t;
  static constexpr std::string_view kAlgorithm = "mt19937_64/splitmix64";

  explicit RandomStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Independent child stream; advances this stream by one draw.
  RandomStream split() { return RandomStream(splitmix64_mix(engine_() ^ seed_)); }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace coherence
