#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace obk {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derives an independent stream key from a parent key and a list of tags.
// Streams are addressed by key, so the order in which they are consumed never
// changes their content.
inline std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) {
  std::uint64_t h = splitmix64(seed ^ 0x6a09e667f3bcc909ULL);
  for (auto t : tags) h = splitmix64(h ^ splitmix64(t + 0x3c6ef372fe94f82bULL));
  return h;
}

// Uniform double in [0,1) determined entirely by (seed, tags).
inline double keyed_uniform(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) {
  return static_cast<double>(derive_seed(seed, tags) >> 11) * 0x1.0p-53;
}

// Stable tags for the subroutines that draw randomness.
enum class Stream : std::uint64_t {
  Labeling = 1,
  Intervals,
  Digraph,
  Orient,
  Split,
  Greedy,
  Nibble,
  Approx,
  Residual,
  Perturb,
  Exact,
  Driver,
  Weights,
  Trial,
};

inline std::uint64_t tag(Stream s) { return static_cast<std::uint64_t>(s); }

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  Rng(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) : eng_(derive_seed(seed, tags)) {}

  std::uint64_t next() { return eng_(); }
  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(eng_); }
  bool bernoulli(double p) { return uniform() < p; }
  // Uniform integer in [lo, hi].
  int range(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  std::size_t index(std::size_t size) {
    return std::uniform_int_distribution<std::size_t>(0, size - 1)(eng_);
  }
  template <class T>
  void shuffle(std::vector<T>& v) { std::shuffle(v.begin(), v.end(), eng_); }
  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace obk
