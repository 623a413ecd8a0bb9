#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace rainbow {

std::uint64_t splitmix64(std::uint64_t x);

// Seeded stream with portable bounded draws.  Streams are derived from a root
// seed and a stage label so every stage replays independently.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(splitmix64(seed)) {}
  Rng(std::uint64_t seed, std::string_view label);
  Rng(std::uint64_t seed, std::string_view label, std::uint64_t index);

  std::uint64_t next() { return eng_(); }
  std::uint32_t below(std::uint32_t bound);
  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return unit() < p; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = below(static_cast<std::uint32_t>(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  // Uniform k-subset of [0, n) in increasing order.
  std::vector<std::uint32_t> sample(std::uint32_t n, std::uint32_t k);

 private:
  std::mt19937_64 eng_;
};

std::uint64_t label_hash(std::string_view label);

}  // namespace rainbow
