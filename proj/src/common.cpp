#include "rainbow/common.hpp"
#include "rainbow/rng.hpp"

#include <algorithm>

namespace rainbow {

IndexSet IndexSet::all(std::uint32_t universe) {
  IndexSet s(universe);
  for (std::uint32_t i = 0; i < universe; ++i) s.insert(i);
  return s;
}

IndexSet IndexSet::of(std::uint32_t universe, const std::vector<std::uint32_t>& members) {
  IndexSet s(universe);
  for (auto m : members) {
    if (m >= universe) throw BoundsError("set member " + std::to_string(m) + " out of range");
    s.insert(m);
  }
  return s;
}

bool IndexSet::insert(std::uint32_t i) {
  if (i >= universe_) throw BoundsError("set member " + std::to_string(i) + " out of range");
  std::uint64_t& w = words_[i >> 6];
  std::uint64_t bit = std::uint64_t{1} << (i & 63);
  if (w & bit) return false;
  w |= bit;
  ++count_;
  return true;
}

bool IndexSet::erase(std::uint32_t i) {
  if (i >= universe_) return false;
  std::uint64_t& w = words_[i >> 6];
  std::uint64_t bit = std::uint64_t{1} << (i & 63);
  if (!(w & bit)) return false;
  w &= ~bit;
  --count_;
  return true;
}

void IndexSet::clear() {
  std::fill(words_.begin(), words_.end(), 0);
  count_ = 0;
}

std::vector<std::uint32_t> IndexSet::members() const {
  std::vector<std::uint32_t> out;
  out.reserve(count_);
  for_each([&](std::uint32_t i) { out.push_back(i); });
  return out;
}

std::vector<std::uint8_t> IndexSet::byte_mask() const {
  std::vector<std::uint8_t> m(static_cast<std::size_t>(universe_) + 3, 0);
  for_each([&](std::uint32_t i) { m[i] = 1; });
  return m;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t label_hash(std::string_view label) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

Rng::Rng(std::uint64_t seed, std::string_view label) : eng_(splitmix64(seed ^ label_hash(label))) {}

Rng::Rng(std::uint64_t seed, std::string_view label, std::uint64_t index)
    : eng_(splitmix64(splitmix64(seed ^ label_hash(label)) + index)) {}

std::uint32_t Rng::below(std::uint32_t bound) {
  if (bound == 0) return 0;
  // Lemire's multiply-shift with rejection.
  std::uint64_t x = eng_() >> 32;
  std::uint64_t m = x * bound;
  std::uint32_t low = static_cast<std::uint32_t>(m);
  if (low < bound) {
    std::uint32_t t = static_cast<std::uint32_t>(-bound) % bound;
    while (low < t) {
      x = eng_() >> 32;
      m = x * bound;
      low = static_cast<std::uint32_t>(m);
    }
  }
  return static_cast<std::uint32_t>(m >> 32);
}

std::vector<std::uint32_t> Rng::sample(std::uint32_t n, std::uint32_t k) {
  if (k > n) k = n;
  std::vector<std::uint32_t> pool(n);
  for (std::uint32_t i = 0; i < n; ++i) pool[i] = i;
  for (std::uint32_t i = 0; i < k; ++i) {
    std::uint32_t j = i + below(n - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace rainbow
