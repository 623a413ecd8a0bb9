#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rainbow {

using VertexId = std::uint32_t;
using ColourId = std::uint32_t;

inline constexpr std::uint32_t kNone = 0xffffffffu;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidEdgeError : Error { using Error::Error; };
struct BoundsError : Error { using Error::Error; };
struct SizeError : Error { using Error::Error; };
struct ParityError : Error { using Error::Error; };
struct ParameterError : Error { using Error::Error; };
struct InfeasibleParametersError : Error { using Error::Error; };
struct SchemaError : Error { using Error::Error; };
struct InternalError : Error { using Error::Error; };

struct CompletionError : Error {
  CompletionError(const std::string& what, VertexId v) : Error(what), stuck(v) {}
  VertexId stuck;
};

// Membership bitset over [0, universe).  Used for both vertex and colour sets.
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(std::uint32_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

  static IndexSet all(std::uint32_t universe);
  static IndexSet of(std::uint32_t universe, const std::vector<std::uint32_t>& members);

  std::uint32_t universe() const { return universe_; }
  std::uint32_t size() const { return count_; }
  bool empty() const { return count_ == 0; }

  bool contains(std::uint32_t i) const {
    return i < universe_ && ((words_[i >> 6] >> (i & 63)) & 1u);
  }
  bool insert(std::uint32_t i);
  bool erase(std::uint32_t i);
  void clear();

  std::vector<std::uint32_t> members() const;
  const std::vector<std::uint64_t>& words() const { return words_; }

  // Byte mask with three bytes of tail padding, for the gather kernels.
  std::vector<std::uint8_t> byte_mask() const;

  bool operator==(const IndexSet& o) const { return universe_ == o.universe_ && words_ == o.words_; }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        unsigned b = static_cast<unsigned>(__builtin_ctzll(bits));
        f(static_cast<std::uint32_t>(w * 64 + b));
        bits &= bits - 1;
      }
    }
  }

 private:
  std::uint32_t universe_ = 0;
  std::uint32_t count_ = 0;
  std::vector<std::uint64_t> words_;
};

using VertexSet = IndexSet;
using ColourSet = IndexSet;

}  // namespace rainbow
