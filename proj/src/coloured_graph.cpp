#include "rainbow/coloured_graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "rainbow/kernels.hpp"
#include "rainbow/rng.hpp"

namespace rainbow {

const char* kind_name(ColouringKind kind) {
  switch (kind) {
    case ColouringKind::Explicit: return "explicit";
    case ColouringKind::ND: return "nd";
    case ColouringKind::GroupSum: return "group_sum";
    case ColouringKind::RoundRobin: return "round_robin";
    case ColouringKind::RandomKBounded: return "random_k_bounded";
  }
  return "unknown";
}

GroupSpec GroupSpec::cyclic(std::uint32_t n) { return GroupSpec{Kind::Cyclic, {n}}; }

GroupSpec GroupSpec::elementary_two(std::uint32_t k) {
  if (k == 0 || k > 24) throw ParameterError("elementary two-group exponent must be in [1,24]");
  return GroupSpec{Kind::ElementaryTwo, std::vector<std::uint32_t>(k, 2)};
}

GroupSpec GroupSpec::product(std::vector<std::uint32_t> orders) {
  if (orders.empty()) throw ParameterError("product group needs at least one factor");
  for (auto o : orders)
    if (o < 2) throw ParameterError("product factor orders must be >= 2");
  return GroupSpec{Kind::Product, std::move(orders)};
}

std::uint32_t GroupSpec::order() const {
  std::uint64_t o = 1;
  for (auto f : orders) o *= f;
  if (o > 0xffffffffu) throw SizeError("group order overflows");
  return static_cast<std::uint32_t>(o);
}

bool GroupSpec::all_two() const {
  if (orders.empty()) return false;
  return std::all_of(orders.begin(), orders.end(), [](std::uint32_t o) { return o == 2; });
}

std::uint32_t GroupSpec::add(std::uint32_t g, std::uint32_t h) const {
  if (kind == Kind::Cyclic) {
    std::uint32_t n = orders[0];
    std::uint32_t s = g + h;
    return s >= n ? s - n : s;
  }
  if (kind == Kind::ElementaryTwo) return g ^ h;
  std::uint32_t out = 0, place = 1;
  for (auto f : orders) {
    std::uint32_t a = g % f, b = h % f;
    g /= f;
    h /= f;
    out += ((a + b) % f) * place;
    place *= f;
  }
  return out;
}

std::uint32_t GroupSpec::neg(std::uint32_t g) const {
  if (kind == Kind::Cyclic) return g == 0 ? 0 : orders[0] - g;
  if (kind == Kind::ElementaryTwo) return g;
  std::uint32_t out = 0, place = 1;
  for (auto f : orders) {
    std::uint32_t a = g % f;
    g /= f;
    out += ((f - a) % f) * place;
    place *= f;
  }
  return out;
}

std::string GroupSpec::describe() const {
  if (kind == Kind::Cyclic) return "Z" + std::to_string(orders[0]);
  if (kind == Kind::ElementaryTwo) return "Z2^" + std::to_string(orders.size());
  std::string s;
  for (std::size_t i = 0; i < orders.size(); ++i) s += (i ? "xZ" : "Z") + std::to_string(orders[i]);
  return s;
}

std::size_t EdgeColouring::tri_index(std::uint32_t n, std::uint32_t u, std::uint32_t v) {
  if (u > v) std::swap(u, v);
  std::size_t uu = u;
  return uu * (2 * static_cast<std::size_t>(n) - uu - 1) / 2 + (v - u - 1);
}

EdgeColouring EdgeColouring::explicit_table(std::uint32_t n, std::uint32_t k, std::vector<std::uint32_t> upper) {
  std::size_t pairs = static_cast<std::size_t>(n) * (n - (n > 0)) / 2;
  if (upper.size() != pairs) throw SchemaError("explicit colouring needs one colour per unordered pair");
  std::vector<std::uint32_t> labels(upper);
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  for (auto& c : upper) c = static_cast<std::uint32_t>(std::lower_bound(labels.begin(), labels.end(), c) - labels.begin());
  EdgeColouring e;
  e.n_ = n;
  e.k_ = k;
  e.num_colours_ = static_cast<std::uint32_t>(labels.size());
  e.kind_ = ColouringKind::Explicit;
  e.upper_ = std::move(upper);
  return e;
}

EdgeColouring EdgeColouring::nd(std::uint32_t m) {
  if (m == 0) throw ParameterError("nd colouring needs m >= 1");
  EdgeColouring e;
  e.n_ = 2 * m + 1;
  e.k_ = 2;
  e.num_colours_ = m;
  e.kind_ = ColouringKind::ND;
  e.nd_m_ = m;
  e.offset_ = 1;
  return e;
}

EdgeColouring EdgeColouring::group_sum_unchecked(const GroupSpec& g) {
  EdgeColouring e;
  e.n_ = g.order();
  e.k_ = 1;
  e.kind_ = ColouringKind::GroupSum;
  e.group_ = g;
  if (g.all_two()) {
    e.offset_ = 1;
    e.num_colours_ = e.n_ - 1;
  } else {
    e.num_colours_ = e.n_ >= 2 ? e.n_ : 0;
  }
  return e;
}

EdgeColouring EdgeColouring::round_robin(std::uint32_t n) {
  if (n < 2 || n % 2 != 0) throw ParityError("round-robin colouring needs an even n >= 2");
  EdgeColouring e;
  e.n_ = n;
  e.k_ = 1;
  e.num_colours_ = n - 1;
  e.kind_ = ColouringKind::RoundRobin;
  e.rr_n_ = n;
  e.rr_half_ = n / 2;
  return e;
}

EdgeColouring EdgeColouring::random_k_bounded(std::uint32_t n, std::uint32_t k, std::uint64_t seed) {
  if (n < 2) throw ParameterError("random colouring needs n >= 2");
  if (k < 1) throw ParameterError("random colouring needs k >= 1");
  EdgeColouring e;
  e.n_ = n;
  e.k_ = k;
  e.kind_ = ColouringKind::RandomKBounded;
  e.seed_ = seed;
  e.rr_n_ = n % 2 == 0 ? n : n + 1;
  e.rr_half_ = e.rr_n_ / 2;
  std::uint32_t classes = e.rr_n_ - 1;
  std::vector<std::uint32_t> order(classes);
  std::iota(order.begin(), order.end(), 0u);
  Rng rng(seed, "random_k_bounded");
  rng.shuffle(order);
  e.class_map_.assign(classes, 0);
  for (std::uint32_t pos = 0; pos < classes; ++pos) e.class_map_[order[pos]] = pos / k;
  e.num_colours_ = (classes + k - 1) / k;
  return e;
}

std::string EdgeColouring::describe() const {
  switch (kind_) {
    case ColouringKind::ND: return "nd:" + std::to_string(nd_m_);
    case ColouringKind::GroupSum: return "group_sum:" + group_.describe();
    case ColouringKind::RoundRobin: return "round_robin:" + std::to_string(n_);
    case ColouringKind::RandomKBounded:
      return "random_k_bounded:" + std::to_string(n_) + ":" + std::to_string(k_) + ":" + std::to_string(seed_);
    case ColouringKind::Explicit: return "explicit:" + std::to_string(n_);
  }
  return "?";
}

ColourId EdgeColouring::colour_of(VertexId u, VertexId v) const {
  if (u >= n_ || v >= n_)
    throw BoundsError("vertex out of range for n=" + std::to_string(n_));
  if (u == v) throw InvalidEdgeError("no edge joins a vertex to itself");
  return colour(u, v);
}

ColourId EdgeColouring::colour(VertexId u, VertexId v) const {
  switch (kind_) {
    case ColouringKind::ND: {
      std::uint32_t d = u >= v ? u - v : v - u;
      std::uint32_t e = n_ - d;
      return (d < e ? d : e) - 1;
    }
    case ColouringKind::GroupSum:
      return group_.add(u, v) - offset_;
    case ColouringKind::RoundRobin:
    case ColouringKind::RandomKBounded: {
      std::uint32_t piv = rr_n_ - 1;
      std::uint32_t r;
      if (u == piv) r = v;
      else if (v == piv) r = u;
      else r = static_cast<std::uint32_t>((static_cast<std::uint64_t>(u + v) * rr_half_) % piv);
      return kind_ == ColouringKind::RoundRobin ? r : class_map_[r];
    }
    case ColouringKind::Explicit:
      return upper_[tri_index(n_, u, v)];
  }
  return 0;
}

void EdgeColouring::row(VertexId v, std::uint32_t* out) const {
  if (v >= n_) throw BoundsError("vertex out of range");
  if (kind_ == ColouringKind::ND) {
    kernels::row_nd(v, n_, out);
    return;
  }
  if (kind_ == ColouringKind::GroupSum && group_.kind == GroupSpec::Kind::Cyclic) {
    kernels::row_mod_sum(v, n_, out);
    return;
  }
  if (kind_ == ColouringKind::GroupSum && group_.kind == GroupSpec::Kind::ElementaryTwo) {
    kernels::row_xor(v, n_, out);
    return;
  }
  for (std::uint32_t u = 0; u < n_; ++u) out[u] = u == v ? 0 : colour(v, u);
}

std::vector<std::uint32_t> EdgeColouring::row(VertexId v) const {
  std::vector<std::uint32_t> out(n_);
  row(v, out.data());
  return out;
}

std::uint32_t EdgeColouring::colour_degree(VertexId v, ColourId c) const {
  if (v >= n_) throw BoundsError("vertex out of range");
  if (c >= num_colours_) throw BoundsError("colour out of range");
  std::vector<std::uint32_t> r = row(v);
  std::uint32_t cnt = 0;
  for (std::uint32_t u = 0; u < n_; ++u)
    if (u != v && r[u] == c) ++cnt;
  return cnt;
}

VertexSet EdgeColouring::neighbours_in(VertexId v, const ColourSet& C, const VertexSet& X) const {
  if (v >= n_) throw BoundsError("vertex out of range");
  VertexSet out(n_);
  if (C.empty() || X.empty()) return out;
  std::vector<std::uint32_t> r = row(v);
  X.for_each([&](std::uint32_t u) {
    if (u != v && u < n_ && C.contains(r[u])) out.insert(u);
  });
  return out;
}

std::uint32_t EdgeColouring::count_neighbours(VertexId v, const std::vector<std::uint8_t>& cmask,
                                              const std::vector<std::uint8_t>& xmask,
                                              std::vector<std::uint32_t>& scratch) const {
  scratch.resize(n_);
  row(v, scratch.data());
  std::size_t c = kernels::count_masked(scratch.data(), xmask.data(), cmask.data(), n_);
  // out[v] was written as colour 0; undo a spurious self hit.
  if (xmask[v] && cmask[0]) --c;
  return static_cast<std::uint32_t>(c);
}

std::vector<std::uint32_t> EdgeColouring::table() const {
  std::vector<std::uint32_t> t;
  t.reserve(static_cast<std::size_t>(n_) * (n_ - (n_ > 0)) / 2);
  for (std::uint32_t u = 0; u < n_; ++u)
    for (std::uint32_t v = u + 1; v < n_; ++v) t.push_back(colour(u, v));
  return t;
}

std::uint32_t verify_locally_k_bounded(const EdgeColouring& col, std::uint32_t scan_limit) {
  std::uint32_t n = col.n();
  if (n > scan_limit) {
    switch (col.kind()) {
      case ColouringKind::Explicit:
        throw SizeError("explicit colouring above scan limit " + std::to_string(scan_limit));
      case ColouringKind::ND: return 2;
      case ColouringKind::GroupSum:
      case ColouringKind::RoundRobin: return 1;
      case ColouringKind::RandomKBounded: {
        std::uint32_t classes = (n % 2 == 0 ? n : n + 1) - 1;
        return std::min(col.k(), classes);
      }
    }
  }
  std::uint32_t best = 0;
  std::vector<std::uint32_t> counts(col.num_colours() + 1, 0);
  std::vector<std::uint32_t> r(n);
  for (std::uint32_t v = 0; v < n; ++v) {
    col.row(v, r.data());
    for (std::uint32_t u = 0; u < n; ++u)
      if (u != v) best = std::max(best, ++counts[r[u]]);
    for (std::uint32_t u = 0; u < n; ++u)
      if (u != v) counts[r[u]] = 0;
  }
  return best;
}

}  // namespace rainbow
