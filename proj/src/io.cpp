#include "rainbow/io.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "rainbow/colouring_gen.hpp"

namespace rainbow::io {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::uint64_t to_uint(const std::string& s, const std::string& ctx) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty())
    throw SchemaError(ctx + ": expected a non-negative integer, got '" + s + "'");
  return v;
}

std::uint32_t to_u32(const std::string& s, const std::string& ctx) {
  auto v = to_uint(s, ctx);
  if (v > 0xffffffffu) throw SchemaError(ctx + ": value out of range");
  return static_cast<std::uint32_t>(v);
}

bool is_index(const json& v) { return v.is_number_integer() && v.get<std::int64_t>() >= 0; }

template <class T>
T field(const json& j, const char* key, const std::string& ctx) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(ctx + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw SchemaError(ctx + ": field '" + key + "': " + e.what());
  }
}

std::vector<std::uint32_t> parse_orders(const std::string& s) {
  std::vector<std::uint32_t> orders;
  for (auto& part : split(s, 'x')) orders.push_back(to_u32(part, "group " + s));
  return orders;
}

}  // namespace

const char* version() { return "0.1.0"; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError(path + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json_file(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw SchemaError(path + ": cannot write");
  out << j.dump(2) << '\n';
}

GroupSpec parse_group(const std::string& s) {
  if (s.rfind("z2k:", 0) == 0) return GroupSpec::elementary_two(to_u32(s.substr(4), "group " + s));
  std::string body = (!s.empty() && (s[0] == 'Z' || s[0] == 'z')) ? s.substr(1) : s;
  auto orders = parse_orders(body);
  if (orders.size() == 1) return GroupSpec::cyclic(orders[0]);
  return GroupSpec::product(orders);
}

EdgeColouring load_colouring(const std::string& spec) {
  auto parts = split(spec, ':');
  const std::string& kind = parts[0];
  auto arg = [&](std::size_t i) {
    if (i >= parts.size()) throw SchemaError("colouring spec '" + spec + "': missing argument");
    return to_u32(parts[i], "colouring spec '" + spec + "'");
  };
  if (kind == "nd" && parts.size() == 2) return nd_colouring(arg(1));
  if (kind == "zsum" && parts.size() == 2) return group_sum_colouring(GroupSpec::cyclic(arg(1)));
  if (kind == "z2k" && parts.size() == 2) return group_sum_colouring(GroupSpec::elementary_two(arg(1)));
  if (kind == "zprod" && parts.size() == 2) return group_sum_colouring(GroupSpec::product(parse_orders(parts[1])));
  if (kind == "rr" && parts.size() == 2) return round_robin_proper(arg(1));
  if (kind == "random" && parts.size() == 4)
    return random_locally_k_bounded(arg(1), arg(2), to_uint(parts[3], "colouring spec '" + spec + "'"));
  return colouring_from_json(read_json_file(spec));
}

EdgeColouring colouring_from_json(const json& j) {
  const std::string ctx = "colouring";
  if (!j.is_object()) throw SchemaError(ctx + ": expected an object");
  if (j.contains("kind")) {
    auto kind = field<std::string>(j, "kind", ctx);
    if (kind == "nd") return nd_colouring(field<std::uint32_t>(j, "m", ctx));
    if (kind == "zsum") return group_sum_colouring(GroupSpec::cyclic(field<std::uint32_t>(j, "n", ctx)));
    if (kind == "z2k") return group_sum_colouring(GroupSpec::elementary_two(field<std::uint32_t>(j, "k", ctx)));
    if (kind == "zprod")
      return group_sum_colouring(GroupSpec::product(field<std::vector<std::uint32_t>>(j, "orders", ctx)));
    if (kind == "round_robin") return round_robin_proper(field<std::uint32_t>(j, "n", ctx));
    if (kind == "random_k_bounded")
      return random_locally_k_bounded(field<std::uint32_t>(j, "n", ctx), field<std::uint32_t>(j, "k", ctx),
                                      field<std::uint64_t>(j, "seed", ctx));
    if (kind != "explicit") throw SchemaError(ctx + ": unknown kind '" + kind + "'");
  }
  const auto n = field<std::uint32_t>(j, "n", ctx);
  const auto k = field<std::uint32_t>(j, "k", ctx);
  const auto& edges = j.contains("edges") ? j.at("edges") : json();
  if (!edges.is_array()) throw SchemaError(ctx + ": 'edges' must be an array");
  const std::size_t pairs = std::size_t(n) * (n - (n > 0)) / 2;
  if (edges.size() != pairs)
    throw SchemaError(ctx + ": expected " + std::to_string(pairs) + " edges, got " + std::to_string(edges.size()));
  std::vector<std::uint32_t> upper(pairs);
  std::vector<std::uint8_t> seen(pairs, 0);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    const std::string at = ctx + ": edges[" + std::to_string(i) + "]";
    if (!e.is_array() || e.size() != 3 || !is_index(e[0]) || !is_index(e[1]) || !is_index(e[2]))
      throw SchemaError(at + ": expected [u, v, c] with non-negative integers");
    auto u = e[0].get<std::uint32_t>(), v = e[1].get<std::uint32_t>();
    if (u == v || u >= n || v >= n) throw SchemaError(at + ": bad pair");
    if (u > v) std::swap(u, v);
    auto idx = EdgeColouring::tri_index(n, u, v);
    if (seen[idx]++) throw SchemaError(at + ": pair listed twice");
    upper[idx] = e[2].get<std::uint32_t>();
  }
  return EdgeColouring::explicit_table(n, k, std::move(upper));
}

json colouring_to_json(const EdgeColouring& col, bool force_explicit) {
  if (!force_explicit) {
    switch (col.kind()) {
      case ColouringKind::ND:
        return {{"kind", "nd"}, {"m", col.nd_m()}};
      case ColouringKind::GroupSum: {
        const auto& g = col.group();
        if (g.kind == GroupSpec::Kind::Cyclic) return {{"kind", "zsum"}, {"n", col.n()}};
        if (g.kind == GroupSpec::Kind::ElementaryTwo) return {{"kind", "z2k"}, {"k", g.orders.size()}};
        return {{"kind", "zprod"}, {"orders", g.orders}};
      }
      case ColouringKind::RoundRobin:
        return {{"kind", "round_robin"}, {"n", col.n()}};
      case ColouringKind::RandomKBounded:
        return {{"kind", "random_k_bounded"}, {"n", col.n()}, {"k", col.k()}, {"seed", col.seed()}};
      case ColouringKind::Explicit:
        break;
    }
  }
  json edges = json::array();
  for (VertexId u = 0; u < col.n(); ++u)
    for (VertexId v = u + 1; v < col.n(); ++v) edges.push_back({u, v, col.colour(u, v)});
  return {{"n", col.n()}, {"k", col.k()}, {"edges", std::move(edges)}};
}

Tree read_tree(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t lineno = 0;
  auto next = [&](std::istringstream& ls) {
    while (std::getline(in, line)) {
      ++lineno;
      auto p = line.find_first_not_of(" \t\r");
      if (p == std::string::npos || line[p] == '#') continue;
      ls = std::istringstream(line);
      return true;
    }
    return false;
  };
  auto where = [&] { return source + ":" + std::to_string(lineno) + ": "; };
  std::istringstream ls;
  if (!next(ls)) throw SchemaError(source + ": empty tree file");
  std::int64_t n = -1;
  std::string extra;
  if (!(ls >> n) || n < 1 || (ls >> extra)) throw SchemaError(where() + "expected a positive vertex count");
  std::vector<Edge> edges;
  while (next(ls)) {
    std::int64_t u = -1, v = -1;
    if (!(ls >> u >> v) || (ls >> extra)) throw SchemaError(where() + "expected 'u v'");
    if (u < 0 || v < 0 || u >= n || v >= n) throw SchemaError(where() + "vertex out of range");
    edges.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
  }
  if (edges.size() != static_cast<std::size_t>(n - 1))
    throw SchemaError(source + ": expected " + std::to_string(n - 1) + " edges, got " + std::to_string(edges.size()));
  try {
    return Tree(static_cast<std::uint32_t>(n), std::move(edges));
  } catch (const Error& e) {
    throw SchemaError(source + ": " + e.what());
  }
}

Tree load_tree(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError(path + ": cannot open");
  return read_tree(in, path);
}

void write_tree(std::ostream& out, const Tree& t) {
  out << t.size() << '\n';
  for (auto [u, v] : t.edges()) out << u << ' ' << v << '\n';
}

Tree make_tree(const std::string& spec) {
  auto parts = split(spec, ':');
  const std::string& f = parts[0];
  auto arg = [&](std::size_t i) { return to_u32(parts.at(i), "tree spec '" + spec + "'"); };
  auto big = [&](std::size_t i) { return to_uint(parts.at(i), "tree spec '" + spec + "'"); };
  const auto np = parts.size();
  if (f == "path" && np == 2) return path_tree(arg(1));
  if (f == "star" && np == 2) return star_tree(arg(1));
  if (f == "broom" && np == 3) return broom_tree(arg(1), arg(2));
  if (f == "spider" && np == 3) return spider_tree(arg(1), arg(2));
  if (f == "caterpillar" && np == 4) return caterpillar_tree(arg(1), arg(2), big(3));
  if (f == "double_star" && np == 3) return double_star_tree(arg(1), arg(2));
  if (f == "random" && np == 3) return random_tree(arg(1), big(2));
  if (f == "recursive" && np == 3) return random_recursive_tree(arg(1), big(2));
  return load_tree(spec);
}

json trace_to_json(const EmbedOutcome& out) {
  json attempts = json::array();
  for (const auto& a : out.attempts) {
    json layers = json::array();
    for (const auto& l : a.layers)
      layers.push_back({{"index", l.index},
                        {"kind", layer_kind_name(l.kind)},
                        {"size", l.size},
                        {"class_vertices", l.class_vertices},
                        {"class_colours", l.class_colours},
                        {"matched", l.matched},
                        {"matched_pool", l.matched_pool},
                        {"completed", l.completed},
                        {"r5_shortfall", l.r5_shortfall},
                        {"reserve_vertices", l.reserve_vertices},
                        {"reserve_colours", l.reserve_colours}});
    attempts.push_back({{"attempt", a.attempt},
                        {"stage", a.stage},
                        {"failure", a.failure},
                        {"detail", a.detail},
                        {"p0", a.p0},
                        {"p1_boost", a.p1_boost},
                        {"X0", a.X0},
                        {"C0", a.C0},
                        {"r1_min", a.r1_min},
                        {"r1_threshold", a.r1_threshold},
                        {"r3_min", a.r3_min},
                        {"r3_threshold", a.r3_threshold},
                        {"star_deficiency", a.star_deficiency},
                        {"reservoir_sizes", a.reservoir_sizes},
                        {"reserve_vertex_bound", a.reserve_vertex_bound},
                        {"reserve_colour_bound", a.reserve_colour_bound},
                        {"layers", std::move(layers)}});
  }
  return {{"method", out.method}, {"ell", out.ell},         {"j", out.j},
          {"D", out.D},           {"layer_sizes", out.layer_sizes}, {"failure", out.failure},
          {"attempts", std::move(attempts)}};
}

json embedding_to_json(const RainbowEmbedding& emb, const json& trace) {
  return {{"map", emb.map}, {"colours", emb.colours}, {"trace", trace}};
}

RainbowEmbedding embedding_from_json(const json& j) {
  RainbowEmbedding e;
  e.map = field<std::vector<VertexId>>(j, "map", "embedding");
  if (j.contains("colours")) e.colours = field<std::vector<ColourId>>(j, "colours", "embedding");
  return e;
}

json decomposition_to_json(const LayeredDecomposition& dec) {
  json layers = json::array();
  for (const auto& l : dec.layers) {
    json o{{"kind", layer_kind_name(l.kind)}, {"vertices", l.vertices}};
    if (!l.stars.empty()) {
      json s = json::array();
      for (const auto& st : l.stars) s.push_back({{"root", st.root}, {"leaves", st.leaves}});
      o["stars"] = std::move(s);
    }
    if (!l.paths.empty()) {
      json p = json::array();
      for (const auto& q : l.paths) p.push_back({q.x, q.a, q.b, q.y});
      o["paths"] = std::move(p);
    }
    if (!l.leaves.empty()) {
      json a = json::array();
      for (const auto& q : l.leaves) a.push_back({q.parent, q.leaf});
      o["leaves"] = std::move(a);
    }
    layers.push_back(std::move(o));
  }
  return {{"ell", dec.ell},
          {"j", dec.j},
          {"D", dec.D},
          {"mu", dec.mu},
          {"n_target", dec.n_target},
          {"path_length", dec.path_length},
          {"leaf_threshold", dec.leaf_threshold},
          {"heavy_peeled", dec.heavy_peeled},
          {"layers", std::move(layers)}};
}

json verdict_to_json(const Verdict& v) {
  json o{{"ok", v.ok}};
  if (!v.ok) o["reason"] = v.reason;
  if (!v.witness.empty()) o["witness"] = v.witness;
  return o;
}

json matching_to_json(const RainbowMatching& m) {
  json edges = json::array();
  for (const auto& e : m.edges) edges.push_back({e.a, e.x, e.c});
  return {{"edges", std::move(edges)}};
}

RainbowMatching matching_from_json(const json& j, const EdgeColouring& col) {
  RainbowMatching m;
  if (!j.is_object() || !j.contains("edges") || !j["edges"].is_array())
    throw SchemaError("matching: expected {\"edges\": [...]}");
  for (std::size_t i = 0; i < j["edges"].size(); ++i) {
    const auto& e = j["edges"][i];
    const std::string at = "matching: edges[" + std::to_string(i) + "]";
    if (!e.is_array() || e.size() < 2 || e.size() > 3 || !is_index(e[0]) || !is_index(e[1]))
      throw SchemaError(at + ": expected [a, x] or [a, x, c]");
    auto a = e[0].get<VertexId>(), x = e[1].get<VertexId>();
    if (a >= col.n() || x >= col.n() || a == x) throw SchemaError(at + ": bad pair");
    m.edges.push_back({a, x, col.colour(a, x)});
  }
  return m;
}

json summary_to_json(const StatSummary& s) {
  json reports = json::array();
  for (const auto& r : s.reports)
    reports.push_back({{"lemma", r.lemma},         {"n", r.n},
                       {"p", r.p},                 {"q", r.q},
                       {"k", r.k},                 {"sizes", r.sizes},
                       {"measured", r.measured},   {"target", r.target},
                       {"tolerance", r.tolerance}, {"one_sided", r.one_sided},
                       {"pass", r.pass},           {"deviation", r.deviation},
                       {"seed", r.seed},           {"trial", r.trial}});
  return {{"lemma", s.lemma},
          {"trials", s.trials},
          {"pass_rate", s.pass_rate},
          {"quantiles", {{"min", s.quantiles[0]}, {"q05", s.quantiles[1]}, {"median", s.quantiles[2]},
                         {"q95", s.quantiles[3]}, {"max", s.quantiles[4]}}},
          {"reports", std::move(reports)}};
}

json packing_to_json(const TreePacking& p) {
  return {{"host", p.n},          {"ell", p.ell},     {"exact", p.exact},
          {"method", p.method},   {"base", p.base.map}, {"copies", p.copies},
          {"validation", verdict_to_json(p.validation)}};
}

json labelling_to_json(const HarmoniousLabelling& h) {
  return {{"group", h.group.describe()},
          {"order", h.group.order()},
          {"method", h.method},
          {"labels", h.labels},
          {"validation", verdict_to_json(h.validation)}};
}

json cover_to_json(const DoubleCover& d) {
  json o{{"k", d.k}, {"host", 1u << d.k}, {"method", d.method}, {"copies", d.copies},
         {"validation", verdict_to_json(d.validation)}};
  if (!d.base.map.empty()) o["base"] = d.base.map;
  return o;
}

std::string embedding_to_dot(const EdgeColouring& col, const Tree& t, const RainbowEmbedding& emb) {
  std::ostringstream out;
  out << "graph embedding {\n";
  for (VertexId v = 0; v < t.size(); ++v) out << "  h" << emb.map[v] << " [label=\"" << emb.map[v] << "\"];\n";
  for (auto [u, v] : t.edges())
    out << "  h" << emb.map[u] << " -- h" << emb.map[v] << " [label=\""
        << col.colour(emb.map[u], emb.map[v]) + col.colour_offset() << "\"];\n";
  out << "}\n";
  return out.str();
}

std::string copies_to_dot(const Tree& t, const std::vector<std::vector<VertexId>>& copies) {
  std::ostringstream out;
  out << "graph copies {\n";
  for (std::size_t i = 0; i < copies.size(); ++i)
    for (auto [u, v] : t.edges())
      out << "  " << copies[i][u] << " -- " << copies[i][v] << " [label=\"" << i << "\"];\n";
  out << "}\n";
  return out.str();
}

std::string digest(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

json RunManifest::to_json() const {
  return {{"subcommand", subcommand}, {"config", config},   {"inputs", inputs},
          {"seed", seed},             {"version", version}, {"wall_seconds", wall_seconds}};
}

}  // namespace rainbow::io
