#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "rainbow/applications.hpp"
#include "rainbow/coloured_graph.hpp"
#include "rainbow/embedder.hpp"
#include "rainbow/matching.hpp"
#include "rainbow/stats.hpp"
#include "rainbow/tree.hpp"

namespace rainbow::io {

using nlohmann::json;

// Inline specs: nd:M, zsum:N, z2k:K, zprod:AxBx..., rr:N, random:N:K:SEED.
// Anything else is read as a colouring JSON file.
EdgeColouring load_colouring(const std::string& spec_or_path);
EdgeColouring colouring_from_json(const json& j);
// Implicit kinds keep their closed form unless force_explicit.
json colouring_to_json(const EdgeColouring& col, bool force_explicit = false);

// Z8, 8, z2k:3, 2x2x3.
GroupSpec parse_group(const std::string& s);

// First line n, then one "u v" per line, 0-indexed.  Blank lines and lines
// starting with # are skipped.
Tree read_tree(std::istream& in, const std::string& source = "<stream>");
Tree load_tree(const std::string& path);
void write_tree(std::ostream& out, const Tree& t);

// family:args, e.g. path:9, star:8, broom:10:5, spider:4:3,
// caterpillar:100:20:SEED, double_star:5:5, random:50:SEED, pruefer:SEED:N.
// Anything else is a tree file.
Tree make_tree(const std::string& spec_or_path);

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);
std::string read_file(const std::string& path);

json trace_to_json(const EmbedOutcome& out);
json embedding_to_json(const RainbowEmbedding& emb, const json& trace = json::object());
RainbowEmbedding embedding_from_json(const json& j);
json decomposition_to_json(const LayeredDecomposition& dec);
json verdict_to_json(const Verdict& v);
json matching_to_json(const RainbowMatching& m);
// {"edges": [[a, x], ...]} or [[a, x, c], ...]; colours are filled from col.
RainbowMatching matching_from_json(const json& j, const EdgeColouring& col);

json summary_to_json(const StatSummary& s);
json packing_to_json(const TreePacking& p);
json labelling_to_json(const HarmoniousLabelling& h);
json cover_to_json(const DoubleCover& d);

// Graphviz: host edges of each copy, labelled by colour.
std::string embedding_to_dot(const EdgeColouring& col, const Tree& t, const RainbowEmbedding& emb);
std::string copies_to_dot(const Tree& t, const std::vector<std::vector<VertexId>>& copies);

std::string digest(const std::string& bytes);  // 64-bit FNV-1a, hex

struct RunManifest {
  std::string subcommand;
  json config = json::object();
  json inputs = json::object();  // name -> digest
  std::uint64_t seed = 0;
  std::string version;
  double wall_seconds = 0;

  json to_json() const;
};

const char* version();

}  // namespace rainbow::io
