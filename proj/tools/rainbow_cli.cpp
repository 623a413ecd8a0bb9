#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rainbow/applications.hpp"
#include "rainbow/colouring_gen.hpp"
#include "rainbow/io.hpp"
#include "rainbow/parallel.hpp"
#include "rainbow/verify.hpp"

using namespace rainbow;
using io::json;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kFailed = 2;

struct Options {
  std::string colouring, tree, out, dot, manifest;
  std::string embedding, matching, packing, cover, labels, group;
  std::string lemma = "edge_density";
  double epsilon = 0.2, mu = 0.01, p0 = 0, p = 0.3, q = 0.3, stat_eps = -1;
  std::uint32_t retries = 10, D = 0, k = 3, size_a = 0, size_b = 0, trials = 30, smallest = 0;
  std::uint32_t count = 20, tree_size = 0;
  std::vector<std::string> trees;
  std::uint64_t seed = 0, budget = 20'000'000;
  unsigned jobs = 1;
  bool exact = false, force_explicit = false, decompose = false;
};

PipelineConfig pipeline(const Options& o) {
  PipelineConfig c;
  c.epsilon = o.epsilon;
  c.mu = o.mu;
  c.p0 = o.p0;
  c.retries = o.retries;
  c.D = o.D;
  c.seed = o.seed;
  c.search_budget = o.budget;
  return c;
}

json config_json(const PipelineConfig& c) {
  return {{"epsilon", c.epsilon}, {"mu", c.mu},           {"p0", c.p0},
          {"D", c.D},             {"retries", c.retries}, {"seed", c.seed},
          {"fallback_cutoff", c.fallback_cutoff}, {"search_budget", c.search_budget}};
}

void emit(const Options& o, const json& j) {
  if (o.out.empty())
    std::cout << j.dump(2) << '\n';
  else
    io::write_json_file(o.out, j);
}

void emit_dot(const Options& o, const std::string& dot) {
  if (o.dot.empty()) return;
  std::ofstream f(o.dot);
  if (!f) throw SchemaError(o.dot + ": cannot write");
  f << dot;
}

void add_input(json& inputs, const char* name, const std::string& spec) {
  if (spec.empty()) return;
  std::ifstream probe(spec);
  inputs[name] = probe ? json{{"path", spec}, {"digest", io::digest(io::read_file(spec))}} : json{{"spec", spec}};
}

int cmd_gen(const Options& o) {
  if (!o.tree.empty()) {
    Tree t = io::make_tree(o.tree);
    if (o.decompose) {
      PipelineConfig c = pipeline(o);
      std::uint32_t target = o.size_a ? o.size_a : t.size();
      std::uint32_t D = c.D ? c.D : default_star_threshold(target);
      emit(o, io::decomposition_to_json(split_tree(t, D, c.mu, target, c.split)));
      return kOk;
    }
    if (o.out.empty()) {
      io::write_tree(std::cout, t);
    } else {
      std::ofstream f(o.out);
      if (!f) throw SchemaError(o.out + ": cannot write");
      io::write_tree(f, t);
    }
    return kOk;
  }
  if (o.colouring.empty()) throw CLI::ValidationError("gen", "needs --colouring or --tree");
  emit(o, io::colouring_to_json(io::load_colouring(o.colouring), o.force_explicit));
  return kOk;
}

int cmd_embed(const Options& o) {
  EdgeColouring col = io::load_colouring(o.colouring);
  Tree t = io::make_tree(o.tree);
  PipelineConfig c = pipeline(o);
  c.validate();
  EmbedOutcome out = embed_any(col, t, c);
  json trace = io::trace_to_json(out);
  trace["config"] = config_json(c);
  if (!out.ok()) {
    emit(o, json{{"map", nullptr}, {"colours", nullptr}, {"trace", trace}});
    std::cerr << "embedding failed: " << out.failure << '\n';
    return kFailed;
  }
  Verdict v = check_rainbow_embedding(col, t, *out.embedding);
  trace["validation"] = io::verdict_to_json(v);
  emit(o, io::embedding_to_json(*out.embedding, trace));
  emit_dot(o, io::embedding_to_dot(col, t, *out.embedding));
  return v ? kOk : kFailed;
}

int cmd_pack(const Options& o) {
  Tree t = io::make_tree(o.tree);
  try {
    TreePacking pk = ringel_pack(t, o.epsilon, o.exact, pipeline(o));
    emit(o, io::packing_to_json(pk));
    emit_dot(o, io::copies_to_dot(t, pk.copies));
    return pk.validation ? kOk : kFailed;
  } catch (const EmbeddingFailedError& e) {
    emit(o, json{{"error", e.what()}, {"trace", io::trace_to_json(e.outcome)}});
    return kFailed;
  }
}

int cmd_label(const Options& o) {
  Tree t = io::make_tree(o.tree);
  try {
    if (o.smallest) {
      auto h = smallest_harmonious(t, o.smallest, pipeline(o));
      if (!h) {
        emit(o, json{{"error", "no cyclic labelling up to order " + std::to_string(o.smallest)}});
        return kFailed;
      }
      emit(o, io::labelling_to_json(*h));
      return h->validation ? kOk : kFailed;
    }
    GroupSpec g = o.group.empty() ? GroupSpec::cyclic(t.size()) : io::parse_group(o.group);
    HarmoniousLabelling h = harmonious_label(t, g, pipeline(o));
    emit(o, io::labelling_to_json(h));
    return h.validation ? kOk : kFailed;
  } catch (const EmbeddingFailedError& e) {
    emit(o, json{{"error", e.what()}, {"trace", io::trace_to_json(e.outcome)}});
    return kFailed;
  }
}

int cmd_odc(const Options& o) {
  Tree t = io::make_tree(o.tree);
  try {
    DoubleCover dc = odc_construct(t, o.k, pipeline(o));
    json j = io::cover_to_json(dc);
    // Sizes with |T| <= 2^k - o(2^k) are the asymptotic regime; smaller
    // slack is flagged.
    j["theorem_regime"] = t.size() * 10 <= 9 * (1u << o.k);
    emit(o, j);
    emit_dot(o, io::copies_to_dot(t, dc.copies));
    return dc.validation ? kOk : kFailed;
  } catch (const EmbeddingFailedError& e) {
    emit(o, json{{"error", e.what()}, {"trace", io::trace_to_json(e.outcome)}});
    return kFailed;
  }
}

std::vector<std::vector<VertexId>> copies_from(const json& j, const std::string& src) {
  if (!j.is_object() || !j.contains("copies")) throw SchemaError(src + ": missing 'copies'");
  try {
    return j.at("copies").get<std::vector<std::vector<VertexId>>>();
  } catch (const json::exception& e) {
    throw SchemaError(src + ": " + e.what());
  }
}

int cmd_verify(const Options& o) {
  Verdict v;
  json report;
  if (!o.embedding.empty()) {
    EdgeColouring col = io::load_colouring(o.colouring);
    Tree t = io::make_tree(o.tree);
    RainbowEmbedding e = io::embedding_from_json(io::read_json_file(o.embedding));
    v = e.colours.empty() ? check_rainbow_embedding(col, t, e.map) : check_rainbow_embedding(col, t, e);
    report["check"] = "rainbow_embedding";
  } else if (!o.matching.empty()) {
    EdgeColouring col = io::load_colouring(o.colouring);
    RainbowMatching m = io::matching_from_json(io::read_json_file(o.matching), col);
    VertexSet all(col.n());
    for (VertexId x = 0; x < col.n(); ++x) all.insert(x);
    ColourSet colours(col.num_colours());
    for (ColourId c = 0; c < col.num_colours(); ++c) colours.insert(c);
    auto err = validate_matching(col, m, all, all, colours);
    v = err ? Verdict::fail(*err, {}) : Verdict::pass();
    report["check"] = "rainbow_matching";
  } else if (!o.packing.empty()) {
    Tree t = io::make_tree(o.tree);
    json j = io::read_json_file(o.packing);
    auto copies = copies_from(j, o.packing);
    std::uint32_t host = j.value("host", 0u);
    if (!host) throw SchemaError(o.packing + ": missing 'host'");
    v = check_packing(host, t, copies, o.exact || j.value("exact", false));
    report["check"] = "packing";
  } else if (!o.cover.empty()) {
    Tree t = io::make_tree(o.tree);
    json j = io::read_json_file(o.cover);
    auto copies = copies_from(j, o.cover);
    std::uint32_t host = j.value("host", 0u);
    if (!host) throw SchemaError(o.cover + ": missing 'host'");
    v = check_odc(host, t, copies);
    report["check"] = "double_cover";
  } else if (!o.labels.empty()) {
    Tree t = io::make_tree(o.tree);
    json j = io::read_json_file(o.labels);
    if (!j.contains("labels")) throw SchemaError(o.labels + ": missing 'labels'");
    GroupSpec g = io::parse_group(o.group.empty() ? j.value("group", std::string()) : o.group);
    v = check_harmonious(t, g, j.at("labels").get<std::vector<std::uint32_t>>());
    report["check"] = "harmonious";
  } else {
    throw CLI::ValidationError("verify", "needs one of --embedding, --matching, --packing, --cover, --labels");
  }
  report["validation"] = io::verdict_to_json(v);
  emit(o, report);
  return v ? kOk : kFailed;
}

int cmd_stats(const Options& o) {
  EdgeColouring col = io::load_colouring(o.colouring);
  const unsigned chunks = std::max(1u, std::min(o.jobs, o.trials));
  std::vector<StatSummary> parts(chunks);
  parallel_for(chunks, o.jobs, [&](std::size_t c) {
    std::uint32_t lo = static_cast<std::uint32_t>(std::uint64_t(o.trials) * c / chunks);
    std::uint32_t hi = static_cast<std::uint32_t>(std::uint64_t(o.trials) * (c + 1) / chunks);
    const std::uint32_t n = hi - lo;
    if (o.lemma == "edge_density")
      parts[c] = stat_edge_density(col, o.p, o.size_a ? o.size_a : 100, o.size_b ? o.size_b : 100, n, o.seed,
                                   o.stat_eps < 0 ? 0.15 : o.stat_eps, lo);
    else if (o.lemma == "multiplicity")
      parts[c] = stat_colour_multiplicity(col, o.p, o.size_a ? o.size_a : col.n() / 10, n, o.seed,
                                          o.stat_eps < 0 ? 0.1 : o.stat_eps, lo);
    else if (o.lemma == "diversity")
      parts[c] = stat_colour_diversity(col, o.p, o.size_a ? o.size_a : 300, o.size_b, n, o.seed,
                                       o.stat_eps < 0 ? 0.1 : o.stat_eps, lo);
    else if (o.lemma == "neighbourhood")
      parts[c] = stat_colour_neighbourhood(col, o.p, o.q, n, o.seed, lo);
    else
      throw CLI::ValidationError("--lemma", "unknown lemma " + o.lemma);
  });
  std::vector<TrialReport> all;
  for (auto& s : parts) all.insert(all.end(), s.reports.begin(), s.reports.end());
  StatSummary s = summarise(parts[0].lemma, std::move(all));
  emit(o, io::summary_to_json(s));
  return kOk;
}

int cmd_bench(const Options& o) {
  EdgeColouring col = io::load_colouring(o.colouring);
  std::vector<std::string> specs = o.trees;
  if (specs.empty()) {
    const std::uint32_t size = o.tree_size ? o.tree_size : static_cast<std::uint32_t>((1 - o.epsilon) * col.n() / col.k());
    for (std::uint32_t i = 0; i < o.count; ++i) specs.push_back("random:" + std::to_string(size) + ":" + std::to_string(o.seed + i));
  }
  struct Row {
    bool ok = false, valid = false;
    std::string method, failure;
    std::size_t attempts = 0;
    std::uint32_t peak_v = 0, peak_c = 0, bound_v = 0, bound_c = 0;
    double seconds = 0;
  };
  std::vector<Row> rows(specs.size());
  PipelineConfig c = pipeline(o);
  c.validate();
  parallel_for(specs.size(), o.jobs, [&](std::size_t i) {
    auto t0 = std::chrono::steady_clock::now();
    Tree t = io::make_tree(specs[i]);
    EmbedOutcome out = embed_tree(col, t, c);
    Row& r = rows[i];
    r.ok = out.ok();
    r.method = out.method;
    r.failure = out.failure;
    r.attempts = out.attempts.size();
    if (r.ok) r.valid = bool(check_rainbow_embedding(col, t, *out.embedding));
    if (!out.attempts.empty()) {
      const auto& a = out.attempts.back();
      for (const auto& l : a.layers) {
        r.peak_v = std::max(r.peak_v, l.reserve_vertices);
        r.peak_c = std::max(r.peak_c, l.reserve_colours);
      }
      r.bound_v = a.reserve_vertex_bound;
      r.bound_c = a.reserve_colour_bound;
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  });
  json runs = json::array();
  std::size_t ok = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& r = rows[i];
    ok += r.ok && r.valid;
    runs.push_back({{"tree", specs[i]},         {"ok", r.ok},           {"valid", r.valid},
                    {"method", r.method},       {"attempts", r.attempts}, {"failure", r.failure},
                    {"reserve_vertices", r.peak_v}, {"reserve_colours", r.peak_c},
                    {"reserve_vertex_bound", r.bound_v}, {"reserve_colour_bound", r.bound_c},
                    {"seconds", r.seconds}});
  }
  emit(o, json{{"colouring", col.describe()},
               {"config", config_json(c)},
               {"successes", ok},
               {"runs_total", rows.size()},
               {"success_rate", rows.empty() ? 0.0 : double(ok) / rows.size()},
               {"runs", std::move(runs)}});
  return kOk;
}

int run(int argc, const char* const* argv, const std::vector<std::string>& args) {
  CLI::App app{"Rainbow tree embeddings, packings, labellings and double covers"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* s) {
    s->add_option("--seed", o.seed, "root seed");
    s->add_option("--out", o.out, "output JSON file (stdout if omitted)");
    s->add_option("--manifest", o.manifest, "write a run manifest here");
  };
  auto embed_opts = [&](CLI::App* s) {
    s->add_option("--epsilon", o.epsilon)->check(CLI::Range(0.0, 1.0));
    s->add_option("--mu", o.mu)->check(CLI::Range(0.0, 1.0));
    s->add_option("--p0", o.p0, "0 picks the default");
    s->add_option("--retries", o.retries)->check(CLI::PositiveNumber);
    s->add_option("--D", o.D, "star threshold, 0 picks the default");
    s->add_option("--budget", o.budget, "search nodes for the small-host fallback");
  };

  auto gen = app.add_subcommand("gen", "emit a colouring, tree or tree decomposition");
  gen->add_option("--colouring", o.colouring, "nd:M, zsum:N, z2k:K, zprod:AxB, rr:N, random:N:K:SEED or file");
  gen->add_option("--tree", o.tree, "tree spec or file");
  gen->add_flag("--explicit", o.force_explicit, "write the full edge table");
  gen->add_flag("--decompose", o.decompose, "write the layered decomposition of --tree");
  gen->add_option("--n-target", o.size_a, "host size for --decompose");
  gen->add_option("--mu", o.mu);
  gen->add_option("--D", o.D);
  common(gen);

  auto embed = app.add_subcommand("embed", "rainbow-embed a tree");
  embed->add_option("--colouring", o.colouring)->required();
  embed->add_option("--tree", o.tree)->required();
  embed->add_option("--dot", o.dot, "Graphviz export");
  embed_opts(embed);
  common(embed);

  auto pack = app.add_subcommand("pack", "pack translates of a tree into K_{2l+1}");
  pack->add_option("--tree", o.tree)->required();
  pack->add_flag("--exact", o.exact, "host K_{2t-1}");
  pack->add_option("--dot", o.dot);
  embed_opts(pack);
  common(pack);

  auto label = app.add_subcommand("label", "harmonious labelling");
  label->add_option("--tree", o.tree)->required();
  label->add_option("--group", o.group, "Z8, z2k:3, 2x4 (default Z_|T|)");
  label->add_option("--smallest", o.smallest, "search Z_m for m = |T| .. this cap")->excludes("--group");
  embed_opts(label);
  common(label);

  auto odc = app.add_subcommand("odc", "double cover of K_{2^k} by tree copies");
  odc->add_option("--tree", o.tree)->required();
  odc->add_option("--k", o.k)->check(CLI::Range(1, 20));
  odc->add_option("--dot", o.dot);
  embed_opts(odc);
  common(odc);

  auto verify = app.add_subcommand("verify", "check an embedding, matching, packing, cover or labelling");
  verify->add_option("--colouring", o.colouring);
  verify->add_option("--tree", o.tree);
  verify->add_option("--embedding", o.embedding);
  verify->add_option("--matching", o.matching);
  verify->add_option("--packing", o.packing);
  verify->add_option("--cover", o.cover);
  verify->add_option("--labels", o.labels);
  verify->add_option("--group", o.group);
  verify->add_flag("--exact", o.exact);
  common(verify);

  auto stats = app.add_subcommand("stats", "Monte Carlo checks of the random-subgraph estimates");
  stats->add_option("--lemma", o.lemma)->check(CLI::IsMember({"edge_density", "multiplicity", "diversity", "neighbourhood"}));
  stats->add_option("--colouring", o.colouring)->required();
  stats->add_option("--p", o.p)->check(CLI::Range(0.0, 1.0));
  stats->add_option("--q", o.q)->check(CLI::Range(0.0, 1.0));
  stats->add_option("--size-a", o.size_a);
  stats->add_option("--size-b", o.size_b);
  stats->add_option("--trials", o.trials)->check(CLI::PositiveNumber);
  stats->add_option("--epsilon", o.stat_eps);
  stats->add_option("--jobs", o.jobs)->check(CLI::PositiveNumber);
  common(stats);

  auto bench = app.add_subcommand("bench", "embed a batch of trees");
  bench->add_option("--colouring", o.colouring)->required();
  bench->add_option("--trees", o.trees, "tree specs or files");
  bench->add_option("--count", o.count, "random trees when --trees is absent");
  bench->add_option("--tree-size", o.tree_size, "0: (1-epsilon)n/k");
  bench->add_option("--jobs", o.jobs)->check(CLI::PositiveNumber);
  embed_opts(bench);
  common(bench);

  app.footer("rainbow_cli --replay MANIFEST reruns the command recorded in a manifest.");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  const auto t0 = std::chrono::steady_clock::now();
  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  int code = kUsage;
  try {
    if (name == "gen") code = cmd_gen(o);
    else if (name == "embed") code = cmd_embed(o);
    else if (name == "pack") code = cmd_pack(o);
    else if (name == "label") code = cmd_label(o);
    else if (name == "odc") code = cmd_odc(o);
    else if (name == "verify") code = cmd_verify(o);
    else if (name == "stats") code = cmd_stats(o);
    else if (name == "bench") code = cmd_bench(o);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n\n" << sub->help();
    return kUsage;
  } catch (const EmbeddingFailedError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailed;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }

  if (!o.manifest.empty()) {
    io::RunManifest m;
    m.subcommand = name;
    m.seed = o.seed;
    m.version = io::version();
    m.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    m.config = {{"argv", args},
                {"options",
                 {{"colouring", o.colouring}, {"tree", o.tree},         {"epsilon", o.epsilon},
                  {"mu", o.mu},               {"p0", o.p0},             {"retries", o.retries},
                  {"D", o.D},                 {"budget", o.budget},     {"exact", o.exact},
                  {"group", o.group},         {"k", o.k},               {"lemma", o.lemma},
                  {"p", o.p},                 {"q", o.q},               {"size_a", o.size_a},
                  {"size_b", o.size_b},       {"trials", o.trials},     {"jobs", o.jobs},
                  {"trees", o.trees},         {"count", o.count},       {"tree_size", o.tree_size}}}};
    add_input(m.inputs, "colouring", o.colouring);
    add_input(m.inputs, "tree", o.tree);
    add_input(m.inputs, "embedding", o.embedding);
    add_input(m.inputs, "matching", o.matching);
    io::write_json_file(o.manifest, m.to_json());
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  // --replay FILE: re-run the argv stored in a manifest.
  if (args.size() == 2 && args[0] == "--replay") {
    try {
      json m = io::read_json_file(args[1]);
      args = m.at("config").at("argv").get<std::vector<std::string>>();
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kUsage;
    }
  }
  std::vector<const char*> cargv{argv[0]};
  for (auto& a : args) cargv.push_back(a.c_str());
  return run(static_cast<int>(cargv.size()), cargv.data(), args);
}
