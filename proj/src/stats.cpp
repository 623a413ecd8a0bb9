#include "rainbow/stats.hpp"

#include <algorithm>
#include <cmath>

#include "rainbow/rng.hpp"

namespace rainbow {

namespace {

IndexSet random_subset(std::uint32_t universe, double p, Rng& rng) {
  IndexSet s(universe);
  for (std::uint32_t i = 0; i < universe; ++i)
    if (rng.bernoulli(p)) s.insert(i);
  return s;
}

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError(std::string(name) + " must lie in [0,1]");
}

TrialReport base_report(const char* lemma, const EdgeColouring& col, double p, std::uint64_t seed, std::uint32_t t) {
  TrialReport r;
  r.lemma = lemma;
  r.n = col.n();
  r.k = col.k();
  r.p = p;
  r.seed = seed;
  r.trial = t;
  return r;
}

// One-sided lower bound: pass when measured >= target - tolerance.
void finish_lower(TrialReport& r) {
  r.one_sided = true;
  r.pass = r.measured >= r.target - r.tolerance;
  r.deviation = r.target > 0 ? std::max(0.0, (r.target - r.measured) / r.target) : 0.0;
}

}  // namespace

StatSummary summarise(std::string lemma, std::vector<TrialReport> reports) {
  StatSummary s;
  s.lemma = std::move(lemma);
  s.trials = reports.size();
  if (!reports.empty()) {
    std::size_t passes = 0;
    std::vector<double> dev;
    for (const auto& r : reports) {
      passes += r.pass;
      dev.push_back(r.deviation);
    }
    std::sort(dev.begin(), dev.end());
    s.pass_rate = static_cast<double>(passes) / static_cast<double>(reports.size());
    const double qs[5] = {0.0, 0.05, 0.5, 0.95, 1.0};
    for (int i = 0; i < 5; ++i)
      s.quantiles[i] = dev[static_cast<std::size_t>(std::lround(qs[i] * static_cast<double>(dev.size() - 1)))];
  }
  s.reports = std::move(reports);
  return s;
}

StatSummary stat_edge_density(const EdgeColouring& col, double p, std::uint32_t size_a, std::uint32_t size_b,
                              std::uint32_t trials, std::uint64_t seed, double epsilon,
                              std::uint32_t first_trial) {
  check_probability(p, "p");
  const std::uint64_t n = col.n();
  auto below = [&](std::uint64_t s) { return s * s * s < n * n; };
  if (below(size_a) || below(size_b))
    throw ParameterError("edge density needs |A|,|B| >= n^(2/3)");
  if (size_a + size_b > n) throw ParameterError("|A|+|B| exceeds n");
  std::vector<TrialReport> out;
  for (std::uint32_t t = first_trial; t < first_trial + trials; ++t) {
    Rng rng(seed, "stat_edge_density", t);
    ColourSet C = random_subset(col.num_colours(), p, rng);
    auto pick = rng.sample(col.n(), size_a + size_b);
    rng.shuffle(pick);
    std::uint64_t e = 0;
    for (std::uint32_t i = 0; i < size_a; ++i)
      for (std::uint32_t j = size_a; j < size_a + size_b; ++j) e += C.contains(col.colour(pick[i], pick[j]));
    TrialReport r = base_report("edge_density", col, p, seed, t);
    r.sizes = {size_a, size_b};
    r.measured = static_cast<double>(e);
    r.target = p * size_a * size_b;
    r.tolerance = epsilon * r.target;
    r.pass = std::abs(r.measured - r.target) <= r.tolerance;
    r.deviation = r.target > 0 ? std::abs(r.measured - r.target) / r.target : std::abs(r.measured);
    out.push_back(std::move(r));
  }
  return summarise("edge_density", std::move(out));
}

StatSummary stat_colour_multiplicity(const EdgeColouring& col, double p, std::uint32_t size_a, std::uint32_t trials,
                                     std::uint64_t seed, double epsilon, std::uint32_t first_trial) {
  check_probability(p, "p");
  std::vector<TrialReport> out;
  std::vector<std::uint32_t> mult(col.num_colours());
  for (std::uint32_t t = first_trial; t < first_trial + trials; ++t) {
    Rng rng(seed, "stat_colour_multiplicity", t);
    VertexSet X = random_subset(col.n(), p, rng);
    std::vector<VertexId> rest;
    for (VertexId v = 0; v < col.n(); ++v)
      if (!X.contains(v)) rest.push_back(v);
    if (rest.size() < size_a) throw ParameterError("|A| exceeds the complement of X");
    rng.shuffle(rest);
    std::fill(mult.begin(), mult.end(), 0);
    for (std::uint32_t i = 0; i < size_a; ++i) X.for_each([&](VertexId x) { ++mult[col.colour(rest[i], x)]; });
    const double threshold = (1 + epsilon) * p * col.k() * size_a;
    std::uint32_t exceptional = 0;
    for (auto m : mult) exceptional += m > threshold;
    TrialReport r = base_report("multiplicity", col, p, seed, t);
    r.sizes = {size_a};
    r.measured = static_cast<double>(exceptional) / col.n();
    r.target = 0;
    r.tolerance = epsilon;
    r.one_sided = true;
    r.pass = r.measured <= epsilon;
    r.deviation = r.measured / epsilon;
    out.push_back(std::move(r));
  }
  return summarise("multiplicity", std::move(out));
}

StatSummary stat_colour_diversity(const EdgeColouring& col, double p, std::uint32_t size_a, std::uint32_t size_b,
                                  std::uint32_t trials, std::uint64_t seed, double epsilon,
                              std::uint32_t first_trial) {
  check_probability(p, "p");
  const std::uint64_t n = col.n();
  if (static_cast<std::uint64_t>(size_a) * size_a * size_a * size_a < n * n * n)
    throw ParameterError("diversity needs |A| >= n^(3/4)");
  std::vector<TrialReport> out;
  std::vector<std::uint8_t> hit(col.num_colours());
  for (std::uint32_t t = first_trial; t < first_trial + trials; ++t) {
    Rng rng(seed, "stat_colour_diversity", t);
    VertexSet X = random_subset(col.n(), p, rng);
    ColourSet C = random_subset(col.num_colours(), p, rng);
    std::vector<VertexId> outside, inside = X.members();
    for (VertexId v = 0; v < col.n(); ++v)
      if (!X.contains(v)) outside.push_back(v);
    if (outside.size() < size_a) throw ParameterError("|A| exceeds the complement of X");
    rng.shuffle(outside);
    outside.resize(size_a);
    if (size_b) {
      if (inside.size() < size_b) throw ParameterError("|B| exceeds |X|");
      rng.shuffle(inside);
      inside.resize(size_b);
    }
    if (static_cast<double>(inside.size()) < epsilon * p * static_cast<double>(n))
      throw ParameterError("diversity needs |B| >= eps*p*n");
    std::fill(hit.begin(), hit.end(), 0);
    std::uint32_t distinct = 0;
    for (VertexId a : outside)
      for (VertexId b : inside) {
        ColourId c = col.colour(a, b);
        if (!hit[c] && C.contains(c)) {
          hit[c] = 1;
          ++distinct;
        }
      }
    TrialReport r = base_report("diversity", col, p, seed, t);
    r.q = p;
    r.sizes = {size_a, static_cast<std::uint32_t>(inside.size())};
    r.measured = distinct;
    r.target = (1 - epsilon) * static_cast<double>(inside.size()) / col.k();
    finish_lower(r);
    out.push_back(std::move(r));
  }
  return summarise("diversity", std::move(out));
}

StatSummary stat_colour_neighbourhood(const EdgeColouring& col, double p, double q, std::uint32_t trials,
                                      std::uint64_t seed, std::uint32_t first_trial) {
  check_probability(p, "p");
  check_probability(q, "q");
  std::vector<TrialReport> out;
  std::vector<std::uint32_t> scratch;
  for (std::uint32_t t = first_trial; t < first_trial + trials; ++t) {
    Rng rng(seed, "stat_colour_neighbourhood", t);
    VertexSet X = random_subset(col.n(), p, rng);
    ColourSet C = random_subset(col.num_colours(), q, rng);
    auto xmask = X.byte_mask();
    auto cmask = C.byte_mask();
    std::uint32_t low = kNone;
    for (VertexId v = 0; v < col.n(); ++v) low = std::min(low, col.count_neighbours(v, cmask, xmask, scratch));
    TrialReport r = base_report("neighbourhood", col, p, seed, t);
    r.q = q;
    r.measured = low;
    r.target = p * q * col.n() / 2;
    finish_lower(r);
    out.push_back(std::move(r));
  }
  return summarise("neighbourhood", std::move(out));
}

}  // namespace rainbow
