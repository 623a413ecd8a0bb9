#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "rainbow/coloured_graph.hpp"

namespace rainbow {

struct TrialReport {
  std::string lemma;
  std::uint32_t n = 0;
  double p = 0, q = 0;
  std::uint32_t k = 0;
  std::vector<std::uint32_t> sizes;
  double measured = 0, target = 0, tolerance = 0;
  bool one_sided = false;  // measured may exceed target freely
  bool pass = false;
  double deviation = 0;  // normalised shortfall or spread, 0 is perfect
  std::uint64_t seed = 0;
  std::uint32_t trial = 0;
};

struct StatSummary {
  std::string lemma;
  std::size_t trials = 0;
  double pass_rate = 0;
  std::array<double, 5> quantiles{};  // min, 5%, median, 95%, max of deviation
  std::vector<TrialReport> reports;
};

// Trials run with streams first_trial .. first_trial+trials-1, so disjoint
// ranges can be computed separately and merged with summarise.
StatSummary summarise(std::string lemma, std::vector<TrialReport> reports);

// e_G(A,B) against p|A||B| for G the union of a random p-fraction of colour
// classes.  Sizes below n^(2/3) throw ParameterError.
StatSummary stat_edge_density(const EdgeColouring& col, double p, std::uint32_t size_a, std::uint32_t size_b,
                              std::uint32_t trials, std::uint64_t seed, double epsilon = 0.15,
                              std::uint32_t first_trial = 0);

// Fraction of colours (relative to n) with more than (1+eps)pk|A| edges
// between A and a random X.
StatSummary stat_colour_multiplicity(const EdgeColouring& col, double p, std::uint32_t size_a, std::uint32_t trials,
                                     std::uint64_t seed, double epsilon = 0.1, std::uint32_t first_trial = 0);

// Distinct C-colours between A outside X and B inside X, against
// (1-eps)|B|/k.  size_b = 0 takes B = X.  |A| below n^(3/4) or |B| below
// eps*p*n throws ParameterError.
StatSummary stat_colour_diversity(const EdgeColouring& col, double p, std::uint32_t size_a, std::uint32_t size_b,
                                  std::uint32_t trials, std::uint64_t seed, double epsilon = 0.1,
                                  std::uint32_t first_trial = 0);

// Minimum over vertices of the colour-C degree into X, against pqn/2.
StatSummary stat_colour_neighbourhood(const EdgeColouring& col, double p, double q, std::uint32_t trials,
                                      std::uint64_t seed, std::uint32_t first_trial = 0);

}  // namespace rainbow
