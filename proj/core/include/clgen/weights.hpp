#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "clgen/types.hpp"

namespace clgen {

// Expected-degree weights sorted non-increasing, their sum S, and the
// permutation back to the input order.
struct WeightSequence {
  std::vector<double> weights;      // non-increasing
  double sum_S = 0.0;               // blocked_sum(weights)
  std::vector<node_t> orig_labels;  // sorted position -> original input label

  node_t size() const { return static_cast<node_t>(weights.size()); }
};

struct ValidationReport {
  bool is_sorted = false;
  bool admissible = false;  // max w^2 < S; false when S == 0
  node_t n = 0;
  double sum_S = 0.0;
  double max_weight = 0.0;
  node_t zero_weight_count = 0;
};

enum class SortPolicy { require_sorted, sort_desc };

// Fixed-geometry blocked sum: left-to-right partials over 4096-element blocks,
// block totals combined left-to-right. Independent of the worker count, so
// every consumer of S sees the same bits regardless of P.
double blocked_sum(std::span<const double> xs);

// Builds a sequence from raw weights. sort_desc applies a stable descending
// sort and records the permutation; require_sorted throws on an unsorted input.
WeightSequence make_weight_sequence(std::vector<double> weights, SortPolicy policy);

// One non-negative decimal weight per line; '#' starts a comment line.
WeightSequence load_weights(const std::string& path, SortPolicy policy);

// n i.i.d. draws from the truncated power law with density ~ x^-gamma on
// [w_min, w_max] (inverse-CDF sampling), sorted non-increasing.
WeightSequence synth_powerlaw(node_t n, double gamma, double w_min, double w_max,
                              std::uint64_t seed);

WeightSequence synth_constant(node_t n, double d);

ValidationReport validate(const WeightSequence& ws);

// (S^2 - sum w^2) / (2S); 0 when S == 0.
double expected_total_edges(const WeightSequence& ws);

void write_weights(const WeightSequence& ws, const std::string& path);

}  // namespace clgen
