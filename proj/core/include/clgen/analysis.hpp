#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "clgen/edge_skip.hpp"
#include "clgen/runtime.hpp"
#include "clgen/types.hpp"
#include "clgen/weights.hpp"

namespace clgen {

struct DegreeHistogram {
  node_t n = 0;
  std::int64_t total_edges = 0;
  std::vector<std::int64_t> counts;        // index = degree
  std::map<int, std::int64_t> log_bins;    // k -> #nodes with degree in [2^k, 2^(k+1))
  std::int64_t zero_degree = 0;
};

DegreeHistogram degree_histogram(std::span<const Edge> edges, node_t n);

struct FidelityBin {
  int k = 0;
  double lo = 0.0;
  double hi = 0.0;
  double expected_count = 0.0;       // nodes whose expected degree w - w^2/S lands here
  std::int64_t generated_count = 0;  // nodes whose realized degree lands here
  double rel_error = 0.0;
  bool flagged = false;              // expected_count >= flag mass
};

struct FidelityReport {
  double mean_expected = 0.0;  // mean of w_i - w_i^2/S
  double mean_generated = 0.0;
  double mean_rel_error = 0.0;
  std::vector<FidelityBin> bins;
  double max_flagged_rel_error = 0.0;
  double flag_mass = 100.0;
};

FidelityReport compare_distributions(const WeightSequence& ws, const DegreeHistogram& hist,
                                     double flag_mass = 100.0);

// Per-partition load view of one generation run; every ratio is max/mean >= 1.
struct LoadReport {
  std::vector<double> expected_cost;
  std::vector<std::int64_t> realized_edges;
  std::vector<double> wall_ms;
  double cost_imbalance = 1.0;
  double edge_imbalance = 1.0;
  double time_imbalance = 1.0;
};

LoadReport load_report(const GenReport& report);

struct LemmaReport {
  bool lemma1_monotone_cost = false;
  bool lemma2_checked = false;  // only when the naive blocks divide evenly
  bool lemma2_gap_bound = true;
  double lemma2_min_slack = 0.0;  // min over pairs of gap - bound
  bool lemma3_rrp_bounds = false;
  bool all_pass() const {
    return lemma1_monotone_cost && (!lemma2_checked || lemma2_gap_bound) && lemma3_rrp_bounds;
  }
};

// Evaluates the three partition-cost inequalities on the given instance:
// monotone c_u; the naive-CP gap lower bound n^2/(SP^2) * Wbar_i * Wbar_{i+1}
// (equal block sizes only); and the RRP gap window [0, w_i] for all i < j.
LemmaReport verify_lemmas(const WeightSequence& ws, int P);

struct BoundaryCensusRow {
  int procs = 0;
  int max_in_rank = 0;  // most boundaries found inside one rank's block
};

std::vector<BoundaryCensusRow> boundary_census(const WeightSequence& ws,
                                               std::span<const int> procs_list);

struct StrongScalingRow {
  int workers = 0;
  double seconds = 0.0;
  double speedup = 0.0;  // t(1) / t(P)
  std::int64_t edges = 0;
};

struct WeakScalingRow {
  int workers = 0;
  node_t n = 0;
  double seconds = 0.0;
  double ratio_vs_one = 0.0;  // t(P) / t(1)
  std::int64_t edges = 0;
};

// Worker counts double from 1 up to max_workers; problem size fixed.
std::vector<StrongScalingRow> strong_scaling(const WeightSequence& ws, int max_workers,
                                             Scheme scheme, std::uint64_t seed);

// Worker counts double from 1 up to max_workers; a fresh power-law sequence of
// nodes_per_worker * P nodes per row keeps the per-worker size constant.
std::vector<WeakScalingRow> weak_scaling(double gamma, double w_min, double w_max,
                                         node_t nodes_per_worker, int max_workers, Scheme scheme,
                                         std::uint64_t seed);

}  // namespace clgen
