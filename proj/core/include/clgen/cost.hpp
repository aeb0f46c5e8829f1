#pragma once

#include <utility>
#include <vector>

#include "clgen/types.hpp"
#include "clgen/weights.hpp"

namespace clgen {

// One rank's slice of the cumulative cost array (the Calc-Cost working state).
struct CostProfile {
  int rank = 0;
  node_t block_lo = 0;
  node_t block_hi = 0;
  double sigma_start = 0.0;       // weight prefix entering the block (S_i)
  std::vector<double> cum_costs;  // C_u for u in [block_lo, block_hi)
  double block_cost = 0.0;        // z_i: block-local total, captured at build
  double global_offset = 0.0;     // Z_i once finalized
};

struct GlobalCost {
  double total = 0.0;     // Z = n + expected edge count
  double per_rank = 0.0;  // Z / P
};

// c_u = e_u + 1 with e_u = (w_u/S)(S - sigma_u - w_u); e_u clamped at 0 to
// absorb rounding dust at the tail. Requires S > 0.
double node_cost(double w_u, double sigma_u, double S);

// Ceil-first block split: the first n%P ranks hold ceil(n/P) nodes.
std::pair<node_t, node_t> block_bounds(node_t n, int P, int rank);

// Left-to-right C_u within the block, sigma advanced from sigma_start.
// block_cost is the block's own total before any offset is applied.
CostProfile block_cumulative(const WeightSequence& ws, int rank, int P, double sigma_start);

// Adds the exclusive scan result Z_i to every entry. block_cost is untouched.
void finalize_offsets(CostProfile& profile, double z_prefix);

// floor(C_u / Z_bar) clamped to [0, P-1]; the node with C_u == Z lands in the
// last partition. Requires Z_bar > 0.
int partition_of(double cum_cost, double z_bar, int P);

// Per-node costs via the suffix form e_u = (w_u/S) * sum_{v>u} w_v, whose
// computed values stay non-increasing under rounding (both factors are
// non-negative and non-increasing). Used for reporting and lemma checks.
std::vector<double> node_costs_sequential(const WeightSequence& ws);

}  // namespace clgen
