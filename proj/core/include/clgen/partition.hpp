#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "clgen/comm.hpp"
#include "clgen/cost.hpp"
#include "clgen/types.hpp"
#include "clgen/weights.hpp"

namespace clgen {

enum class Scheme { naive, ucp, rrp };

const char* scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

struct PartitionPlan {
  Scheme scheme = Scheme::naive;
  int procs = 1;
  node_t n = 0;
  std::vector<node_t> boundaries;  // n_0..n_P for consecutive schemes; empty for rrp
  int rrp_modulus = 0;             // == procs for rrp
  std::vector<double> per_partition_cost;

  node_t partition_size(int i) const;
  // Ascending source nodes owned by partition i (strided for rrp).
  std::vector<node_t> partition_nodes(int i) const;
};

struct BoundarySet {
  int owner_rank = 0;
  std::vector<std::pair<int, node_t>> entries;  // (k, n_k), k values distinct
};

PartitionPlan plan_naive(node_t n, int P);
PartitionPlan plan_rrp(node_t n, int P);

// Divide & conquer over adjacent pairs (s,s+1)..(e-1,e): records (k, n_k) for
// every partition index k crossed between C(u) and C(u+1), so one node
// absorbing several multiples of Z_bar yields all the skipped (empty)
// partitions. cum must be valid on [s, e]; found boundaries lie in (s, e].
// Returns immediately when the range ends map to the same partition.
BoundarySet find_boundaries(node_t s, node_t e, const std::function<double(node_t)>& cum,
                            double z_bar, int P);

// Full SPMD pipeline: blocked weight prefix, blocked cumulative costs, two
// exclusive scans, one all-reduce, per-rank boundary search, pairwise boundary
// exchange. Every rank returns the assembled plan.
PartitionPlan plan_ucp(const WeightSequence& ws, Communicator& comm);

// Sequential replica of the same P-blocked arithmetic with a single
// left-to-right boundary scan; bit-identical to plan_ucp by construction.
PartitionPlan plan_ucp_oracle(const WeightSequence& ws, int P);

// Expected cost per partition from the sequential cost vector.
void fill_partition_costs(PartitionPlan& plan, const WeightSequence& ws);

// Plan file: line 1 "<scheme> <P> <n>", then P+1 boundary lines for
// consecutive schemes; rrp needs no further lines.
void write_plan(const PartitionPlan& plan, const std::string& path);
PartitionPlan read_plan(const std::string& path);

}  // namespace clgen
