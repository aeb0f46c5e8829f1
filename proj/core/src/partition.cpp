#include "clgen/partition.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace clgen {

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::naive: return "naive";
    case Scheme::ucp: return "ucp";
    case Scheme::rrp: return "rrp";
  }
  return "?";
}

Scheme scheme_from_name(const std::string& name) {
  if (name == "naive") return Scheme::naive;
  if (name == "ucp") return Scheme::ucp;
  if (name == "rrp") return Scheme::rrp;
  throw error("unknown scheme: " + name);
}

node_t PartitionPlan::partition_size(int i) const {
  if (i < 0 || i >= procs) throw error("partition_size: bad partition index");
  if (scheme == Scheme::rrp) {
    return n > i ? (n - 1 - i) / procs + 1 : 0;
  }
  return boundaries[static_cast<std::size_t>(i) + 1] - boundaries[static_cast<std::size_t>(i)];
}

std::vector<node_t> PartitionPlan::partition_nodes(int i) const {
  std::vector<node_t> nodes;
  nodes.reserve(static_cast<std::size_t>(partition_size(i)));
  if (scheme == Scheme::rrp) {
    for (node_t u = i; u < n; u += procs) nodes.push_back(u);
  } else {
    for (node_t u = boundaries[static_cast<std::size_t>(i)];
         u < boundaries[static_cast<std::size_t>(i) + 1]; ++u) {
      nodes.push_back(u);
    }
  }
  return nodes;
}

PartitionPlan plan_naive(node_t n, int P) {
  if (P < 1) throw error("plan_naive: P must be >= 1");
  PartitionPlan plan;
  plan.scheme = Scheme::naive;
  plan.procs = P;
  plan.n = n;
  plan.boundaries.reserve(static_cast<std::size_t>(P) + 1);
  plan.boundaries.push_back(0);
  for (int i = 0; i < P; ++i) plan.boundaries.push_back(block_bounds(n, P, i).second);
  return plan;
}

PartitionPlan plan_rrp(node_t n, int P) {
  if (P < 1) throw error("plan_rrp: P must be >= 1");
  PartitionPlan plan;
  plan.scheme = Scheme::rrp;
  plan.procs = P;
  plan.n = n;
  plan.rrp_modulus = P;
  return plan;
}

namespace {

void find_rec(node_t s, node_t e, const std::function<double(node_t)>& cum, double z_bar, int P,
              std::vector<std::pair<int, node_t>>& out) {
  if (s >= e) return;
  if (partition_of(cum(s), z_bar, P) == partition_of(cum(e), z_bar, P)) return;
  const node_t m = (s + e) >> 1;  // floor midpoint; s may be -1
  const int left = partition_of(cum(m), z_bar, P);
  const int right = partition_of(cum(m + 1), z_bar, P);
  for (int k = left + 1; k <= right; ++k) out.emplace_back(k, m + 1);
  find_rec(s, m, cum, z_bar, P, out);
  find_rec(m + 1, e, cum, z_bar, P, out);
}

double fold_prefix(const std::vector<double>& xs, int count) {
  double acc = 0.0;
  for (int j = 0; j < count; ++j) acc += xs[static_cast<std::size_t>(j)];
  return acc;
}

PartitionPlan trivial_plan(int P) {
  PartitionPlan plan;
  plan.scheme = Scheme::ucp;
  plan.procs = P;
  plan.n = 0;
  plan.boundaries.assign(static_cast<std::size_t>(P) + 1, 0);
  return plan;
}

}  // namespace

BoundarySet find_boundaries(node_t s, node_t e, const std::function<double(node_t)>& cum,
                            double z_bar, int P) {
  BoundarySet found;
  find_rec(s, e, cum, z_bar, P, found.entries);
  return found;
}

PartitionPlan plan_ucp(const WeightSequence& ws, Communicator& comm) {
  const int P = comm.size();
  const int rank = comm.rank();
  const node_t n = ws.size();
  if (n == 0) return trivial_plan(P);

  const auto [lo, hi] = block_bounds(n, P, rank);

  double block_weight = 0.0;
  for (node_t u = lo; u < hi; ++u) block_weight += ws.weights[static_cast<std::size_t>(u)];
  const double sigma_start = comm.exclusive_scan_sum(block_weight);

  CostProfile prof = block_cumulative(ws, rank, P, sigma_start);
  const double z_prefix = comm.exclusive_scan_sum(prof.block_cost);
  finalize_offsets(prof, z_prefix);

  const double total = comm.all_reduce_sum(prof.block_cost);
  const double z_bar = total / P;

  // Pairs (lo-1,lo)..(hi-2,hi-1); C_{lo-1} is exactly Z_i (0 on rank 0), so a
  // boundary sitting on the block's first node is caught here and not lost.
  const auto cum = [&](node_t u) -> double {
    return u < lo ? prof.global_offset : prof.cum_costs[static_cast<std::size_t>(u - lo)];
  };
  BoundarySet found = find_boundaries(lo - 1, hi - 1, cum, z_bar, P);
  found.owner_rank = rank;

  for (const auto& [k, n_k] : found.entries) {
    comm.send_boundary(k, n_k, k - 1);
    comm.send_boundary(k, n_k, k);
  }

  const int expected = P == 1 ? 0 : (rank == 0 || rank == P - 1) ? 1 : 2;
  node_t my_lo = 0;
  for (const BoundaryMsg& msg : comm.recv_boundaries(expected)) {
    if (msg.k == rank) {
      my_lo = msg.n_k;
    } else if (msg.k != rank + 1) {
      throw error("plan_ucp: boundary message for partition " + std::to_string(msg.k) +
                  " delivered to rank " + std::to_string(rank));
    }
  }

  PartitionPlan plan;
  plan.scheme = Scheme::ucp;
  plan.procs = P;
  plan.n = n;
  plan.boundaries = comm.all_gather_i64(rank == 0 ? 0 : my_lo);
  plan.boundaries.push_back(n);
  return plan;
}

PartitionPlan plan_ucp_oracle(const WeightSequence& ws, int P) {
  if (P < 1) throw error("plan_ucp_oracle: P must be >= 1");
  const node_t n = ws.size();
  if (n == 0) return trivial_plan(P);

  std::vector<double> block_weights(static_cast<std::size_t>(P), 0.0);
  for (int i = 0; i < P; ++i) {
    const auto [lo, hi] = block_bounds(n, P, i);
    double acc = 0.0;
    for (node_t u = lo; u < hi; ++u) acc += ws.weights[static_cast<std::size_t>(u)];
    block_weights[static_cast<std::size_t>(i)] = acc;
  }

  std::vector<CostProfile> profs;
  profs.reserve(static_cast<std::size_t>(P));
  std::vector<double> block_costs(static_cast<std::size_t>(P), 0.0);
  for (int i = 0; i < P; ++i) {
    profs.push_back(block_cumulative(ws, i, P, fold_prefix(block_weights, i)));
    block_costs[static_cast<std::size_t>(i)] = profs.back().block_cost;
  }
  for (int i = 0; i < P; ++i) finalize_offsets(profs[static_cast<std::size_t>(i)], fold_prefix(block_costs, i));

  const double total = fold_prefix(block_costs, P);
  const double z_bar = total / P;

  PartitionPlan plan;
  plan.scheme = Scheme::ucp;
  plan.procs = P;
  plan.n = n;
  plan.boundaries.assign(static_cast<std::size_t>(P) + 1, n);
  plan.boundaries[0] = 0;

  int prev = 0;  // C_{-1} = 0 maps to partition 0
  for (const CostProfile& prof : profs) {
    for (std::size_t idx = 0; idx < prof.cum_costs.size(); ++idx) {
      const int cur = partition_of(prof.cum_costs[idx], z_bar, P);
      for (int k = prev + 1; k <= cur; ++k) {
        plan.boundaries[static_cast<std::size_t>(k)] = prof.block_lo + static_cast<node_t>(idx);
      }
      prev = cur;
    }
  }
  plan.boundaries[static_cast<std::size_t>(P)] = n;
  return plan;
}

void fill_partition_costs(PartitionPlan& plan, const WeightSequence& ws) {
  const std::vector<double> costs = node_costs_sequential(ws);
  plan.per_partition_cost.assign(static_cast<std::size_t>(plan.procs), 0.0);
  if (plan.scheme == Scheme::rrp) {
    for (std::size_t u = 0; u < costs.size(); ++u) {
      plan.per_partition_cost[u % static_cast<std::size_t>(plan.procs)] += costs[u];
    }
  } else {
    for (int i = 0; i < plan.procs; ++i) {
      double acc = 0.0;
      for (node_t u = plan.boundaries[static_cast<std::size_t>(i)];
           u < plan.boundaries[static_cast<std::size_t>(i) + 1]; ++u) {
        acc += costs[static_cast<std::size_t>(u)];
      }
      plan.per_partition_cost[static_cast<std::size_t>(i)] = acc;
    }
  }
}

void write_plan(const PartitionPlan& plan, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw error("cannot open for writing: " + path);
  out << scheme_name(plan.scheme) << ' ' << plan.procs << ' ' << plan.n << '\n';
  if (plan.scheme != Scheme::rrp) {
    for (node_t b : plan.boundaries) out << b << '\n';
  }
  if (!out) throw error("write failed: " + path);
}

PartitionPlan read_plan(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open plan file: " + path);
  std::string scheme;
  int procs = 0;
  node_t n = 0;
  if (!(in >> scheme >> procs >> n)) throw error(path + ": malformed plan header");
  if (procs < 1) throw error(path + ": bad processor count");

  PartitionPlan plan;
  plan.scheme = scheme_from_name(scheme);
  plan.procs = procs;
  plan.n = n;
  if (plan.scheme == Scheme::rrp) {
    plan.rrp_modulus = procs;
    return plan;
  }
  plan.boundaries.reserve(static_cast<std::size_t>(procs) + 1);
  for (int i = 0; i <= procs; ++i) {
    node_t b = 0;
    if (!(in >> b)) throw error(path + ": expected " + std::to_string(procs + 1) + " boundaries");
    plan.boundaries.push_back(b);
  }
  if (plan.boundaries.front() != 0 || plan.boundaries.back() != n ||
      !std::is_sorted(plan.boundaries.begin(), plan.boundaries.end())) {
    throw error(path + ": invalid boundary sequence");
  }
  return plan;
}

}  // namespace clgen
