#include "clgen/cost.hpp"

#include <algorithm>
#include <cmath>

namespace clgen {

double node_cost(double w_u, double sigma_u, double S) {
  if (!(S > 0.0)) throw error("node_cost: S must be > 0");
  double e = (w_u / S) * (S - sigma_u - w_u);
  if (e < 0.0) e = 0.0;
  return e + 1.0;
}

std::pair<node_t, node_t> block_bounds(node_t n, int P, int rank) {
  if (P < 1 || rank < 0 || rank >= P) throw error("block_bounds: bad rank/P");
  const node_t q = n / P;
  const node_t r = n % P;
  const node_t lo = rank * q + std::min<node_t>(rank, r);
  const node_t hi = lo + q + (rank < r ? 1 : 0);
  return {lo, hi};
}

CostProfile block_cumulative(const WeightSequence& ws, int rank, int P, double sigma_start) {
  const auto [lo, hi] = block_bounds(ws.size(), P, rank);
  CostProfile prof;
  prof.rank = rank;
  prof.block_lo = lo;
  prof.block_hi = hi;
  prof.sigma_start = sigma_start;
  prof.cum_costs.reserve(static_cast<std::size_t>(hi - lo));

  // S == 0 degenerates to unit costs (every e_u is 0)
  const bool zero_sum = !(ws.sum_S > 0.0);
  double sigma = sigma_start;
  double cum = 0.0;
  for (node_t u = lo; u < hi; ++u) {
    const double c =
        zero_sum ? 1.0 : node_cost(ws.weights[static_cast<std::size_t>(u)], sigma, ws.sum_S);
    cum = (u == lo) ? c : cum + c;
    prof.cum_costs.push_back(cum);
    sigma += ws.weights[static_cast<std::size_t>(u)];
  }
  prof.block_cost = prof.cum_costs.empty() ? 0.0 : prof.cum_costs.back();
  return prof;
}

void finalize_offsets(CostProfile& profile, double z_prefix) {
  for (double& c : profile.cum_costs) c += z_prefix;
  profile.global_offset = z_prefix;
}

int partition_of(double cum_cost, double z_bar, int P) {
  if (!(z_bar > 0.0)) throw error("partition_of: Z_bar must be > 0");
  const double k = std::floor(cum_cost / z_bar);
  if (k < 0.0) return 0;
  if (k >= static_cast<double>(P)) return P - 1;
  const int i = static_cast<int>(k);
  return i > P - 1 ? P - 1 : i;
}

std::vector<double> node_costs_sequential(const WeightSequence& ws) {
  const std::size_t n = ws.weights.size();
  std::vector<double> costs(n, 1.0);
  if (n == 0 || !(ws.sum_S > 0.0)) return costs;
  // suffix sums, accumulated backward; computed values are non-increasing in u
  double suffix = 0.0;
  std::vector<double> suffixes(n, 0.0);
  for (std::size_t u = n; u-- > 0;) {
    suffixes[u] = suffix;
    suffix += ws.weights[u];
  }
  for (std::size_t u = 0; u < n; ++u) {
    costs[u] = (ws.weights[u] / ws.sum_S) * suffixes[u] + 1.0;
  }
  return costs;
}

}  // namespace clgen
