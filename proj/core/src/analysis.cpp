#include "clgen/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "clgen/cost.hpp"
#include "clgen/partition.hpp"

namespace clgen {

namespace {

int log2_bin(double x) { return static_cast<int>(std::floor(std::log2(x))); }

}  // namespace

DegreeHistogram degree_histogram(std::span<const Edge> edges, node_t n) {
  std::vector<std::int64_t> degree(static_cast<std::size_t>(n), 0);
  for (const Edge& e : edges) {
    if (e.u < 0 || e.v >= n) throw error("degree_histogram: node index out of range");
    if (e.u >= e.v) throw error("degree_histogram: edge not in canonical u < v orientation");
    ++degree[static_cast<std::size_t>(e.u)];
    ++degree[static_cast<std::size_t>(e.v)];
  }

  DegreeHistogram hist;
  hist.n = n;
  hist.total_edges = static_cast<std::int64_t>(edges.size());
  const std::int64_t max_degree = degree.empty() ? 0 : *std::max_element(degree.begin(), degree.end());
  hist.counts.assign(static_cast<std::size_t>(max_degree) + 1, 0);
  for (std::int64_t d : degree) {
    ++hist.counts[static_cast<std::size_t>(d)];
    if (d == 0) {
      ++hist.zero_degree;
    } else {
      ++hist.log_bins[log2_bin(static_cast<double>(d))];
    }
  }
  return hist;
}

FidelityReport compare_distributions(const WeightSequence& ws, const DegreeHistogram& hist,
                                     double flag_mass) {
  if (ws.size() != hist.n) throw error("compare_distributions: size mismatch");
  FidelityReport rep;
  rep.flag_mass = flag_mass;
  const double S = ws.sum_S;
  const node_t n = ws.size();
  if (n == 0) return rep;

  std::map<int, double> expected_bins;
  double expected_sum = 0.0;
  for (double w : ws.weights) {
    double d = S > 0.0 ? w - w * w / S : 0.0;
    if (d < 0.0) d = 0.0;  // inadmissible heads clamp, like the generator
    expected_sum += d;
    if (d > 0.0) expected_bins[log2_bin(d)] += 1.0;
  }
  rep.mean_expected = expected_sum / static_cast<double>(n);
  rep.mean_generated = 2.0 * static_cast<double>(hist.total_edges) / static_cast<double>(n);
  rep.mean_rel_error = rep.mean_expected > 0.0
                           ? std::abs(rep.mean_generated - rep.mean_expected) / rep.mean_expected
                           : std::abs(rep.mean_generated);

  std::map<int, FidelityBin> bins;
  for (const auto& [k, count] : expected_bins) bins[k].expected_count = count;
  for (const auto& [k, count] : hist.log_bins) bins[k].generated_count = count;
  for (auto& [k, bin] : bins) {
    bin.k = k;
    bin.lo = std::exp2(k);
    bin.hi = std::exp2(k + 1);
    bin.flagged = bin.expected_count >= flag_mass;
    if (bin.expected_count > 0.0) {
      bin.rel_error =
          std::abs(static_cast<double>(bin.generated_count) - bin.expected_count) /
          bin.expected_count;
    } else {
      bin.rel_error = bin.generated_count == 0 ? 0.0 : 1.0;
    }
    if (bin.flagged) rep.max_flagged_rel_error = std::max(rep.max_flagged_rel_error, bin.rel_error);
    rep.bins.push_back(bin);
  }
  return rep;
}

namespace {

template <class T>
double max_over_mean(const std::vector<T>& xs) {
  if (xs.empty()) return 1.0;
  double max = 0.0;
  double sum = 0.0;
  for (T x : xs) {
    max = std::max(max, static_cast<double>(x));
    sum += static_cast<double>(x);
  }
  return sum > 0.0 ? max * static_cast<double>(xs.size()) / sum : 1.0;
}

}  // namespace

LoadReport load_report(const GenReport& report) {
  LoadReport load;
  for (const RankReport& r : report.ranks) {
    load.expected_cost.push_back(r.expected_cost);
    load.realized_edges.push_back(r.edges);
    load.wall_ms.push_back(r.gen_wall_ms);
  }
  load.cost_imbalance = max_over_mean(load.expected_cost);
  load.edge_imbalance = max_over_mean(load.realized_edges);
  load.time_imbalance = max_over_mean(load.wall_ms);
  return load;
}

LemmaReport verify_lemmas(const WeightSequence& ws, int P) {
  if (P < 1) throw error("verify_lemmas: P must be >= 1");
  const node_t n = ws.size();
  const std::vector<double> costs = node_costs_sequential(ws);

  LemmaReport rep;
  rep.lemma1_monotone_cost = true;
  for (std::size_t u = 1; u < costs.size(); ++u) {
    if (costs[u] > costs[u - 1]) rep.lemma1_monotone_cost = false;
  }

  // Lemma 2: naive consecutive partitioning with equal block sizes
  rep.lemma2_checked = n >= P && n % P == 0 && P >= 2;
  if (rep.lemma2_checked) {
    PartitionPlan naive = plan_naive(n, P);
    fill_partition_costs(naive, ws);
    const node_t x = n / P;
    double min_slack = std::numeric_limits<double>::infinity();
    for (int i = 0; i + 1 < P; ++i) {
      const double gap = naive.per_partition_cost[static_cast<std::size_t>(i)] -
                         naive.per_partition_cost[static_cast<std::size_t>(i) + 1];
      double wbar_i = 0.0;
      double wbar_j = 0.0;
      for (node_t u = 0; u < x; ++u) {
        wbar_i += ws.weights[static_cast<std::size_t>(i * x + u)];
        wbar_j += ws.weights[static_cast<std::size_t>((i + 1) * x + u)];
      }
      wbar_i /= static_cast<double>(x);
      wbar_j /= static_cast<double>(x);
      const double bound =
          ws.sum_S > 0.0 ? static_cast<double>(n) * static_cast<double>(n) /
                               (ws.sum_S * static_cast<double>(P) * static_cast<double>(P)) *
                               wbar_i * wbar_j
                         : 0.0;
      if (gap < bound) rep.lemma2_gap_bound = false;
      min_slack = std::min(min_slack, gap - bound);
    }
    rep.lemma2_min_slack = min_slack;
  }

  // Lemma 3: RRP gaps sit in [0, w_i] for every i < j
  PartitionPlan rrp = plan_rrp(n, P);
  fill_partition_costs(rrp, ws);
  rep.lemma3_rrp_bounds = true;
  for (int i = 0; i < P; ++i) {
    for (int j = i + 1; j < P; ++j) {
      const double gap = rrp.per_partition_cost[static_cast<std::size_t>(i)] -
                         rrp.per_partition_cost[static_cast<std::size_t>(j)];
      const double w_i = i < n ? ws.weights[static_cast<std::size_t>(i)] : 0.0;
      if (gap < 0.0 || gap > w_i) rep.lemma3_rrp_bounds = false;
    }
  }
  return rep;
}

std::vector<BoundaryCensusRow> boundary_census(const WeightSequence& ws,
                                               std::span<const int> procs_list) {
  std::vector<BoundaryCensusRow> rows;
  const node_t n = ws.size();
  for (int P : procs_list) {
    if (P < 1) throw error("boundary_census: P must be >= 1");
    // sequential replica of the blocked pipeline (bit-identical to plan_ucp)
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
      double spref = 0.0;
      for (int j = 0; j < i; ++j) spref += block_weights[static_cast<std::size_t>(j)];
      profs.push_back(block_cumulative(ws, i, P, spref));
      block_costs[static_cast<std::size_t>(i)] = profs.back().block_cost;
    }
    double total = 0.0;
    for (int i = 0; i < P; ++i) {
      double zpref = 0.0;
      for (int j = 0; j < i; ++j) zpref += block_costs[static_cast<std::size_t>(j)];
      finalize_offsets(profs[static_cast<std::size_t>(i)], zpref);
      total += block_costs[static_cast<std::size_t>(i)];
    }
    const double z_bar = total / P;

    BoundaryCensusRow row;
    row.procs = P;
    for (const CostProfile& prof : profs) {
      const auto cum = [&](node_t u) -> double {
        return u < prof.block_lo
                   ? prof.global_offset
                   : prof.cum_costs[static_cast<std::size_t>(u - prof.block_lo)];
      };
      const BoundarySet found =
          find_boundaries(prof.block_lo - 1, prof.block_hi - 1, cum, z_bar, P);
      row.max_in_rank = std::max(row.max_in_rank, static_cast<int>(found.entries.size()));
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<StrongScalingRow> strong_scaling(const WeightSequence& ws, int max_workers,
                                             Scheme scheme, std::uint64_t seed) {
  std::vector<StrongScalingRow> rows;
  double t1 = 0.0;
  for (int P = 1; P <= max_workers; P *= 2) {
    GenConfig cfg;
    cfg.scheme = scheme;
    cfg.procs = P;
    cfg.seed = seed;
    const GenReport rep = generate(ws, cfg);
    StrongScalingRow row;
    row.workers = P;
    row.seconds = rep.wall_ms / 1e3;
    row.edges = rep.total_edges;
    if (P == 1) t1 = row.seconds;
    row.speedup = row.seconds > 0.0 ? t1 / row.seconds : 0.0;
    rows.push_back(row);
  }
  return rows;
}

std::vector<WeakScalingRow> weak_scaling(double gamma, double w_min, double w_max,
                                         node_t nodes_per_worker, int max_workers, Scheme scheme,
                                         std::uint64_t seed) {
  std::vector<WeakScalingRow> rows;
  double t1 = 0.0;
  for (int P = 1; P <= max_workers; P *= 2) {
    const WeightSequence ws =
        synth_powerlaw(nodes_per_worker * P, gamma, w_min, w_max, seed + static_cast<std::uint64_t>(P));
    GenConfig cfg;
    cfg.scheme = scheme;
    cfg.procs = P;
    cfg.seed = seed;
    const GenReport rep = generate(ws, cfg);
    WeakScalingRow row;
    row.workers = P;
    row.n = ws.size();
    row.seconds = rep.wall_ms / 1e3;
    row.edges = rep.total_edges;
    if (P == 1) t1 = row.seconds;
    row.ratio_vs_one = t1 > 0.0 ? row.seconds / t1 : 0.0;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace clgen
