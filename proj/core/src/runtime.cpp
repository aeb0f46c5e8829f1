#include "clgen/runtime.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <ostream>

namespace clgen {

namespace {

double thread_cpu_ms() {
  timespec ts{};
  clock_gettime(CLOCK_THREAD_CPUTIME_ID, &ts);
  return static_cast<double>(ts.tv_sec) * 1e3 + static_cast<double>(ts.tv_nsec) * 1e-6;
}

std::string rank_edge_path(const GenConfig& cfg, int rank) {
  return (std::filesystem::path(cfg.out_dir) / ("edges_" + std::to_string(rank))).string() +
         format_extension(cfg.format);
}

PartitionPlan build_plan(const WeightSequence& ws, const GenConfig& cfg, Communicator& comm) {
  if (cfg.preplanned) {
    if (cfg.preplanned->procs != comm.size()) {
      throw error("generate: plan is for P=" + std::to_string(cfg.preplanned->procs) +
                  " but running with P=" + std::to_string(comm.size()));
    }
    if (cfg.preplanned->n != ws.size()) {
      throw error("generate: plan node count does not match the weight sequence");
    }
    return *cfg.preplanned;
  }
  switch (cfg.scheme) {
    case Scheme::ucp: return plan_ucp(ws, comm);
    case Scheme::naive: return plan_naive(ws.size(), comm.size());
    case Scheme::rrp: return plan_rrp(ws.size(), comm.size());
  }
  throw error("generate: bad scheme");
}

}  // namespace

RankOutput generate_on_rank(const WeightSequence& ws, const GenConfig& cfg, Communicator& comm,
                            bool keep_edges) {
  RankOutput out;
  const int rank = comm.rank();
  const int P = comm.size();

  // Parallel sum of the weights; generation keeps using the canonical sum_S so
  // the edge set does not depend on P. The reduced value doubles as a check
  // that all ranks hold the same sequence.
  const auto [blo, bhi] = block_bounds(ws.size(), P, rank);
  double block_weight = 0.0;
  for (node_t u = blo; u < bhi; ++u) block_weight += ws.weights[static_cast<std::size_t>(u)];
  out.reduced_sum = comm.all_reduce_sum(block_weight);

  out.plan = build_plan(ws, cfg, comm);
  fill_partition_costs(out.plan, ws);

  out.report.rank = rank;
  out.report.nodes = out.plan.partition_size(rank);
  out.report.expected_cost = out.plan.per_partition_cost[static_cast<std::size_t>(rank)];
  out.report.expected_edges =
      out.report.expected_cost - static_cast<double>(out.report.nodes);

  EdgeVector vec;
  EdgeCounter counter;
  const bool persist = !cfg.out_dir.empty();
  EdgeSink& sink = (keep_edges || persist) ? static_cast<EdgeSink&>(vec) : counter;

  const auto wall0 = std::chrono::steady_clock::now();
  const double cpu0 = thread_cpu_ms();
  if (out.plan.scheme == Scheme::rrp) {
    const std::vector<node_t> sources = out.plan.partition_nodes(rank);
    create_edges(ws, ws.sum_S, sources, cfg.seed, sink);
  } else {
    create_edges_range(ws, ws.sum_S, out.plan.boundaries[static_cast<std::size_t>(rank)],
                       out.plan.boundaries[static_cast<std::size_t>(rank) + 1], cfg.seed, sink);
  }
  out.report.gen_cpu_ms = thread_cpu_ms() - cpu0;
  out.report.gen_wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - wall0).count();
  out.report.edges = sink.count();

  if (persist) write_edges(vec.edges, cfg.format, rank_edge_path(cfg, rank));
  if (keep_edges) out.edges = std::move(vec.edges);
  return out;
}

GenReport generate(const WeightSequence& ws, const GenConfig& cfg) {
  if (cfg.procs < 1) throw error("generate: procs must be >= 1");
  if (!cfg.out_dir.empty()) std::filesystem::create_directories(cfg.out_dir);
  if (cfg.merge && cfg.out_dir.empty()) throw error("generate: --merge needs an output directory");

  std::vector<RankOutput> outs(static_cast<std::size_t>(cfg.procs));
  const auto wall0 = std::chrono::steady_clock::now();
  run_spmd(
      cfg.procs,
      [&](Communicator& comm) {
        outs[static_cast<std::size_t>(comm.rank())] = generate_on_rank(ws, cfg, comm, cfg.merge);
      },
      cfg.comm_timeout);
  const double wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - wall0).count();

  GenReport report;
  report.n = ws.size();
  report.procs = cfg.procs;
  report.scheme = outs[0].plan.scheme;
  report.seed = cfg.seed;
  report.wall_ms = wall_ms;
  report.boundaries = outs[0].plan.boundaries;
  report.sum_check_rel = ws.sum_S > 0.0
                             ? std::abs(outs[0].reduced_sum - ws.sum_S) / ws.sum_S
                             : std::abs(outs[0].reduced_sum);
  for (const RankOutput& o : outs) {
    report.ranks.push_back(o.report);
    report.total_edges += o.report.edges;
  }

  if (cfg.merge) {
    std::vector<Edge> merged;
    merged.reserve(static_cast<std::size_t>(report.total_edges));
    for (RankOutput& o : outs) {
      merged.insert(merged.end(), o.edges.begin(), o.edges.end());
    }
    // (u,v)-lexicographic order makes merged files byte-comparable across
    // worker counts and schemes
    std::sort(merged.begin(), merged.end());
    const std::string path =
        (std::filesystem::path(cfg.out_dir) / "edges").string() + format_extension(cfg.format);
    write_edges(merged, cfg.format, path);
  }
  return report;
}

void print_report_human(const GenReport& report, std::ostream& out) {
  out << "scheme " << scheme_name(report.scheme) << ", P=" << report.procs << ", n=" << report.n
      << ", seed=" << report.seed << '\n';
  out << "  total edges " << report.total_edges << ", wall " << std::fixed
      << std::setprecision(2) << report.wall_ms << " ms\n";
  out << "  rank       nodes   expected-cost  expected-edges        edges   wall-ms    cpu-ms\n";
  for (const RankReport& r : report.ranks) {
    out << "  " << std::setw(4) << r.rank << std::setw(12) << r.nodes << std::setw(16)
        << std::setprecision(1) << r.expected_cost << std::setw(16) << r.expected_edges
        << std::setw(13) << r.edges << std::setw(10) << std::setprecision(2) << r.gen_wall_ms
        << std::setw(10) << r.gen_cpu_ms << '\n';
  }
  out.unsetf(std::ios::fixed);
}

void print_report_machine(const GenReport& report, std::ostream& out) {
  out << std::setprecision(12);
  out << "scheme=" << scheme_name(report.scheme) << " procs=" << report.procs
      << " n=" << report.n << " seed=" << report.seed << " total_edges=" << report.total_edges
      << " wall_ms=" << report.wall_ms << " sum_check_rel=" << report.sum_check_rel << '\n';
  for (const RankReport& r : report.ranks) {
    out << "rank=" << r.rank << " nodes=" << r.nodes << " cost=" << r.expected_cost
        << " expected_edges=" << r.expected_edges << " edges=" << r.edges
        << " gen_wall_ms=" << r.gen_wall_ms << " gen_cpu_ms=" << r.gen_cpu_ms << '\n';
  }
}

}  // namespace clgen
