#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "clgen/comm.hpp"
#include "clgen/edge_io.hpp"
#include "clgen/partition.hpp"

namespace clgen {

struct GenConfig {
  Scheme scheme = Scheme::ucp;
  int procs = 1;
  std::uint64_t seed = 0;
  std::string out_dir;  // empty: count only, nothing written
  EdgeFormat format = EdgeFormat::text;
  bool merge = false;
  std::optional<PartitionPlan> preplanned;  // from a `plan --out` file
  std::chrono::milliseconds comm_timeout{30000};
};

struct RankReport {
  int rank = 0;
  node_t nodes = 0;
  double expected_cost = 0.0;   // c(V_i)
  double expected_edges = 0.0;  // m_i = c(V_i) - |V_i|
  std::int64_t edges = 0;
  double gen_wall_ms = 0.0;  // create_edges section only; I/O excluded
  double gen_cpu_ms = 0.0;   // thread CPU time of the same section
};

struct GenReport {
  node_t n = 0;
  int procs = 1;
  Scheme scheme = Scheme::ucp;
  std::uint64_t seed = 0;
  std::vector<RankReport> ranks;
  std::int64_t total_edges = 0;
  double wall_ms = 0.0;               // whole SPMD section
  std::vector<node_t> boundaries;     // plan echo (consecutive schemes)
  double sum_check_rel = 0.0;         // |all_reduce(S) - sum_S| / sum_S
};

struct RankOutput {
  RankReport report;
  PartitionPlan plan;
  std::vector<Edge> edges;  // kept only when requested
  double reduced_sum = 0.0;
};

// SPMD body for one rank: parallel sum check, plan, timed generation,
// per-rank persistence. Exposed for tests that drive a Communicator directly.
RankOutput generate_on_rank(const WeightSequence& ws, const GenConfig& config,
                            Communicator& comm, bool keep_edges);

// Spawns config.procs in-process ranks, runs the full pipeline, merges and
// persists per config, and gathers the report.
GenReport generate(const WeightSequence& ws, const GenConfig& config);

void print_report_human(const GenReport& report, std::ostream& out);
void print_report_machine(const GenReport& report, std::ostream& out);

}  // namespace clgen
