#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <vector>

#include "clgen/types.hpp"

namespace clgen {

struct comm_error : error {
  using error::error;
};

struct BoundaryMsg {
  int k = 0;       // boundary index
  node_t n_k = 0;  // lower boundary of partition k
};

class InprocGroup;

// One rank's handle into an in-process SPMD group. Collectives combine
// contributions in rank-ascending order on every rank, so results are
// identical across ranks and across physical schedules, and match a
// sequential left-to-right fold bit for bit.
class Communicator {
 public:
  int rank() const { return rank_; }
  int size() const;

  double all_reduce_sum(double x);
  double exclusive_scan_sum(double x);
  std::vector<std::int64_t> all_gather_i64(std::int64_t x);

  void send_boundary(int k, node_t n_k, int to_rank);
  // Blocks until `expected` messages arrived; throws comm_error on timeout.
  std::vector<BoundaryMsg> recv_boundaries(int expected);

 private:
  friend class InprocGroup;
  Communicator(InprocGroup* group, int rank) : group_(group), rank_(rank) {}

  InprocGroup* group_;
  int rank_;
};

// Runs body on P ranks, one thread per rank, and joins them all. Mismatched
// collective sequences and missing messages surface as comm_error (after the
// group timeout) on every blocked rank instead of deadlocking. The lowest
// failing rank's exception is rethrown.
void run_spmd(int procs, const std::function<void(Communicator&)>& body,
              std::chrono::milliseconds timeout = std::chrono::milliseconds(30000));

}  // namespace clgen
