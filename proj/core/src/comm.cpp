#include "clgen/comm.hpp"

#include <condition_variable>
#include <deque>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

namespace clgen {

namespace {

enum class Op { none, all_reduce, excl_scan, all_gather, leave };

const char* op_name(Op op) {
  switch (op) {
    case Op::all_reduce: return "all_reduce_sum";
    case Op::excl_scan: return "exclusive_scan_sum";
    case Op::all_gather: return "all_gather_i64";
    case Op::leave: return "leave";
    default: return "none";
  }
}

}  // namespace

class InprocGroup {
 public:
  InprocGroup(int procs, std::chrono::milliseconds timeout)
      : procs_(procs),
        timeout_(timeout),
        dslots_(static_cast<std::size_t>(procs)),
        islots_(static_cast<std::size_t>(procs)),
        mail_(static_cast<std::size_t>(procs)) {}

  int size() const { return procs_; }

  double all_reduce(int rank, double x) {
    deposit_double(rank, Op::all_reduce, x);
    double acc = 0.0;
    for (int j = 0; j < procs_; ++j) acc += dslots_[static_cast<std::size_t>(j)];
    leave();
    return acc;
  }

  double exclusive_scan(int rank, double x) {
    deposit_double(rank, Op::excl_scan, x);
    double acc = 0.0;
    for (int j = 0; j < rank; ++j) acc += dslots_[static_cast<std::size_t>(j)];
    leave();
    return acc;
  }

  std::vector<std::int64_t> all_gather(int rank, std::int64_t x) {
    {
      std::unique_lock<std::mutex> lk(mu_);
      check_poison();
      match_op(Op::all_gather);
      islots_[static_cast<std::size_t>(rank)] = x;
      arrive(lk, "all_gather_i64");
    }
    std::vector<std::int64_t> out = islots_;
    leave();
    return out;
  }

  void send(int to, BoundaryMsg msg) {
    if (to < 0 || to >= procs_) throw comm_error("send_boundary: bad destination rank");
    std::lock_guard<std::mutex> lk(mu_);
    mail_[static_cast<std::size_t>(to)].push_back(msg);
    cv_.notify_all();
  }

  std::vector<BoundaryMsg> recv(int rank, int expected) {
    std::unique_lock<std::mutex> lk(mu_);
    auto& box = mail_[static_cast<std::size_t>(rank)];
    const bool ok = cv_.wait_for(lk, timeout_, [&] {
      return static_cast<int>(box.size()) >= expected || poisoned_;
    });
    if (poisoned_) throw comm_error("communicator poisoned: " + poison_reason_);
    if (!ok) {
      poison_locked("boundary receive timeout");
      throw comm_error("recv_boundaries: timeout waiting for " + std::to_string(expected) +
                       " messages");
    }
    std::vector<BoundaryMsg> out(box.begin(), box.begin() + expected);
    box.erase(box.begin(), box.begin() + expected);
    return out;
  }

  void poison(const std::string& reason) {
    std::lock_guard<std::mutex> lk(mu_);
    poison_locked(reason);
  }

  Communicator communicator(int rank) { return Communicator(this, rank); }

 private:
  void poison_locked(const std::string& reason) {
    if (!poisoned_) {
      poisoned_ = true;
      poison_reason_ = reason;
    }
    cv_.notify_all();
  }

  void check_poison() {
    if (poisoned_) throw comm_error("communicator poisoned: " + poison_reason_);
  }

  // First arriver of a cycle fixes the op; a different op on any other rank is
  // a program bug, reported on every rank rather than deadlocking.
  void match_op(Op op) {
    if (arrived_ == 0 && cur_op_ == Op::none) {
      cur_op_ = op;
    } else if (cur_op_ != op) {
      poison_locked(std::string("mismatched collective: ") + op_name(cur_op_) + " vs " +
                    op_name(op));
      throw comm_error("mismatched collective: " + std::string(op_name(op)) +
                       " called while peers run " + op_name(cur_op_));
    }
  }

  void arrive(std::unique_lock<std::mutex>& lk, const char* what) {
    const std::uint64_t gen = generation_;
    if (++arrived_ == procs_) {
      arrived_ = 0;
      ++generation_;
      cv_.notify_all();
      return;
    }
    const bool ok = cv_.wait_for(lk, timeout_, [&] { return generation_ != gen || poisoned_; });
    if (poisoned_) throw comm_error("communicator poisoned: " + poison_reason_);
    if (!ok) {
      poison_locked(std::string("collective timeout in ") + what);
      throw comm_error(std::string("collective timeout in ") + what);
    }
  }

  void deposit_double(int rank, Op op, double x) {
    std::unique_lock<std::mutex> lk(mu_);
    check_poison();
    match_op(op);
    dslots_[static_cast<std::size_t>(rank)] = x;
    arrive(lk, op_name(op));
  }

  // Second phase: nobody may start the next collective (and overwrite slots)
  // until every rank has read this one's result.
  void leave() {
    std::unique_lock<std::mutex> lk(mu_);
    check_poison();
    if (++left_ == procs_) {
      left_ = 0;
      cur_op_ = Op::none;
      ++generation_;
      cv_.notify_all();
      return;
    }
    const std::uint64_t gen = generation_;
    const bool ok = cv_.wait_for(lk, timeout_, [&] { return generation_ != gen || poisoned_; });
    if (poisoned_) throw comm_error("communicator poisoned: " + poison_reason_);
    if (!ok) {
      poison_locked("collective timeout leaving sync point");
      throw comm_error("collective timeout leaving sync point");
    }
  }

  const int procs_;
  const std::chrono::milliseconds timeout_;

  std::mutex mu_;
  std::condition_variable cv_;
  std::vector<double> dslots_;
  std::vector<std::int64_t> islots_;
  std::vector<std::deque<BoundaryMsg>> mail_;
  Op cur_op_ = Op::none;
  int arrived_ = 0;
  int left_ = 0;
  std::uint64_t generation_ = 0;
  bool poisoned_ = false;
  std::string poison_reason_;
};

int Communicator::size() const { return group_->size(); }

double Communicator::all_reduce_sum(double x) { return group_->all_reduce(rank_, x); }

double Communicator::exclusive_scan_sum(double x) { return group_->exclusive_scan(rank_, x); }

std::vector<std::int64_t> Communicator::all_gather_i64(std::int64_t x) {
  return group_->all_gather(rank_, x);
}

void Communicator::send_boundary(int k, node_t n_k, int to_rank) {
  group_->send(to_rank, BoundaryMsg{k, n_k});
}

std::vector<BoundaryMsg> Communicator::recv_boundaries(int expected) {
  return group_->recv(rank_, expected);
}

void run_spmd(int procs, const std::function<void(Communicator&)>& body,
              std::chrono::milliseconds timeout) {
  if (procs < 1) throw error("run_spmd: procs must be >= 1");

  InprocGroup group(procs, timeout);
  std::vector<std::exception_ptr> failures(static_cast<std::size_t>(procs));
  std::vector<std::thread> threads;
  threads.reserve(static_cast<std::size_t>(procs));
  for (int r = 0; r < procs; ++r) {
    threads.emplace_back([&, r] {
      Communicator comm = group.communicator(r);
      try {
        body(comm);
      } catch (...) {
        failures[static_cast<std::size_t>(r)] = std::current_exception();
        group.poison("rank " + std::to_string(r) + " failed");
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
}

}  // namespace clgen
