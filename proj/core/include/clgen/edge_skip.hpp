#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "clgen/rng.hpp"
#include "clgen/types.hpp"
#include "clgen/weights.hpp"

namespace clgen {

// Undirected edge in canonical orientation: 0 <= u < v < n.
struct Edge {
  node_t u = 0;
  node_t v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend std::strong_ordering operator<=>(const Edge&, const Edge&) = default;
};

// Edge sink; counts every emitted record.
class EdgeSink {
 public:
  virtual ~EdgeSink() = default;
  void emit(const Edge& e) {
    on_edge(e);
    ++count_;
  }
  std::int64_t count() const { return count_; }

 private:
  virtual void on_edge(const Edge& e) = 0;
  std::int64_t count_ = 0;
};

class EdgeVector final : public EdgeSink {
 public:
  std::vector<Edge> edges;

 private:
  void on_edge(const Edge& e) override { edges.push_back(e); }
};

class EdgeCounter final : public EdgeSink {
 private:
  void on_edge(const Edge&) override {}
};

// floor(ln r / ln(1-p)) for p in (0,1); 0 when p >= 1 (the clamped branch).
// Saturates to the maximum node_t when the true skip overflows it.
node_t skip_length(double p, double r);

// Skip-and-accept loop over destinations j in (u, n) for each source u, with
// the RNG stream keyed (seed, u). Emitted edges carry marginal probability
// min(w_u w_v / S, 1), independently across pairs. Returns the emitted count.
std::int64_t create_edges(const WeightSequence& ws, double S, std::span<const node_t> sources,
                          std::uint64_t seed, EdgeSink& sink);
std::int64_t create_edges_range(const WeightSequence& ws, double S, node_t lo, node_t hi,
                                std::uint64_t seed, EdgeSink& sink);

std::int64_t serial_cl(const WeightSequence& ws, std::uint64_t seed, EdgeSink& sink);

// O(n^2) per-pair Bernoulli baseline; the statistical oracle for the skipping
// generator. Refuses n above the cap.
std::int64_t naive_pair_sampler(const WeightSequence& ws, std::uint64_t seed, EdgeSink& sink,
                                node_t n_cap = 2048);

}  // namespace clgen
