#include "clgen/edge_skip.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace clgen {

node_t skip_length(double p, double r) {
  if (!(p > 0.0) || !(p <= 1.0)) throw error("skip_length: p must be in (0,1]");
  if (!(r > 0.0) || !(r < 1.0)) throw error("skip_length: r must be in (0,1)");
  if (p >= 1.0) return 0;
  const double ratio = std::log(r) / std::log1p(-p);
  if (!(ratio < 9.0e18)) return std::numeric_limits<node_t>::max();
  return static_cast<node_t>(ratio);  // ratio >= 0, cast truncates == floor
}

namespace {

inline std::int64_t edges_from_source(const WeightSequence& ws, double S, node_t u,
                                      std::uint64_t seed, EdgeSink& sink) {
  const node_t n = ws.size();
  node_t j = u + 1;
  if (j >= n || !(S > 0.0)) return 0;

  const double w_u = ws.weights[static_cast<std::size_t>(u)];
  RngStream rng(seed, u);
  std::int64_t emitted = 0;

  double p = std::min(w_u * ws.weights[static_cast<std::size_t>(j)] / S, 1.0);
  while (j < n && p > 0.0) {
    node_t delta = 0;
    if (p < 1.0) delta = skip_length(p, rng.next_open01());
    if (delta >= n - j) break;  // skipped past the last node
    const node_t v = j + delta;
    const double q = std::min(w_u * ws.weights[static_cast<std::size_t>(v)] / S, 1.0);
    const double r = rng.next_open01();
    if (r < q / p) {
      sink.emit(Edge{u, v});
      ++emitted;
    }
    p = q;
    j = v + 1;
  }
  return emitted;
}

}  // namespace

std::int64_t create_edges(const WeightSequence& ws, double S, std::span<const node_t> sources,
                          std::uint64_t seed, EdgeSink& sink) {
  std::int64_t emitted = 0;
  for (node_t u : sources) {
    if (u < 0 || u >= ws.size()) throw error("create_edges: source node out of range");
    emitted += edges_from_source(ws, S, u, seed, sink);
  }
  return emitted;
}

std::int64_t create_edges_range(const WeightSequence& ws, double S, node_t lo, node_t hi,
                                std::uint64_t seed, EdgeSink& sink) {
  if (lo < 0 || hi > ws.size() || lo > hi) throw error("create_edges_range: bad node range");
  std::int64_t emitted = 0;
  for (node_t u = lo; u < hi; ++u) emitted += edges_from_source(ws, S, u, seed, sink);
  return emitted;
}

std::int64_t serial_cl(const WeightSequence& ws, std::uint64_t seed, EdgeSink& sink) {
  return create_edges_range(ws, ws.sum_S, 0, ws.size(), seed, sink);
}

std::int64_t naive_pair_sampler(const WeightSequence& ws, std::uint64_t seed, EdgeSink& sink,
                                node_t n_cap) {
  const node_t n = ws.size();
  if (n > n_cap) throw error("naive_pair_sampler: n exceeds the oracle cap");
  if (!(ws.sum_S > 0.0)) return 0;

  std::int64_t emitted = 0;
  for (node_t u = 0; u < n; ++u) {
    const double w_u = ws.weights[static_cast<std::size_t>(u)];
    RngStream rng(seed, u);
    for (node_t v = u + 1; v < n; ++v) {
      const double p = std::min(w_u * ws.weights[static_cast<std::size_t>(v)] / ws.sum_S, 1.0);
      if (rng.next_open01() < p) {
        sink.emit(Edge{u, v});
        ++emitted;
      }
    }
  }
  return emitted;
}

}  // namespace clgen
