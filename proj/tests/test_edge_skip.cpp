#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "clgen/edge_skip.hpp"
#include "clgen/weights.hpp"

using namespace clgen;

namespace {

WeightSequence seq(std::vector<double> ws) {
  return make_weight_sequence(std::move(ws), SortPolicy::require_sorted);
}

WeightSequence random_admissible(std::mt19937_64& gen, node_t n) {
  std::uniform_real_distribution<double> dist(0.2, 3.0);
  for (;;) {
    std::vector<double> raw(static_cast<std::size_t>(n));
    for (auto& w : raw) w = dist(gen);
    auto ws = make_weight_sequence(std::move(raw), SortPolicy::sort_desc);
    if (validate(ws).admissible) return ws;
  }
}

std::vector<Edge> sorted_edges(const WeightSequence& ws, std::uint64_t seed) {
  EdgeVector sink;
  serial_cl(ws, seed, sink);
  std::sort(sink.edges.begin(), sink.edges.end());
  return sink.edges;
}

}  // namespace

TEST_CASE("skip_length hand values and contract") {
  CHECK(skip_length(1.0, 0.9) == 0);
  CHECK(skip_length(1.0, 1e-12) == 0);

  // high-precision oracle: floor(ln r / ln(1-p)) in long double
  auto oracle = [](double p, double r) {
    return static_cast<node_t>(floorl(logl(static_cast<long double>(r)) /
                                      logl(1.0L - static_cast<long double>(p))));
  };
  CHECK(oracle(0.5, 0.25) == 2);
  CHECK(skip_length(0.5, 0.25) == 2);
  CHECK(oracle(0.5, 0.6) == 0);
  CHECK(skip_length(0.5, 0.6) == 0);

  CHECK_THROWS_AS(skip_length(0.0, 0.5), error);
  CHECK_THROWS_AS(skip_length(-0.1, 0.5), error);
  CHECK_THROWS_AS(skip_length(1.5, 0.5), error);
  CHECK_THROWS_AS(skip_length(0.5, 0.0), error);
  CHECK_THROWS_AS(skip_length(0.5, 1.0), error);

  // subnormal p saturates instead of overflowing
  CHECK(skip_length(1e-300, 0.5) == std::numeric_limits<node_t>::max());
}

TEST_CASE("skip_length agrees with the long-double oracle away from integers") {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> unit(1e-9, 1.0 - 1e-9);
  int checked = 0;
  for (int trial = 0; trial < 20000; ++trial) {
    const double p = unit(gen);
    const double r = unit(gen);
    const long double ratio =
        logl(static_cast<long double>(r)) / logl(1.0L - static_cast<long double>(p));
    if (ratio > 1e17) continue;
    const long double frac = ratio - floorl(ratio);
    if (frac < 1e-9 || frac > 1.0L - 1e-9) continue;  // floor boundary, skip
    CHECK(skip_length(p, r) == static_cast<node_t>(floorl(ratio)));
    ++checked;
  }
  CHECK(checked > 15000);
}

TEST_CASE("create_edges degenerate cases") {
  const auto ws = seq({2, 2, 2, 2});
  EdgeVector sink;
  const node_t last = ws.size() - 1;
  CHECK(create_edges(ws, ws.sum_S, std::vector<node_t>{last}, 1, sink) == 0);
  CHECK(sink.edges.empty());

  // zero-weight tail never appears as an endpoint
  const auto tail = seq({3, 2, 1, 0, 0});
  for (std::uint64_t s = 0; s < 50; ++s) {
    EdgeVector es;
    serial_cl(tail, s, es);
    for (const Edge& e : es.edges) {
      CHECK(tail.weights[static_cast<std::size_t>(e.u)] > 0.0);
      CHECK(tail.weights[static_cast<std::size_t>(e.v)] > 0.0);
    }
  }

  CHECK_THROWS_AS(create_edges(ws, ws.sum_S, std::vector<node_t>{99}, 1, sink), error);
}

TEST_CASE("single-source frequencies match w_0 w_j / S") {
  const auto ws = seq({2, 2, 2, 2});  // p = 4/8 = 0.5 per pair
  const int trials = 100000;
  std::map<Edge, int> counts;
  for (int t = 0; t < trials; ++t) {
    EdgeVector sink;
    create_edges(ws, ws.sum_S, std::vector<node_t>{0}, static_cast<std::uint64_t>(t), sink);
    for (const Edge& e : sink.edges) ++counts[e];
  }
  const double p = 0.5;
  const double sigma = std::sqrt(p * (1 - p) / trials);
  for (node_t v = 1; v < 4; ++v) {
    const double freq = counts[Edge{0, v}] / static_cast<double>(trials);
    CHECK(std::abs(freq - p) < 5 * sigma);
  }
}

TEST_CASE("serial_cl determinism and count statistics") {
  const auto ws = seq({2, 2, 2, 2});
  CHECK(sorted_edges(ws, 7) == sorted_edges(ws, 7));

  const auto one = seq({5});
  EdgeVector empty_sink;
  CHECK(serial_cl(one, 3, empty_sink) == 0);

  // mean edge count 3.0, variance sum p(1-p) = 6 * 0.25
  const int trials = 100000;
  double total = 0.0;
  for (int t = 0; t < trials; ++t) {
    EdgeCounter sink;
    serial_cl(ws, static_cast<std::uint64_t>(t) + 1000, sink);
    total += static_cast<double>(sink.count());
  }
  const double mean = total / trials;
  const double sigma_mean = std::sqrt(6 * 0.25 / trials);
  CHECK(std::abs(mean - 3.0) < 5 * sigma_mean);
}

TEST_CASE("naive_pair_sampler basics") {
  // clamped pair always present: w0*w1/S = 12/9 -> 1
  const auto clamp = seq({4, 3, 2});
  REQUIRE(clamp.weights[0] * clamp.weights[1] / clamp.sum_S >= 1.0);
  for (std::uint64_t s = 0; s < 200; ++s) {
    EdgeVector sink;
    naive_pair_sampler(clamp, s, sink);
    CHECK(std::find(sink.edges.begin(), sink.edges.end(), Edge{0, 1}) != sink.edges.end());
  }

  // n = 2, w = (1,1): single edge at frequency 1/2
  const auto two = seq({1, 1});
  const int trials = 100000;
  int hits = 0;
  for (int t = 0; t < trials; ++t) {
    EdgeCounter sink;
    naive_pair_sampler(two, static_cast<std::uint64_t>(t), sink);
    hits += sink.count() > 0;
  }
  const double freq = hits / static_cast<double>(trials);
  const double sigma = std::sqrt(0.25 / trials);
  CHECK(std::abs(freq - 0.5) < 5 * sigma);

  const auto big = synth_constant(4096, 1.0);
  EdgeCounter sink;
  CHECK_THROWS_AS(naive_pair_sampler(big, 1, sink), error);
}

TEST_CASE("skipping generator and naive oracle are statistically indistinguishable") {
  std::mt19937_64 gen(501);
  const auto ws = random_admissible(gen, 12);
  const int trials = 60000;

  std::map<Edge, int> skip_counts;
  std::map<Edge, int> naive_counts;
  for (int t = 0; t < trials; ++t) {
    EdgeVector a;
    serial_cl(ws, static_cast<std::uint64_t>(t), a);
    for (const Edge& e : a.edges) ++skip_counts[e];
    EdgeVector b;
    naive_pair_sampler(ws, static_cast<std::uint64_t>(t) + 7770000, b);
    for (const Edge& e : b.edges) ++naive_counts[e];
  }
  for (node_t u = 0; u < ws.size(); ++u) {
    for (node_t v = u + 1; v < ws.size(); ++v) {
      const double p = std::min(
          ws.weights[static_cast<std::size_t>(u)] * ws.weights[static_cast<std::size_t>(v)] / ws.sum_S, 1.0);
      const double sigma = std::sqrt(p * (1 - p) / trials) + 1e-12;
      const double f_skip = skip_counts[Edge{u, v}] / static_cast<double>(trials);
      const double f_naive = naive_counts[Edge{u, v}] / static_cast<double>(trials);
      CHECK(std::abs(f_skip - p) < 5 * sigma);
      CHECK(std::abs(f_naive - p) < 5 * sigma);
    }
  }
}

TEST_CASE("emitted edges are canonical and unique") {
  std::mt19937_64 gen(77);
  for (int trial = 0; trial < 10; ++trial) {
    const auto ws = random_admissible(gen, 200);
    EdgeVector sink;
    serial_cl(ws, static_cast<std::uint64_t>(trial), sink);
    std::set<std::pair<node_t, node_t>> seen;
    for (const Edge& e : sink.edges) {
      CHECK(e.u >= 0);
      CHECK(e.u < e.v);
      CHECK(e.v < ws.size());
      CHECK(seen.emplace(e.u, e.v).second);  // no duplicates
    }
    CHECK(sink.count() == static_cast<std::int64_t>(sink.edges.size()));
  }
}

TEST_CASE("partition invariance: any disjoint cover reproduces serial_cl exactly") {
  std::mt19937_64 gen(91);
  const auto ws = random_admissible(gen, 64);
  const std::uint64_t seed = 424242;
  const auto reference = sorted_edges(ws, seed);

  auto run_cover = [&](const std::vector<std::vector<node_t>>& cover) {
    std::vector<Edge> merged;
    for (const auto& part : cover) {
      EdgeVector sink;
      create_edges(ws, ws.sum_S, part, seed, sink);
      merged.insert(merged.end(), sink.edges.begin(), sink.edges.end());
    }
    std::sort(merged.begin(), merged.end());
    return merged;
  };

  // contiguous halves
  std::vector<node_t> all(64);
  std::iota(all.begin(), all.end(), node_t{0});
  CHECK(run_cover({{all.begin(), all.begin() + 32}, {all.begin() + 32, all.end()}}) == reference);

  // round-robin over 3
  std::vector<std::vector<node_t>> rr(3);
  for (node_t u = 0; u < 64; ++u) rr[static_cast<std::size_t>(u % 3)].push_back(u);
  CHECK(run_cover(rr) == reference);

  // random assignment over 5 parts
  std::uniform_int_distribution<int> pick(0, 4);
  std::vector<std::vector<node_t>> scattered(5);
  for (node_t u = 0; u < 64; ++u) scattered[static_cast<std::size_t>(pick(gen))].push_back(u);
  CHECK(run_cover(scattered) == reference);
}

TEST_CASE("candidate probability is non-increasing along a source's destinations") {
  std::mt19937_64 gen(123);
  const auto ws = random_admissible(gen, 100);
  for (node_t u = 0; u < 20; ++u) {
    double prev = 1.0;
    for (node_t v = u + 1; v < ws.size(); ++v) {
      const double q = std::min(
          ws.weights[static_cast<std::size_t>(u)] * ws.weights[static_cast<std::size_t>(v)] / ws.sum_S, 1.0);
      CHECK(q <= prev);
      prev = q;
    }
  }
}
