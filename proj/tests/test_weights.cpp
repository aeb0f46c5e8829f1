#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "clgen/cost.hpp"
#include "clgen/weights.hpp"

using namespace clgen;

namespace {

std::string write_temp(const std::string& name, const std::string& body) {
  const std::string path = (std::filesystem::temp_directory_path() / name).string();
  std::ofstream out(path);
  out << body;
  return path;
}

// Stable descending sort oracle: (value, input index) pairs.
std::vector<node_t> stable_sort_labels(const std::vector<double>& ws) {
  std::vector<node_t> idx(ws.size());
  std::iota(idx.begin(), idx.end(), node_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](node_t a, node_t b) { return ws[static_cast<std::size_t>(a)] > ws[static_cast<std::size_t>(b)]; });
  return idx;
}

// Composite Simpson over t = ln x for the truncated power-law moments.
double powerlaw_mean_by_quadrature(double gamma, double a, double b) {
  const int panels = 4096;
  const double t0 = std::log(a);
  const double t1 = std::log(b);
  const double h = (t1 - t0) / panels;
  auto integrate = [&](double power) {
    // integral of x^power dx = integral of e^(t(power+1)) dt
    double acc = 0.0;
    for (int i = 0; i <= panels; ++i) {
      const double t = t0 + h * i;
      const double f = std::exp(t * (power + 1.0));
      const double w = (i == 0 || i == panels) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
      acc += w * f;
    }
    return acc * h / 3.0;
  };
  return integrate(1.0 - gamma) / integrate(-gamma);
}

}  // namespace

TEST_CASE("blocked_sum basics") {
  CHECK(blocked_sum({}) == 0.0);
  std::vector<double> xs{1.0, 2.0, 3.0};
  CHECK(blocked_sum(xs) == 6.0);
  // spans longer than one block still count everything once
  std::vector<double> ones(10000, 1.0);
  CHECK(blocked_sum(ones) == 10000.0);
}

TEST_CASE("make_weight_sequence sorts stably and records labels") {
  auto ws = make_weight_sequence({1.0, 4.0, 3.0, 2.0}, SortPolicy::sort_desc);
  CHECK(ws.weights == std::vector<double>{4.0, 3.0, 2.0, 1.0});
  CHECK(ws.sum_S == 10.0);
  const auto expect = stable_sort_labels({1.0, 4.0, 3.0, 2.0});
  CHECK(ws.orig_labels == expect);
  CHECK(ws.orig_labels == std::vector<node_t>{1, 2, 3, 0});
}

TEST_CASE("orig_labels is a permutation and relabeling round-trips") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> dist(0.0, 10.0);
  std::vector<double> input(257);
  for (auto& w : input) w = dist(gen);
  const auto ws = make_weight_sequence(input, SortPolicy::sort_desc);

  std::vector<bool> seen(input.size(), false);
  for (node_t label : ws.orig_labels) {
    REQUIRE(label >= 0);
    REQUIRE(label < static_cast<node_t>(input.size()));
    CHECK(!seen[static_cast<std::size_t>(label)]);
    seen[static_cast<std::size_t>(label)] = true;
  }
  for (std::size_t pos = 0; pos < input.size(); ++pos) {
    CHECK(ws.weights[pos] == input[static_cast<std::size_t>(ws.orig_labels[pos])]);
  }
}

TEST_CASE("load_weights happy paths") {
  const auto p1 = write_temp("clgen_w1.txt", "2\n2\n2\n2\n");
  auto ws = load_weights(p1, SortPolicy::require_sorted);
  CHECK(ws.weights == std::vector<double>{2, 2, 2, 2});
  CHECK(ws.sum_S == 8.0);
  CHECK(ws.orig_labels == std::vector<node_t>{0, 1, 2, 3});

  const auto p2 = write_temp("clgen_w2.txt", "1\n4\n3\n2\n");
  ws = load_weights(p2, SortPolicy::sort_desc);
  CHECK(ws.weights == std::vector<double>{4, 3, 2, 1});
  CHECK(ws.sum_S == 10.0);
  CHECK(ws.orig_labels == std::vector<node_t>{1, 2, 3, 0});

  const auto p3 = write_temp("clgen_w3.txt", "# comment\n5\n\n  4\n# tail\n3\n");
  ws = load_weights(p3, SortPolicy::require_sorted);
  CHECK(ws.weights == std::vector<double>{5, 4, 3});
}

TEST_CASE("load_weights error paths") {
  const auto unsorted = write_temp("clgen_w4.txt", "1\n4\n3\n2\n");
  CHECK_THROWS_WITH_AS(load_weights(unsorted, SortPolicy::require_sorted),
                       doctest::Contains("unsorted at line 2"), error);

  const auto junk = write_temp("clgen_w5.txt", "1\nbogus\n3\n");
  CHECK_THROWS_WITH_AS(load_weights(junk, SortPolicy::sort_desc),
                       doctest::Contains("line 2"), error);

  const auto negative = write_temp("clgen_w6.txt", "1\n-2\n");
  CHECK_THROWS_WITH_AS(load_weights(negative, SortPolicy::sort_desc),
                       doctest::Contains("negative weight at line 2"), error);

  const auto empty = write_temp("clgen_w7.txt", "# nothing\n");
  CHECK_THROWS_AS(load_weights(empty, SortPolicy::sort_desc), error);

  CHECK_THROWS_AS(load_weights("/nonexistent/weights.txt", SortPolicy::sort_desc), error);
}

TEST_CASE("synth_powerlaw degenerate and deterministic") {
  const auto one = synth_powerlaw(1, 2.5, 2.0, 1000.0, 9);
  REQUIRE(one.size() == 1);
  CHECK(one.weights[0] >= 2.0);
  CHECK(one.weights[0] <= 1000.0);

  const auto a = synth_powerlaw(500, 2.2, 1.0, 50.0, 123);
  const auto b = synth_powerlaw(500, 2.2, 1.0, 50.0, 123);
  CHECK(a.weights == b.weights);
  const auto c = synth_powerlaw(500, 2.2, 1.0, 50.0, 124);
  CHECK(a.weights != c.weights);
  CHECK(std::is_sorted(a.weights.begin(), a.weights.end(), std::greater<double>{}));

  CHECK_THROWS_AS(synth_powerlaw(0, 2.5, 2.0, 10.0, 1), error);
  CHECK_THROWS_AS(synth_powerlaw(10, 1.0, 2.0, 10.0, 1), error);
  CHECK_THROWS_AS(synth_powerlaw(10, 2.5, 0.0, 10.0, 1), error);
  CHECK_THROWS_AS(synth_powerlaw(10, 2.5, 20.0, 10.0, 1), error);
}

TEST_CASE("synth_powerlaw empirical mean tracks the quadrature oracle") {
  const double gamma = 2.5;
  const double w_min = 2.0;
  const double w_max = 1000.0;
  const auto ws = synth_powerlaw(100000, gamma, w_min, w_max, 42);
  const double mean =
      blocked_sum(ws.weights) / static_cast<double>(ws.size());
  const double oracle = powerlaw_mean_by_quadrature(gamma, w_min, w_max);
  CHECK(std::abs(mean - oracle) / oracle < 0.05);
}

TEST_CASE("synth_constant") {
  auto ws = synth_constant(4, 2.0);
  CHECK(ws.weights == std::vector<double>{2, 2, 2, 2});
  CHECK(ws.sum_S == 8.0);

  ws = synth_constant(1000000, 500.0);
  CHECK(ws.sum_S == 5e8);

  CHECK_THROWS_AS(synth_constant(3, 3.0), error);  // d^2 = 9 >= S = 9
  CHECK_THROWS_AS(synth_constant(0, 1.0), error);
  CHECK(synth_constant(5, 0.0).sum_S == 0.0);
}

TEST_CASE("validate") {
  auto rep = validate(make_weight_sequence({4, 3, 2, 1}, SortPolicy::require_sorted));
  CHECK(rep.is_sorted);
  CHECK(!rep.admissible);  // 16 >= 10
  CHECK(rep.n == 4);
  CHECK(rep.max_weight == 4.0);
  CHECK(rep.zero_weight_count == 0);

  rep = validate(make_weight_sequence({2, 2, 2, 2}, SortPolicy::require_sorted));
  CHECK(rep.admissible);  // 4 < 8

  rep = validate(make_weight_sequence({0, 0}, SortPolicy::require_sorted));
  CHECK(rep.zero_weight_count == 2);
  CHECK(!rep.admissible);  // S == 0
}

TEST_CASE("expected_total_edges matches the term-by-term oracle") {
  // direct sum of e_u = sum_{v>u} w_u w_v / S
  auto brute = [](const WeightSequence& ws) {
    double total = 0.0;
    for (std::size_t u = 0; u < ws.weights.size(); ++u) {
      for (std::size_t v = u + 1; v < ws.weights.size(); ++v) {
        total += ws.weights[u] * ws.weights[v] / ws.sum_S;
      }
    }
    return total;
  };

  const auto w4321 = make_weight_sequence({4, 3, 2, 1}, SortPolicy::require_sorted);
  CHECK(expected_total_edges(w4321) == doctest::Approx(3.5).epsilon(1e-12));
  CHECK(expected_total_edges(w4321) == doctest::Approx(brute(w4321)).epsilon(1e-12));

  const auto w2222 = make_weight_sequence({2, 2, 2, 2}, SortPolicy::require_sorted);
  CHECK(expected_total_edges(w2222) == doctest::Approx(3.0).epsilon(1e-12));

  CHECK(expected_total_edges(make_weight_sequence({7}, SortPolicy::require_sorted)) == 0.0);
  CHECK(expected_total_edges(make_weight_sequence({0, 0}, SortPolicy::require_sorted)) == 0.0);

  // and via the cost model: sum of (c_u - 1)
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> dist(0.0, 5.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> raw(200);
    for (auto& w : raw) w = dist(gen);
    const auto ws = make_weight_sequence(std::move(raw), SortPolicy::sort_desc);
    const auto costs = node_costs_sequential(ws);
    double sum_e = 0.0;
    for (double c : costs) sum_e += c - 1.0;
    CHECK(expected_total_edges(ws) == doctest::Approx(sum_e).epsilon(1e-12));
  }
}

TEST_CASE("write_weights round-trips") {
  const auto ws = synth_powerlaw(300, 2.5, 2.0, 100.0, 5);
  const std::string path =
      (std::filesystem::temp_directory_path() / "clgen_w_rt.txt").string();
  write_weights(ws, path);
  const auto back = load_weights(path, SortPolicy::require_sorted);
  CHECK(back.weights == ws.weights);
  CHECK(back.sum_S == ws.sum_S);
}
