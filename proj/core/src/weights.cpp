#include "clgen/weights.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

#include "clgen/rng.hpp"

namespace clgen {

namespace {

constexpr std::size_t kSumBlock = 4096;
constexpr std::uint64_t kSynthTag = 0x706c73796e7468ULL;  // synth stream domain

}  // namespace

double blocked_sum(std::span<const double> xs) {
  double total = 0.0;
  for (std::size_t lo = 0; lo < xs.size(); lo += kSumBlock) {
    const std::size_t hi = std::min(lo + kSumBlock, xs.size());
    double part = 0.0;
    for (std::size_t k = lo; k < hi; ++k) part += xs[k];
    total += part;
  }
  return total;
}

WeightSequence make_weight_sequence(std::vector<double> weights, SortPolicy policy) {
  const node_t n = static_cast<node_t>(weights.size());
  WeightSequence ws;
  ws.orig_labels.resize(weights.size());
  std::iota(ws.orig_labels.begin(), ws.orig_labels.end(), node_t{0});

  if (policy == SortPolicy::sort_desc) {
    std::stable_sort(ws.orig_labels.begin(), ws.orig_labels.end(),
                     [&](node_t a, node_t b) { return weights[a] > weights[b]; });
    ws.weights.reserve(weights.size());
    for (node_t label : ws.orig_labels) ws.weights.push_back(weights[label]);
  } else {
    for (node_t u = 1; u < n; ++u) {
      if (weights[u] > weights[u - 1]) {
        std::ostringstream msg;
        msg << "weights unsorted at position " << u;
        throw error(msg.str());
      }
    }
    ws.weights = std::move(weights);
  }
  ws.sum_S = blocked_sum(ws.weights);
  return ws;
}

WeightSequence load_weights(const std::string& path, SortPolicy policy) {
  std::ifstream in(path);
  if (!in) throw error("cannot open weight file: " + path);

  std::vector<double> weights;
  std::vector<long> data_lines;  // file line of each weight, for diagnostics
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    const char* begin = line.c_str() + pos;
    char* end = nullptr;
    const double w = std::strtod(begin, &end);
    bool trailing_junk = false;
    for (const char* c = end; *c; ++c) {
      if (*c != ' ' && *c != '\t' && *c != '\r') trailing_junk = true;
    }
    if (end == begin || trailing_junk || !std::isfinite(w)) {
      std::ostringstream msg;
      msg << path << ": parse failure at line " << lineno;
      throw error(msg.str());
    }
    if (w < 0.0) {
      std::ostringstream msg;
      msg << path << ": negative weight at line " << lineno;
      throw error(msg.str());
    }
    weights.push_back(w);
    data_lines.push_back(lineno);
  }
  if (weights.empty()) throw error(path + ": empty weight file");

  if (policy == SortPolicy::require_sorted) {
    for (std::size_t k = 1; k < weights.size(); ++k) {
      if (weights[k] > weights[k - 1]) {
        std::ostringstream msg;
        msg << path << ": unsorted at line " << data_lines[k];
        throw error(msg.str());
      }
    }
  }
  return make_weight_sequence(std::move(weights), policy);
}

WeightSequence synth_powerlaw(node_t n, double gamma, double w_min, double w_max,
                              std::uint64_t seed) {
  if (n < 1) throw error("synth_powerlaw: n must be >= 1");
  if (!(gamma > 1.0)) throw error("synth_powerlaw: gamma must be > 1");
  if (!(w_min > 0.0)) throw error("synth_powerlaw: w_min must be > 0");
  if (w_min > w_max) throw error("synth_powerlaw: w_min > w_max");

  std::vector<double> weights;
  weights.reserve(static_cast<std::size_t>(n));
  RngStream rng(mix64(seed ^ kSynthTag));
  if (w_min == w_max) {
    weights.assign(static_cast<std::size_t>(n), w_min);
  } else {
    // F^-1(u) = (a^k + u (b^k - a^k))^(1/k), k = 1 - gamma
    const double k = 1.0 - gamma;
    const double ak = std::pow(w_min, k);
    const double bk = std::pow(w_max, k);
    for (node_t i = 0; i < n; ++i) {
      const double u = rng.next_open01();
      double w = std::pow(ak + u * (bk - ak), 1.0 / k);
      w = std::clamp(w, w_min, w_max);
      weights.push_back(w);
    }
  }
  return make_weight_sequence(std::move(weights), SortPolicy::sort_desc);
}

WeightSequence synth_constant(node_t n, double d) {
  if (n < 1) throw error("synth_constant: n must be >= 1");
  if (d < 0.0) throw error("synth_constant: d must be >= 0");
  if (d > 0.0 && d >= static_cast<double>(n)) {
    std::ostringstream msg;
    msg << "synth_constant: inadmissible (d^2 = " << d * d << " >= S = " << d * n << ")";
    throw error(msg.str());
  }
  return make_weight_sequence(std::vector<double>(static_cast<std::size_t>(n), d),
                              SortPolicy::require_sorted);
}

ValidationReport validate(const WeightSequence& ws) {
  ValidationReport rep;
  rep.n = ws.size();
  rep.sum_S = ws.sum_S;
  rep.is_sorted = std::is_sorted(ws.weights.begin(), ws.weights.end(), std::greater<double>{});
  for (double w : ws.weights) {
    rep.max_weight = std::max(rep.max_weight, w);
    if (w == 0.0) ++rep.zero_weight_count;
  }
  rep.admissible = ws.sum_S > 0.0 && rep.max_weight * rep.max_weight < ws.sum_S;
  return rep;
}

double expected_total_edges(const WeightSequence& ws) {
  if (ws.sum_S <= 0.0) return 0.0;
  std::vector<double> squares;
  squares.reserve(ws.weights.size());
  for (double w : ws.weights) squares.push_back(w * w);
  const double sum_sq = blocked_sum(squares);
  return (ws.sum_S * ws.sum_S - sum_sq) / (2.0 * ws.sum_S);
}

void write_weights(const WeightSequence& ws, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw error("cannot open for writing: " + path);
  out.precision(17);
  for (double w : ws.weights) out << w << '\n';
  if (!out) throw error("write failed: " + path);
}

}  // namespace clgen
