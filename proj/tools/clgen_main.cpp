// clgen: random graphs with prescribed expected degrees, generated in
// parallel with uniform-cost load balancing.

#include <cstdio>
#include <fstream>
#include <mutex>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "clgen/analysis.hpp"
#include "clgen/comm.hpp"
#include "clgen/edge_io.hpp"
#include "clgen/partition.hpp"
#include "clgen/runtime.hpp"
#include "clgen/weights.hpp"

namespace {

struct WeightSourceOpts {
  std::string weights_file;
  bool require_sorted = false;
  double constant_d = -1.0;
  std::string powerlaw_spec;  // "gamma,wmin,wmax"
  clgen::node_t n = 0;
  std::uint64_t seed = 1;
};

void add_weight_source(CLI::App* cmd, WeightSourceOpts& opts) {
  auto* file = cmd->add_option("--weights", opts.weights_file, "weight file, one weight per line");
  cmd->add_flag("--sorted", opts.require_sorted,
                "require the weight file to already be sorted non-increasing");
  auto* constant = cmd->add_option("--constant", opts.constant_d, "constant weight d");
  auto* powerlaw = cmd->add_option("--powerlaw", opts.powerlaw_spec,
                                   "power-law weights: gamma,wmin,wmax");
  cmd->add_option("--n", opts.n, "number of nodes (synthesized sources)");
  cmd->add_option("--seed", opts.seed, "RNG seed");
  file->excludes(constant);
  file->excludes(powerlaw);
  constant->excludes(powerlaw);
}

clgen::WeightSequence resolve_weights(const WeightSourceOpts& opts) {
  if (!opts.weights_file.empty()) {
    return clgen::load_weights(opts.weights_file, opts.require_sorted
                                                      ? clgen::SortPolicy::require_sorted
                                                      : clgen::SortPolicy::sort_desc);
  }
  if (!opts.powerlaw_spec.empty()) {
    double gamma = 0.0;
    double w_min = 0.0;
    double w_max = 0.0;
    char sep1 = 0;
    char sep2 = 0;
    std::istringstream spec(opts.powerlaw_spec);
    if (!(spec >> gamma >> sep1 >> w_min >> sep2 >> w_max) || sep1 != ',' || sep2 != ',') {
      throw CLI::ValidationError("--powerlaw", "expected gamma,wmin,wmax");
    }
    if (opts.n < 1) throw CLI::ValidationError("--n", "synthesis needs --n >= 1");
    return clgen::synth_powerlaw(opts.n, gamma, w_min, w_max, opts.seed);
  }
  if (opts.constant_d >= 0.0) {
    if (opts.n < 1) throw CLI::ValidationError("--n", "synthesis needs --n >= 1");
    return clgen::synth_constant(opts.n, opts.constant_d);
  }
  throw CLI::ValidationError("weights", "need one of --weights, --constant, --powerlaw");
}

void check_backend(const std::string& backend) {
  if (backend != "inproc") {
    throw CLI::ValidationError("--backend", "only the in-process backend is available");
  }
}

void warn_if_inadmissible(const clgen::WeightSequence& ws) {
  const clgen::ValidationReport rep = clgen::validate(ws);
  if (!rep.admissible) {
    std::cerr << "warning: sequence is inadmissible (max w^2 = "
              << rep.max_weight * rep.max_weight << " >= S = " << rep.sum_S
              << "); probabilities are clamped at 1\n";
  }
}

std::vector<int> parse_procs_list(const std::string& spec) {
  std::vector<int> out;
  std::istringstream in(spec);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (!tok.empty()) out.push_back(std::stoi(tok));
  }
  if (out.empty()) throw CLI::ValidationError("--procs-list", "expected P1,P2,...");
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"Chung-Lu random graph generator with uniform-cost partitioning"};
  app.require_subcommand(1);

  std::string backend = "inproc";
  app.add_option("--backend", backend, "execution backend")
      ->envname("CLGEN_BACKEND")
      ->default_str("inproc");

  // ---- weights ----
  auto* weights_cmd = app.add_subcommand("weights", "synthesize or normalize a weight sequence");
  WeightSourceOpts weights_opts;
  add_weight_source(weights_cmd, weights_opts);
  std::string weights_out;
  weights_cmd->add_option("--out", weights_out, "output weight file")->required();

  // ---- plan ----
  auto* plan_cmd = app.add_subcommand("plan", "compute a partition plan");
  WeightSourceOpts plan_src;
  add_weight_source(plan_cmd, plan_src);
  std::string plan_scheme = "ucp";
  int plan_procs = 1;
  std::string plan_out;
  plan_cmd->add_option("--scheme", plan_scheme, "naive | ucp | rrp")
      ->check(CLI::IsMember({"naive", "ucp", "rrp"}));
  plan_cmd->add_option("--procs", plan_procs, "number of partitions")->required();
  plan_cmd->add_option("--out", plan_out, "plan file")->required();

  // ---- generate ----
  auto* gen_cmd = app.add_subcommand("generate", "generate a random graph");
  WeightSourceOpts gen_src;
  add_weight_source(gen_cmd, gen_src);
  std::string gen_scheme = "ucp";
  std::string gen_plan_file;
  int gen_procs = 1;
  std::string gen_out;
  std::string gen_format = "text";
  bool gen_merge = false;
  gen_cmd->add_option("--scheme", gen_scheme, "naive | ucp | rrp")
      ->check(CLI::IsMember({"naive", "ucp", "rrp"}));
  gen_cmd->add_option("--plan", gen_plan_file, "use a precomputed plan file");
  gen_cmd->add_option("--procs", gen_procs, "number of workers");
  gen_cmd->add_option("--out", gen_out, "output directory for edge files");
  gen_cmd->add_option("--format", gen_format, "text | bin")
      ->check(CLI::IsMember({"text", "bin"}));
  gen_cmd->add_flag("--merge", gen_merge, "also write a merged, (u,v)-sorted edge file");

  // ---- verify ----
  auto* verify_cmd = app.add_subcommand("verify", "model and partitioning checks");
  verify_cmd->require_subcommand(1);

  auto* lemmas_cmd = verify_cmd->add_subcommand("lemmas", "partition-cost inequalities");
  WeightSourceOpts lemma_src;
  add_weight_source(lemmas_cmd, lemma_src);
  int lemma_procs = 2;
  lemmas_cmd->add_option("--procs", lemma_procs, "partitions to check");

  auto* fid_cmd = verify_cmd->add_subcommand("fidelity", "degree-distribution fidelity");
  WeightSourceOpts fid_src;
  add_weight_source(fid_cmd, fid_src);
  int fid_procs = 1;
  std::string fid_scheme = "ucp";
  double fid_mean_tol = 0.0;
  double fid_bin_tol = 0.0;
  double fid_flag_mass = 100.0;
  std::string fid_csv;
  fid_cmd->add_option("--procs", fid_procs, "workers");
  fid_cmd->add_option("--scheme", fid_scheme)->check(CLI::IsMember({"naive", "ucp", "rrp"}));
  fid_cmd->add_option("--mean-tol", fid_mean_tol, "fail when mean rel error exceeds this (0: report only)");
  fid_cmd->add_option("--bin-tol", fid_bin_tol, "fail when a flagged bin exceeds this (0: report only)");
  fid_cmd->add_option("--flag-mass", fid_flag_mass, "expected mass needed to flag a bin");
  fid_cmd->add_option("--csv", fid_csv, "write per-bin rows as CSV");

  auto* census_cmd = verify_cmd->add_subcommand("census", "UCP boundaries per rank block");
  WeightSourceOpts census_src;
  add_weight_source(census_cmd, census_src);
  std::string census_list = "2,4,8,16,32,64,128,256,512";
  int census_assert_max = 0;
  census_cmd->add_option("--procs-list", census_list, "comma-separated worker counts");
  census_cmd->add_option("--assert-max", census_assert_max,
                         "fail when any count exceeds this (0: report only)");

  // ---- bench ----
  auto* bench_cmd = app.add_subcommand("bench", "desk-scale scaling benchmarks");
  bench_cmd->require_subcommand(1);

  auto* strong_cmd = bench_cmd->add_subcommand("strong", "fixed size, growing worker count");
  WeightSourceOpts strong_src;
  add_weight_source(strong_cmd, strong_src);
  int strong_max_workers = 8;
  std::string strong_scheme = "ucp";
  std::string strong_csv;
  strong_cmd->add_option("--max-workers", strong_max_workers);
  strong_cmd->add_option("--scheme", strong_scheme)->check(CLI::IsMember({"naive", "ucp", "rrp"}));
  strong_cmd->add_option("--csv", strong_csv, "write rows as CSV");

  auto* weak_cmd = bench_cmd->add_subcommand("weak", "fixed per-worker size");
  double weak_gamma = 2.5;
  double weak_wmin = 6.6;
  double weak_wmax = 2000.0;
  clgen::node_t weak_npw = 100000;
  int weak_max_workers = 8;
  std::string weak_scheme = "ucp";
  std::uint64_t weak_seed = 1;
  std::string weak_csv;
  weak_cmd->add_option("--gamma", weak_gamma);
  weak_cmd->add_option("--wmin", weak_wmin);
  weak_cmd->add_option("--wmax", weak_wmax);
  weak_cmd->add_option("--nodes-per-worker", weak_npw);
  weak_cmd->add_option("--max-workers", weak_max_workers);
  weak_cmd->add_option("--scheme", weak_scheme)->check(CLI::IsMember({"naive", "ucp", "rrp"}));
  weak_cmd->add_option("--seed", weak_seed);
  weak_cmd->add_option("--csv", weak_csv, "write rows as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;  // usage errors exit 1, --help exits 0
  }
  check_backend(backend);

  if (*weights_cmd) {
    const clgen::WeightSequence ws = resolve_weights(weights_opts);
    warn_if_inadmissible(ws);
    clgen::write_weights(ws, weights_out);
    std::cout << "n=" << ws.size() << " S=" << ws.sum_S << " out=" << weights_out << '\n';
    return 0;
  }

  if (*plan_cmd) {
    const clgen::WeightSequence ws = resolve_weights(plan_src);
    const clgen::Scheme scheme = clgen::scheme_from_name(plan_scheme);
    clgen::PartitionPlan plan;
    if (scheme == clgen::Scheme::ucp) {
      std::vector<clgen::PartitionPlan> per_rank(static_cast<std::size_t>(plan_procs));
      clgen::run_spmd(plan_procs, [&](clgen::Communicator& comm) {
        per_rank[static_cast<std::size_t>(comm.rank())] = clgen::plan_ucp(ws, comm);
      });
      plan = per_rank[0];
    } else if (scheme == clgen::Scheme::naive) {
      plan = clgen::plan_naive(ws.size(), plan_procs);
    } else {
      plan = clgen::plan_rrp(ws.size(), plan_procs);
    }
    clgen::fill_partition_costs(plan, ws);
    clgen::write_plan(plan, plan_out);
    std::cout << "scheme=" << clgen::scheme_name(plan.scheme) << " procs=" << plan.procs
              << " n=" << plan.n << " out=" << plan_out << '\n';
    for (int i = 0; i < plan.procs; ++i) {
      std::cout << "partition=" << i << " nodes=" << plan.partition_size(i)
                << " cost=" << plan.per_partition_cost[static_cast<std::size_t>(i)] << '\n';
    }
    return 0;
  }

  if (*gen_cmd) {
    const clgen::WeightSequence ws = resolve_weights(gen_src);
    warn_if_inadmissible(ws);
    clgen::GenConfig cfg;
    cfg.scheme = clgen::scheme_from_name(gen_scheme);
    cfg.procs = gen_procs;
    cfg.seed = gen_src.seed;
    cfg.out_dir = gen_out;
    cfg.format = clgen::format_from_name(gen_format);
    cfg.merge = gen_merge;
    if (!gen_plan_file.empty()) {
      cfg.preplanned = clgen::read_plan(gen_plan_file);
      cfg.scheme = cfg.preplanned->scheme;
      if (!gen_cmd->count("--procs")) cfg.procs = cfg.preplanned->procs;
    }
    const clgen::GenReport report = clgen::generate(ws, cfg);
    clgen::print_report_human(report, std::cout);
    clgen::print_report_machine(report, std::cout);
    return 0;
  }

  if (*lemmas_cmd) {
    const clgen::WeightSequence ws = resolve_weights(lemma_src);
    const clgen::LemmaReport rep = clgen::verify_lemmas(ws, lemma_procs);
    std::cout << "lemma1_monotone_cost=" << (rep.lemma1_monotone_cost ? "pass" : "FAIL") << '\n';
    if (rep.lemma2_checked) {
      std::cout << "lemma2_gap_bound=" << (rep.lemma2_gap_bound ? "pass" : "FAIL")
                << " min_slack=" << rep.lemma2_min_slack << '\n';
    } else {
      std::cout << "lemma2_gap_bound=skipped (needs n divisible by P)\n";
    }
    std::cout << "lemma3_rrp_bounds=" << (rep.lemma3_rrp_bounds ? "pass" : "FAIL") << '\n';
    if (!rep.all_pass()) throw clgen::error("lemma verification failed");
    return 0;
  }

  if (*fid_cmd) {
    const clgen::WeightSequence ws = resolve_weights(fid_src);
    clgen::GenConfig cfg;
    cfg.scheme = clgen::scheme_from_name(fid_scheme);
    cfg.procs = fid_procs;
    cfg.seed = fid_src.seed;
    std::vector<clgen::Edge> edges;
    std::mutex edges_mu;
    clgen::run_spmd(cfg.procs, [&](clgen::Communicator& comm) {
      clgen::RankOutput out = clgen::generate_on_rank(ws, cfg, comm, true);
      std::lock_guard<std::mutex> lk(edges_mu);
      edges.insert(edges.end(), out.edges.begin(), out.edges.end());
    });
    const clgen::DegreeHistogram hist = clgen::degree_histogram(edges, ws.size());
    const clgen::FidelityReport rep = clgen::compare_distributions(ws, hist, fid_flag_mass);
    std::cout << "mean_expected=" << rep.mean_expected << " mean_generated=" << rep.mean_generated
              << " mean_rel_error=" << rep.mean_rel_error << '\n';
    std::cout << "  bin            range   expected  generated  rel-error flagged\n";
    for (const clgen::FidelityBin& bin : rep.bins) {
      std::cout << "  " << std::setw(3) << bin.k << std::setw(9) << bin.lo << "-" << std::setw(8)
                << bin.hi << std::setw(11) << bin.expected_count << std::setw(11)
                << bin.generated_count << std::setw(11) << std::setprecision(4) << bin.rel_error
                << (bin.flagged ? "   yes" : "    no") << '\n';
    }
    std::cout << "max_flagged_rel_error=" << rep.max_flagged_rel_error << '\n';
    if (!fid_csv.empty()) {
      std::ofstream csv(fid_csv);
      csv << "bin,lo,hi,expected,generated,rel_error,flagged\n";
      for (const clgen::FidelityBin& bin : rep.bins) {
        csv << bin.k << ',' << bin.lo << ',' << bin.hi << ',' << bin.expected_count << ','
            << bin.generated_count << ',' << bin.rel_error << ',' << bin.flagged << '\n';
      }
    }
    if (fid_mean_tol > 0.0 && rep.mean_rel_error > fid_mean_tol) {
      throw clgen::error("mean degree relative error exceeds tolerance");
    }
    if (fid_bin_tol > 0.0 && rep.max_flagged_rel_error > fid_bin_tol) {
      throw clgen::error("flagged log-bin relative error exceeds tolerance");
    }
    return 0;
  }

  if (*census_cmd) {
    const clgen::WeightSequence ws = resolve_weights(census_src);
    const std::vector<int> procs = parse_procs_list(census_list);
    const auto rows = clgen::boundary_census(ws, procs);
    for (const auto& row : rows) {
      std::cout << "procs=" << row.procs << " max_boundaries=" << row.max_in_rank << '\n';
    }
    if (census_assert_max > 0) {
      for (const auto& row : rows) {
        if (row.max_in_rank > census_assert_max) {
          throw clgen::error("boundary census exceeded the asserted maximum");
        }
      }
    }
    return 0;
  }

  if (*strong_cmd) {
    const clgen::WeightSequence ws = resolve_weights(strong_src);
    const auto rows = clgen::strong_scaling(ws, strong_max_workers,
                                            clgen::scheme_from_name(strong_scheme),
                                            strong_src.seed);
    std::cout << "  workers    seconds    speedup        edges\n";
    for (const auto& row : rows) {
      std::cout << "  " << std::setw(7) << row.workers << std::setw(11) << std::fixed
                << std::setprecision(3) << row.seconds << std::setw(11) << std::setprecision(2)
                << row.speedup << std::setw(13) << row.edges << '\n';
      std::cout.unsetf(std::ios::fixed);
      std::cout << "workers=" << row.workers << " seconds=" << row.seconds
                << " speedup=" << row.speedup << " edges=" << row.edges << '\n';
    }
    if (!strong_csv.empty()) {
      std::ofstream csv(strong_csv);
      csv << "workers,seconds,speedup,edges\n";
      for (const auto& row : rows) {
        csv << row.workers << ',' << row.seconds << ',' << row.speedup << ',' << row.edges << '\n';
      }
    }
    return 0;
  }

  if (*weak_cmd) {
    const auto rows = clgen::weak_scaling(weak_gamma, weak_wmin, weak_wmax, weak_npw,
                                          weak_max_workers, clgen::scheme_from_name(weak_scheme),
                                          weak_seed);
    std::cout << "  workers           n    seconds   vs-1-worker        edges\n";
    for (const auto& row : rows) {
      std::cout << "  " << std::setw(7) << row.workers << std::setw(12) << row.n << std::setw(11)
                << std::fixed << std::setprecision(3) << row.seconds << std::setw(14)
                << std::setprecision(2) << row.ratio_vs_one << std::setw(13) << row.edges << '\n';
      std::cout.unsetf(std::ios::fixed);
      std::cout << "workers=" << row.workers << " n=" << row.n << " seconds=" << row.seconds
                << " ratio=" << row.ratio_vs_one << " edges=" << row.edges << '\n';
    }
    if (!weak_csv.empty()) {
      std::ofstream csv(weak_csv);
      csv << "workers,n,seconds,ratio_vs_one,edges\n";
      for (const auto& row : rows) {
        csv << row.workers << ',' << row.n << ',' << row.seconds << ',' << row.ratio_vs_one << ','
            << row.edges << '\n';
      }
    }
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
