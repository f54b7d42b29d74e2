#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "graphdm/cli.hpp"

namespace {

int emit(const graphdm::cli::CommandOutput& result) {
  std::cout << result.payload.dump(2) << std::endl;
  if (!result.diagnostics.empty()) std::cerr << result.diagnostics << std::endl;
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Density matrices of graphs: degree condition, PPT and constructive "
      "separable decompositions"};
  app.require_subcommand(1);

  // analyze
  std::string analyze_file;
  std::vector<int> analyze_split;
  CLI::App* analyze =
      app.add_subcommand("analyze",
                         "Degree condition, PPT and (when p*q <= 6) the "
                         "separability decision for a graph file");
  analyze->add_option("graph-file", analyze_file, "text or JSON graph file")
      ->required();
  analyze->add_option("--split", analyze_split, "p q")->expected(2);

  // decompose
  std::string decompose_file;
  bool nearest_point = false, matching = false, block_matching = false;
  std::vector<int> circulant_split, z2n_split;
  CLI::App* decompose = app.add_subcommand(
      "decompose", "Constructive separable decomposition for one of the "
                   "solved families");
  decompose->add_option("input-file", decompose_file, "graph or spec file")
      ->required();
  decompose->add_flag("--nearest-point", nearest_point,
                      "lattice graph with edges of length 1 or sqrt(2)");
  decompose->add_flag("--matching", matching, "perfect matching with q = 2");
  decompose->add_flag("--block-matching", block_matching,
                      "disjoint union of column-pair entangling matchings");
  decompose->add_option("--circulant", circulant_split,
                        "circulant spec JSON; arguments p q")
      ->expected(2);
  decompose->add_option("--z2n", z2n_split,
                        "group function JSON; arguments k l")
      ->expected(2);

  // sweep
  int sweep_p = 0, sweep_q = 0;
  bool exhaustive = false, matchings_mode = false, serial = false;
  std::vector<std::string> random_args;
  std::string out_file, csv_file;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Exhaustive, seeded-random or perfect-matching sweeps of the "
               "degree/PPT/separability verdicts");
  sweep->add_option("p", sweep_p, "A-side dimension")->required();
  sweep->add_option("q", sweep_q, "B-side dimension")->required();
  sweep->add_flag("--exhaustive", exhaustive, "all nonempty graphs");
  sweep->add_option("--random", random_args, "seed count")->expected(2);
  sweep->add_flag("--matchings", matchings_mode, "all perfect matchings");
  sweep->add_option("--out", out_file, "write the JSON report to a file");
  sweep->add_option("--csv", csv_file,
                    "write a per-graph CSV summary (exhaustive only)");
  sweep->add_flag("--serial", serial, "use the serial reference kernel");

  // range-search
  std::string range_file;
  std::vector<int> range_split;
  std::uint64_t range_seed = 1;
  int range_restarts = 64;
  double range_tol = 1e-8;
  bool range_complement = false;
  CLI::App* range = app.add_subcommand(
      "range-search", "Search the range of a density matrix for product "
                      "states");
  range->add_option("input-file", range_file, "graph file or density JSON")
      ->required();
  range->add_option("--split", range_split, "p q")->expected(2);
  range->add_option("--seed", range_seed, "search seed");
  range->add_option("--restarts", range_restarts, "optimizer restarts");
  range->add_option("--tol", range_tol, "second singular value threshold");
  range->add_flag("--complement", range_complement,
                  "search (I - rho)/(dim - 1) instead of rho");

  // figures
  app.add_subcommand("figures", "Dump the built-in example graphs as JSON");

  CLI11_PARSE(app, argc, argv);

  using graphdm::cli::CommandOutput;
  try {
    if (analyze->parsed()) {
      std::optional<int> p, q;
      if (!analyze_split.empty()) {
        p = analyze_split[0];
        q = analyze_split[1];
      }
      return emit(graphdm::cli::analyze(analyze_file, p, q));
    }
    if (decompose->parsed()) {
      const int families = (nearest_point ? 1 : 0) + (matching ? 1 : 0) +
                           (block_matching ? 1 : 0) +
                           (circulant_split.empty() ? 0 : 1) +
                           (z2n_split.empty() ? 0 : 1);
      if (families != 1) {
        std::cerr << "decompose: choose exactly one family flag" << std::endl;
        return 1;
      }
      using graphdm::cli::Family;
      if (nearest_point)
        return emit(graphdm::cli::decompose(decompose_file,
                                            Family::NearestPoint, {}, {}));
      if (matching)
        return emit(
            graphdm::cli::decompose(decompose_file, Family::Matching, {}, {}));
      if (block_matching)
        return emit(graphdm::cli::decompose(decompose_file,
                                            Family::BlockMatching, {}, {}));
      if (!circulant_split.empty())
        return emit(graphdm::cli::decompose(decompose_file, Family::Circulant,
                                            circulant_split[0],
                                            circulant_split[1]));
      return emit(graphdm::cli::decompose(decompose_file, Family::Z2n,
                                          z2n_split[0], z2n_split[1]));
    }
    if (sweep->parsed()) {
      graphdm::cli::SweepRequest request;
      request.p = sweep_p;
      request.q = sweep_q;
      request.serial = serial;
      const int modes = (exhaustive ? 1 : 0) + (matchings_mode ? 1 : 0) +
                        (random_args.empty() ? 0 : 1);
      if (modes != 1) {
        std::cerr << "sweep: choose exactly one of --exhaustive, --random, "
                     "--matchings"
                  << std::endl;
        return 1;
      }
      if (exhaustive) {
        request.mode = graphdm::cli::SweepRequest::Mode::Exhaustive;
      } else if (matchings_mode) {
        request.mode = graphdm::cli::SweepRequest::Mode::Matchings;
      } else {
        request.mode = graphdm::cli::SweepRequest::Mode::Random;
        request.seed = std::stoull(random_args[0]);
        request.count = std::stoll(random_args[1]);
      }
      if (!out_file.empty()) request.out_file = out_file;
      if (!csv_file.empty()) request.csv_file = csv_file;
      return emit(graphdm::cli::sweep(request));
    }
    if (range->parsed()) {
      graphdm::cli::RangeSearchRequest request;
      request.input_file = range_file;
      if (!range_split.empty()) {
        request.p = range_split[0];
        request.q = range_split[1];
      }
      request.seed = range_seed;
      request.restarts = range_restarts;
      request.tol = range_tol;
      request.complement = range_complement;
      return emit(graphdm::cli::range_search(request));
    }
    return emit(graphdm::cli::figures());
  } catch (const std::exception& e) {
    std::cerr << e.what() << std::endl;
    return 1;
  }
}
