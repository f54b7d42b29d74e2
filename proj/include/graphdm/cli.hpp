#ifndef GRAPHDM_CLI_HPP
#define GRAPHDM_CLI_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "graphdm/io.hpp"

namespace graphdm::cli {

// Exit code 0 on success, 1 on user errors, 2 on internal inconsistencies.
struct CommandOutput {
  int exit_code = 0;
  json payload;             // written to stdout
  std::string diagnostics;  // written to stderr
};

int exit_code_for(const Error& error);

CommandOutput analyze(const std::string& graph_file, std::optional<int> p,
                      std::optional<int> q);

enum class Family { NearestPoint, Matching, BlockMatching, Circulant, Z2n };

// Circulant takes (p, q); Z2n takes (k, l).
CommandOutput decompose(const std::string& input_file, Family family,
                        std::optional<int> arg1, std::optional<int> arg2);

struct SweepRequest {
  int p = 0;
  int q = 0;
  enum class Mode { Exhaustive, Random, Matchings } mode = Mode::Exhaustive;
  std::uint64_t seed = 0;
  long long count = 0;
  std::optional<std::string> out_file;
  std::optional<std::string> csv_file;  // exhaustive only
  bool serial = false;
};

CommandOutput sweep(const SweepRequest& request);

struct RangeSearchRequest {
  std::string input_file;
  std::optional<int> p, q;  // required for graph inputs
  std::uint64_t seed = 1;
  int restarts = 64;
  double tol = 1e-8;
  bool complement = false;  // search (I - rho)/(dim - 1) instead
};

CommandOutput range_search(const RangeSearchRequest& request);

CommandOutput figures();

}  // namespace graphdm::cli

#endif
