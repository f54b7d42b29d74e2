#ifndef GRAPHDM_SWEEP_HPP
#define GRAPHDM_SWEEP_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "graphdm/density.hpp"
#include "graphdm/graph.hpp"
#include "graphdm/separability.hpp"

namespace graphdm {

// Sweeps run their per-graph kernel either serially (reference path, kept
// for testing) or sharded across OpenMP threads. Both paths produce the
// same report bit-for-bit.
enum class Execution { Serial, Parallel };

struct SweepMode {
  enum class Kind { Exhaustive, Random };
  Kind kind = Kind::Exhaustive;
  std::uint64_t seed = 0;  // random mode
  long long count = 0;     // random mode
};

struct Counterexample {
  // "degree_ppt" flags a violation of the proven degree <=> PPT
  // equivalence; "degree_separability" a genuine conjecture counterexample
  // at PPT-decidable dimensions; sweeps over matchings add "transpose_closure" and
  // "decompose".
  std::string kind;
  Graph graph;
  bool degree = false;
  bool ppt = false;
  std::optional<bool> separable;
};

struct SweepTotals {
  long long graphs_scanned = 0;
  long long skipped_empty = 0;
  long long degree_holds = 0;
  long long ppt_holds = 0;
  long long separable_decided = 0;
  long long separable_holds = 0;
  long long degree_ppt_agreements = 0;
  long long degree_ppt_disagreements = 0;
  long long degree_separability_disagreements = 0;
};

struct MatchingTotals {
  long long matchings_total = 0;
  long long perfect_entangling = 0;
  long long degree_holds = 0;
  long long transpose_closure_checked = 0;
  long long transpose_closure_violations = 0;
  long long decomposed = 0;
  long long decompose_failures = 0;
};

struct SweepReport {
  int p = 0;
  int q = 0;
  std::string mode;  // "exhaustive" | "random" | "matchings"
  std::uint64_t seed = 0;
  long long requested = 0;
  SweepTotals totals;
  std::optional<MatchingTotals> matchings;
  std::vector<Counterexample> counterexamples;
  double wall_time_ms = 0.0;  // excluded from the canonical serialization
};

// Exhaustive budget: the lattice pair count C(pq,2) must stay <= 20.
constexpr int kMaxExhaustivePairBits = 20;
// Perfect-matching enumeration budget (vertex count).
constexpr int kMaxMatchingVertices = 12;
// Witness search budget (B-side permutations).
constexpr int kMaxWitnessQ = 8;
// Range search dimension budget.
constexpr int kMaxRangeDim = 32;

// Degree condition, PPT, and (when p*q <= 6) PPT-decided separability for
// every nonempty graph of the family.
SweepReport sweep_graphs(int p, int q, const SweepMode& mode,
                              Execution exec = Execution::Parallel);

// All perfect matchings on p*q <= 12 vertices. For q = 2 additionally
// checks that the partial transpose of every perfect entangling matching is
// again one and that the degree condition implies a verified decomposition.
SweepReport sweep_matchings(int p, int q, Execution exec = Execution::Parallel);

// First permutation (lexicographic) P on the B labels with
// M(G^Gamma) = (I (x) P) M(G) (I (x) P^-1) and the same for the degree
// matrix. nullopt means no witness exists, which would refute the local
// permutation claim for this graph.
std::optional<std::vector<int>> local_permutation_witness(const Graph& g);

struct RangeSearchOptions {
  std::uint64_t seed = 1;
  int restarts = 64;
  double tol = 1e-8;
  int max_iterations = 2000;
};

struct RangeProductState {
  std::vector<cplx> vec;  // unit vector in range(rho)
  std::vector<cplx> a;    // p-side factor
  std::vector<cplx> b;    // q-side factor
  double residual = 0.0;  // second singular value of the p x q reshape
};

struct RangeSearchResult {
  int p = 0;
  int q = 0;
  int subspace_dimension = 0;
  std::vector<RangeProductState> states;
  std::vector<std::vector<double>> overlaps;  // |<v_i|v_j>|
  RangeSearchOptions options;
};

// Multi-restart alternating maximization of the top singular value of the
// reshaped vector over the range of rho; states with second singular value
// <= tol are collected and deduplicated up to global phase.
RangeSearchResult range_product_states(const DensityMatrix& rho,
                                       const RangeSearchOptions& options);

struct ExampleGraphs {
  Graph mixed_matching_4x4;  // 4x4 perfect matching, four label-disjoint components
  Graph block_matching_6x4;  // 6x4 block matching, two column-pair matchings
  Graph irreducible_matching_3x4;  // constructed 3x4 representative: perfect entangling
               // matching satisfying the degree condition, with no
               // cris-cross or tally mark and no column-pair split
};

ExampleGraphs example_graphs();

}  // namespace graphdm

#endif
