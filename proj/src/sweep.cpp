#include "graphdm/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "graphdm/rng.hpp"

namespace graphdm {

namespace {

std::vector<Edge> all_vertex_pairs(int n) {
  std::vector<Edge> pairs;
  pairs.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  return pairs;
}

Graph graph_from_mask(int p, int q, const std::vector<Edge>& pairs,
                      std::uint64_t mask) {
  std::vector<Edge> edges;
  for (std::size_t t = 0; t < pairs.size(); ++t)
    if (mask & (1ull << t)) edges.push_back(pairs[t]);
  return Graph(p, q, std::move(edges));
}

struct GraphEval {
  bool degree = false;
  bool ppt = false;
  std::optional<bool> separable;
};

GraphEval evaluate_nonempty(const Graph& g, bool decide_separability) {
  GraphEval ev;
  ev.degree = degree_condition_graph(g).holds;
  ev.ppt = ppt_test(density_of_graph(g)).ppt;
  if (decide_separability) ev.separable = ev.ppt;
  return ev;
}

struct Shard {
  SweepTotals totals;
  MatchingTotals matchings;
  std::vector<std::pair<long long, Counterexample>> counterexamples;
};

// Runs body(index, shard) for index in [0, count), either serially or
// sharded statically over OpenMP threads. Shards are merged by index so the
// two paths produce identical reports.
template <typename Body>
std::vector<Shard> run_sharded(long long count, Execution exec,
                               const Body& body) {
  std::vector<Shard> shards;
#ifdef _OPENMP
  if (exec == Execution::Parallel) {
    shards.resize(omp_get_max_threads());
#pragma omp parallel
    {
      Shard& local = shards[omp_get_thread_num()];
#pragma omp for schedule(static)
      for (long long i = 0; i < count; ++i) body(i, local);
    }
    return shards;
  }
#else
  (void)exec;
#endif
  shards.resize(1);
  for (long long i = 0; i < count; ++i) body(i, shards[0]);
  return shards;
}

void merge_shards(std::vector<Shard>& shards, SweepReport& report) {
  std::vector<std::pair<long long, Counterexample>> all;
  for (Shard& s : shards) {
    report.totals.graphs_scanned += s.totals.graphs_scanned;
    report.totals.skipped_empty += s.totals.skipped_empty;
    report.totals.degree_holds += s.totals.degree_holds;
    report.totals.ppt_holds += s.totals.ppt_holds;
    report.totals.separable_decided += s.totals.separable_decided;
    report.totals.separable_holds += s.totals.separable_holds;
    report.totals.degree_ppt_agreements += s.totals.degree_ppt_agreements;
    report.totals.degree_ppt_disagreements +=
        s.totals.degree_ppt_disagreements;
    report.totals.degree_separability_disagreements +=
        s.totals.degree_separability_disagreements;
    if (report.matchings) {
      report.matchings->matchings_total += s.matchings.matchings_total;
      report.matchings->perfect_entangling += s.matchings.perfect_entangling;
      report.matchings->degree_holds += s.matchings.degree_holds;
      report.matchings->transpose_closure_checked += s.matchings.transpose_closure_checked;
      report.matchings->transpose_closure_violations += s.matchings.transpose_closure_violations;
      report.matchings->decomposed += s.matchings.decomposed;
      report.matchings->decompose_failures += s.matchings.decompose_failures;
    }
    std::move(s.counterexamples.begin(), s.counterexamples.end(),
              std::back_inserter(all));
  }
  std::sort(all.begin(), all.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [index, cex] : all)
    report.counterexamples.push_back(std::move(cex));
}

void tally(const Graph& g, const GraphEval& ev, long long index,
           Shard& shard) {
  ++shard.totals.graphs_scanned;
  if (ev.degree) ++shard.totals.degree_holds;
  if (ev.ppt) ++shard.totals.ppt_holds;
  if (ev.degree == ev.ppt) {
    ++shard.totals.degree_ppt_agreements;
  } else {
    ++shard.totals.degree_ppt_disagreements;
    shard.counterexamples.push_back(
        {index, Counterexample{"degree_ppt", g, ev.degree, ev.ppt,
                               ev.separable}});
  }
  if (ev.separable) {
    ++shard.totals.separable_decided;
    if (*ev.separable) ++shard.totals.separable_holds;
    if (ev.degree != *ev.separable) {
      ++shard.totals.degree_separability_disagreements;
      shard.counterexamples.push_back(
          {index, Counterexample{"degree_separability", g, ev.degree, ev.ppt,
                                 ev.separable}});
    }
  }
}

std::vector<std::vector<Edge>> enumerate_perfect_matchings(int n) {
  std::vector<std::vector<Edge>> out;
  if (n % 2 != 0) return out;
  std::vector<Edge> current;
  std::vector<bool> used(n, false);
  auto recurse = [&](auto&& self, int covered) -> void {
    if (covered == n) {
      out.push_back(current);
      return;
    }
    int first = 0;
    while (used[first]) ++first;
    used[first] = true;
    for (int v = first + 1; v < n; ++v) {
      if (used[v]) continue;
      used[v] = true;
      current.emplace_back(first, v);
      self(self, covered + 2);
      current.pop_back();
      used[v] = false;
    }
    used[first] = false;
  };
  recurse(recurse, 0);
  return out;
}

bool is_perfect_entangling(const Graph& g) {
  const auto deg = g.degrees();
  if (std::any_of(deg.begin(), deg.end(), [](int d) { return d != 1; }))
    return false;
  return std::all_of(g.edges().begin(), g.edges().end(), [&](const Edge& e) {
    return is_entangled_edge(g, e);
  });
}

}  // namespace

SweepReport sweep_graphs(int p, int q, const SweepMode& mode,
                              Execution exec) {
  const auto t0 = std::chrono::steady_clock::now();
  const int n = p * q;
  const auto pairs = all_vertex_pairs(n);
  const bool decide = n <= 6;

  SweepReport report;
  report.p = p;
  report.q = q;

  std::vector<Shard> shards;
  if (mode.kind == SweepMode::Kind::Exhaustive) {
    if (static_cast<int>(pairs.size()) > kMaxExhaustivePairBits)
      fail(ErrorKind::TooLarge,
           "exhaustive sweep needs 2^" + std::to_string(pairs.size()) +
               " graphs; the budget is 2^" +
               std::to_string(kMaxExhaustivePairBits));
    report.mode = "exhaustive";
    const long long total = (1ll << pairs.size()) - 1;
    report.requested = total;
    shards = run_sharded(total, exec, [&](long long i, Shard& shard) {
      const Graph g = graph_from_mask(p, q, pairs, i + 1);
      tally(g, evaluate_nonempty(g, decide), i, shard);
    });
  } else {
    report.mode = "random";
    report.seed = mode.seed;
    report.requested = mode.count;
    shards = run_sharded(mode.count, exec, [&](long long i, Shard& shard) {
      SplitMix64 rng(child_seed(mode.seed, static_cast<std::uint64_t>(i)));
      std::vector<Edge> edges;
      for (const Edge& pair : pairs)
        if (rng.next_bit()) edges.push_back(pair);
      if (edges.empty()) {
        ++shard.totals.skipped_empty;
        return;
      }
      const Graph g(p, q, std::move(edges));
      tally(g, evaluate_nonempty(g, decide), i, shard);
    });
  }

  merge_shards(shards, report);
  report.wall_time_ms =
      std::chrono::duration<double, std::milli>(
          std::chrono::steady_clock::now() - t0)
          .count();
  return report;
}

SweepReport sweep_matchings(int p, int q, Execution exec) {
  const auto t0 = std::chrono::steady_clock::now();
  const int n = p * q;
  if (n > kMaxMatchingVertices)
    fail(ErrorKind::TooLarge,
         "perfect matching enumeration is budgeted to " +
             std::to_string(kMaxMatchingVertices) + " vertices");

  SweepReport report;
  report.p = p;
  report.q = q;
  report.mode = "matchings";
  report.matchings = MatchingTotals{};

  const auto matchings = enumerate_perfect_matchings(n);
  report.requested = static_cast<long long>(matchings.size());

  std::vector<Shard> shards = run_sharded(
      static_cast<long long>(matchings.size()), exec,
      [&](long long i, Shard& shard) {
        const Graph g(p, q, matchings[i]);
        const GraphEval ev = evaluate_nonempty(g, n <= 6);
        tally(g, ev, i, shard);
        ++shard.matchings.matchings_total;
        if (ev.degree) ++shard.matchings.degree_holds;

        if (q == 2 && is_perfect_entangling(g)) {
          ++shard.matchings.perfect_entangling;
          ++shard.matchings.transpose_closure_checked;
          // At q = 2 the partial transpose of a perfect entangling matching
          // must again be one, equivalently the degree condition holds.
          if (!is_perfect_entangling(partial_transpose(g)) || !ev.degree) {
            ++shard.matchings.transpose_closure_violations;
            shard.counterexamples.push_back(
                {i, Counterexample{"transpose_closure", g, ev.degree, ev.ppt,
                                   ev.separable}});
          }
        }
        if (q == 2 && ev.degree) {
          bool ok = false;
          try {
            const DecomposeResult r = decompose_perfect_matching(g);
            ok = r.separable() &&
                 verify_decomposition(*r.decomposition, density_of_graph(g))
                     .ok;
          } catch (const Error&) {
            ok = false;
          }
          if (ok) {
            ++shard.matchings.decomposed;
          } else {
            ++shard.matchings.decompose_failures;
            shard.counterexamples.push_back(
                {i, Counterexample{"decompose", g, ev.degree, ev.ppt,
                                   ev.separable}});
          }
        }
      });

  merge_shards(shards, report);
  report.wall_time_ms =
      std::chrono::duration<double, std::milli>(
          std::chrono::steady_clock::now() - t0)
          .count();
  return report;
}

std::optional<std::vector<int>> local_permutation_witness(const Graph& g) {
  if (!degree_condition_graph(g).holds)
    fail(ErrorKind::DegreeConditionFails,
         "the local permutation claim assumes the degree condition");
  if (g.q() > kMaxWitnessQ)
    fail(ErrorKind::BudgetExceeded,
         "witness search enumerates q! permutations; q <= " +
             std::to_string(kMaxWitnessQ) + " required");

  const Graph gt = partial_transpose(g);
  const auto deg = g.degrees();
  const auto deg_t = gt.degrees();

  std::vector<int> perm(g.q());
  std::iota(perm.begin(), perm.end(), 1);
  do {
    // Vertex relabeling (a, c) -> (a, perm[c-1]).
    bool ok = true;
    for (int v = 0; v < g.vertex_count() && ok; ++v) {
      const VertexLabel lab = g.label_of(v);
      ok = deg[v] == deg_t[g.index_of({lab.a, perm[lab.b - 1]})];
    }
    for (const Edge& e : g.edges()) {
      if (!ok) break;
      const VertexLabel x = g.label_of(e.first), y = g.label_of(e.second);
      ok = gt.has_edge(g.index_of({x.a, perm[x.b - 1]}),
                       g.index_of({y.a, perm[y.b - 1]}));
    }
    if (ok) return perm;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

namespace {

std::vector<cplx> reshape_multiply(const std::vector<cplx>& v, int p, int q,
                                   const std::vector<cplx>& y) {
  // x = A y with A the p x q reshape of v
  std::vector<cplx> x(p, cplx{});
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < q; ++j) x[i] += v[i * q + j] * y[j];
  return x;
}

std::vector<cplx> reshape_adjoint_multiply(const std::vector<cplx>& v, int p,
                                           int q, const std::vector<cplx>& x) {
  // y = A^dagger x
  std::vector<cplx> y(q, cplx{});
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < q; ++j) y[j] += std::conj(v[i * q + j]) * x[i];
  return y;
}

void normalize(std::vector<cplx>& v) {
  double s = 0.0;
  for (const cplx& z : v) s += std::norm(z);
  s = std::sqrt(s);
  if (s == 0.0) return;
  for (cplx& z : v) z /= s;
}

// Singular values of the p x q reshape, descending.
std::vector<double> reshape_singular_values(const std::vector<cplx>& v, int p,
                                            int q) {
  const int small = std::min(p, q);
  CMatrix gram(small);
  if (q <= p) {
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) {
        cplx s = 0.0;
        for (int i = 0; i < p; ++i)
          s += std::conj(v[i * q + a]) * v[i * q + b];
        gram(a, b) = s;
      }
  } else {
    for (int a = 0; a < p; ++a)
      for (int b = 0; b < p; ++b) {
        cplx s = 0.0;
        for (int j = 0; j < q; ++j)
          s += v[a * q + j] * std::conj(v[b * q + j]);
        gram(a, b) = s;
      }
  }
  const EigenSystem es = hermitian_eigen(gram);
  std::vector<double> singulars(small);
  for (int i = 0; i < small; ++i)
    singulars[i] = std::sqrt(std::max(0.0, es.values[small - 1 - i]));
  return singulars;
}

void canonical_phase(std::vector<cplx>& v) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(v.size()); ++i)
    if (std::abs(v[i]) > std::abs(v[best]) + 1e-12) best = i;
  const double mag = std::abs(v[best]);
  if (mag == 0.0) return;
  const cplx rot = std::conj(v[best]) / mag;
  for (cplx& z : v) z *= rot;
}

}  // namespace

RangeSearchResult range_product_states(const DensityMatrix& rho,
                                       const RangeSearchOptions& options) {
  const int n = rho.dim();
  if (n > kMaxRangeDim)
    fail(ErrorKind::DimensionNotSupported,
         "range search is budgeted to dimension " +
             std::to_string(kMaxRangeDim));
  const int p = rho.p(), q = rho.q();

  RangeSearchResult result;
  result.p = p;
  result.q = q;
  result.options = options;

  const EigenSystem es = hermitian_eigen(rho.matrix());
  std::vector<int> basis_cols;
  for (int i = 0; i < n; ++i)
    if (es.values[i] > 1e-10) basis_cols.push_back(i);
  const int d = static_cast<int>(basis_cols.size());
  result.subspace_dimension = d;
  if (d == 0) return result;

  // basis[i] is the i-th orthonormal range vector.
  std::vector<std::vector<cplx>> basis(d, std::vector<cplx>(n));
  for (int i = 0; i < d; ++i)
    for (int r = 0; r < n; ++r) basis[i][r] = es.vectors(r, basis_cols[i]);

  auto assemble = [&](const std::vector<cplx>& coeff) {
    std::vector<cplx> v(n, cplx{});
    for (int i = 0; i < d; ++i)
      for (int r = 0; r < n; ++r) v[r] += coeff[i] * basis[i][r];
    return v;
  };

  for (int restart = 0; restart < options.restarts; ++restart) {
    SplitMix64 rng(child_seed(options.seed, restart));
    std::vector<cplx> coeff(d);
    for (cplx& z : coeff)
      z = cplx{2.0 * rng.next_unit() - 1.0, 2.0 * rng.next_unit() - 1.0};
    normalize(coeff);
    std::vector<cplx> y(q);
    for (cplx& z : y)
      z = cplx{2.0 * rng.next_unit() - 1.0, 2.0 * rng.next_unit() - 1.0};
    normalize(y);

    // Near a product state the top-singular-value increments scale like
    // sigma_2^2, so convergence is judged on sigma_2 itself, checked
    // periodically.
    double sigma_prev = 0.0;
    double residual = 1.0;
    std::vector<cplx> v = assemble(coeff);
    for (int iter = 0; iter < options.max_iterations; ++iter) {
      std::vector<cplx> x = reshape_multiply(v, p, q, y);
      normalize(x);
      y = reshape_adjoint_multiply(v, p, q, x);
      normalize(y);
      // best coefficients for this (x, y): c_i = conj(x^dagger A_i y)
      for (int i = 0; i < d; ++i) {
        const std::vector<cplx> ax = reshape_multiply(basis[i], p, q, y);
        cplx overlap = 0.0;
        for (int r = 0; r < p; ++r) overlap += std::conj(x[r]) * ax[r];
        coeff[i] = std::conj(overlap);
      }
      normalize(coeff);
      v = assemble(coeff);
      const std::vector<cplx> av = reshape_multiply(v, p, q, y);
      double sigma = 0.0;
      for (int r = 0; r < p; ++r) sigma += std::norm(av[r]);
      sigma = std::sqrt(sigma);
      const bool stalled = std::abs(sigma - sigma_prev) < 1e-16;
      sigma_prev = sigma;
      if (iter % 16 == 15 || stalled || iter + 1 == options.max_iterations) {
        const auto singulars = reshape_singular_values(v, p, q);
        residual = singulars.size() > 1 ? singulars[1] : 0.0;
        if (residual <= 0.05 * options.tol || stalled) break;
      }
    }
    if (residual > options.tol) continue;

    // duplicates are the same ray: |<v,w>| ~ 1 regardless of phase
    canonical_phase(v);
    bool duplicate = false;
    for (const RangeProductState& s : result.states) {
      cplx overlap = 0.0;
      for (int r = 0; r < n; ++r) overlap += std::conj(s.vec[r]) * v[r];
      if (std::abs(overlap) >= 1.0 - 1e-6) {
        duplicate = true;
        break;
      }
    }
    if (duplicate) continue;

    RangeProductState state;
    state.vec = v;
    state.residual = residual;
    // factors from the top singular pair
    std::vector<cplx> yy = y;
    for (int iter = 0; iter < 60; ++iter) {
      std::vector<cplx> x = reshape_multiply(v, p, q, yy);
      normalize(x);
      yy = reshape_adjoint_multiply(v, p, q, x);
      normalize(yy);
    }
    std::vector<cplx> x = reshape_multiply(v, p, q, yy);
    normalize(x);
    state.a = x;
    state.b.resize(q);
    for (int j = 0; j < q; ++j) state.b[j] = std::conj(yy[j]);
    canonical_phase(state.a);
    canonical_phase(state.b);
    result.states.push_back(std::move(state));
  }

  const int found = static_cast<int>(result.states.size());
  result.overlaps.assign(found, std::vector<double>(found, 0.0));
  for (int i = 0; i < found; ++i)
    for (int j = 0; j < found; ++j) {
      cplx s = 0.0;
      for (int r = 0; r < n; ++r)
        s += std::conj(result.states[i].vec[r]) * result.states[j].vec[r];
      result.overlaps[i][j] = std::abs(s);
    }
  return result;
}

ExampleGraphs example_graphs() {
  using L = VertexLabel;
  // 4x4 perfect matching: two unentangled pieces, one cris-cross on columns
  // {1,2}, one entangling 3-cycle on columns {3,4}.
  const Graph mixed_matching_4x4 = Graph::from_labels(
      4, 4,
      {
          {L{1, 1}, L{2, 1}},
          {L{1, 2}, L{2, 2}},
          {L{3, 1}, L{4, 2}},
          {L{3, 2}, L{4, 1}},
          {L{1, 3}, L{3, 4}},
          {L{1, 4}, L{4, 3}},
          {L{3, 3}, L{4, 4}},
          {L{2, 3}, L{2, 4}},
      });

  // 6x4 block matching: column pair {1,3} carries a cris-cross on rows
  // {1,3} plus a 4-cycle on rows {2,4,5,6}; column pair {2,4} carries a
  // 6-cycle. The {2,4} edges realize the canonicalizations (2<->3)(4<->5)
  // followed by (5<->6).
  const Graph block_matching_6x4 = Graph::from_labels(
      6, 4,
      {
          {L{1, 1}, L{3, 3}},
          {L{3, 1}, L{1, 3}},
          {L{2, 1}, L{5, 3}},
          {L{4, 1}, L{6, 3}},
          {L{5, 1}, L{4, 3}},
          {L{6, 1}, L{2, 3}},
          {L{1, 2}, L{3, 4}},
          {L{2, 2}, L{5, 4}},
          {L{3, 2}, L{2, 4}},
          {L{4, 2}, L{1, 4}},
          {L{5, 2}, L{6, 4}},
          {L{6, 2}, L{4, 4}},
      });

  // 3x4 perfect entangling matching satisfying the degree condition with no
  // cris-cross or tally mark; exhaustive search over all 10395 perfect
  // matchings on 12 vertices shows a single orbit under label permutations,
  // with this lexicographically smallest representative.
  const Graph irreducible_matching_3x4 = Graph::from_labels(
      3, 4,
      {
          {L{1, 1}, L{2, 2}},
          {L{1, 2}, L{3, 1}},
          {L{1, 3}, L{2, 4}},
          {L{1, 4}, L{3, 3}},
          {L{2, 1}, L{3, 4}},
          {L{2, 3}, L{3, 2}},
      });

  return ExampleGraphs{mixed_matching_4x4, block_matching_6x4, irreducible_matching_3x4};
}

}  // namespace graphdm
