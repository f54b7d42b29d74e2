#include <doctest.h>

#include <set>

#include "graphdm/graph.hpp"
#include "support.hpp"

using namespace graphdm;
using L = VertexLabel;

namespace {

Graph cris_cross() {
  return Graph::from_labels(2, 2, {{L{1, 1}, L{2, 2}}, {L{1, 2}, L{2, 1}}});
}

Graph tally3() {
  return Graph::from_labels(
      3, 2, {{L{1, 1}, L{2, 2}}, {L{2, 1}, L{3, 2}}, {L{3, 1}, L{1, 2}}});
}

}  // namespace

TEST_CASE("graph construction and canonicalization") {
  const Graph g = cris_cross();
  CHECK(g.vertex_count() == 4);
  CHECK(g.edge_count() == 2);
  CHECK(g.edges() == std::vector<Edge>{{0, 3}, {1, 2}});

  CHECK(Graph(2, 2, {}).edge_count() == 0);

  CHECK_THROWS_AS(Graph(1, 2, {{0, 0}}), Error);
  CHECK_THROWS_AS(Graph(1, 2, {{0, 1}, {1, 0}}), Error);
  CHECK_THROWS_AS(Graph(1, 2, {{0, 2}}), Error);
  CHECK_THROWS_AS(Graph::from_labels(2, 2, {{L{1, 1}, L{3, 1}}}), Error);

  // order of endpoints and edges does not matter
  CHECK(Graph(2, 2, {{3, 0}, {2, 1}}) == cris_cross());
}

TEST_CASE("adjacency, degree, laplacian") {
  const Graph k2 = Graph::from_labels(1, 2, {{L{1, 1}, L{1, 2}}});
  const IntMatrix m = adjacency_matrix(k2);
  CHECK(m(0, 1) == 1);
  CHECK(m(1, 0) == 1);
  CHECK(m(0, 0) == 0);

  const IntMatrix l = laplacian(k2);
  CHECK(l(0, 0) == 1);
  CHECK(l(0, 1) == -1);
  CHECK(l(1, 0) == -1);
  CHECK(l(1, 1) == 1);

  const Graph cc = cris_cross();
  const IntMatrix mcc = adjacency_matrix(cc);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      const bool expect = (r == 0 && c == 3) || (r == 3 && c == 0) ||
                          (r == 1 && c == 2) || (r == 2 && c == 1);
      CHECK(mcc(r, c) == (expect ? 1 : 0));
    }
  const IntMatrix dcc = degree_matrix(cc);
  for (int i = 0; i < 4; ++i) CHECK(dcc(i, i) == 1);

  const Graph path = Graph::from_labels(
      2, 2, {{L{1, 1}, L{1, 2}}, {L{1, 2}, L{2, 1}}});
  const IntMatrix dp = degree_matrix(path);
  CHECK(dp(0, 0) == 1);
  CHECK(dp(1, 1) == 2);
  CHECK(dp(2, 2) == 1);
  CHECK(dp(3, 3) == 0);

  const Graph empty(2, 2, {});
  CHECK(adjacency_matrix(empty) == IntMatrix(4));
  CHECK(laplacian(empty) == IntMatrix(4));
}

TEST_CASE("graph partial transpose") {
  const Graph single = Graph::from_labels(2, 2, {{L{1, 1}, L{2, 2}}});
  const Graph flipped = partial_transpose(single);
  CHECK(flipped == Graph::from_labels(2, 2, {{L{1, 2}, L{2, 1}}}));

  CHECK(partial_transpose(cris_cross()) == cris_cross());

  const Graph unent = Graph::from_labels(3, 3, {{L{1, 1}, L{1, 3}}});
  CHECK(partial_transpose(unent) == unent);
}

TEST_CASE("partial transpose involution and edge count, exhaustively") {
  for (const auto [p, q] : {std::pair{2, 2}, std::pair{2, 3}}) {
    const int n = p * q;
    std::vector<Edge> pairs;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    long long violations = 0;
    for (long long mask = 1; mask < (1ll << pairs.size()); ++mask) {
      std::vector<Edge> edges;
      for (std::size_t t = 0; t < pairs.size(); ++t)
        if (mask & (1ll << t)) edges.push_back(pairs[t]);
      const Graph g(p, q, edges);
      const Graph gt = partial_transpose(g);
      if (gt.edge_count() != g.edge_count()) ++violations;
      if (!(partial_transpose(gt) == g)) ++violations;
      if (!(adjacency_matrix(gt) ==
            partial_transpose(adjacency_matrix(g), p, q)))
        ++violations;
    }
    CHECK(violations == 0);
  }
}

TEST_CASE("laplacian rows sum to zero exactly") {
  const auto candidates = [] {
    std::vector<Edge> all;
    for (int u = 0; u < 6; ++u)
      for (int v = u + 1; v < 6; ++v) all.emplace_back(u, v);
    return all;
  }();
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Graph g = testsupport::random_subgraph(2, 3, candidates, seed);
    const IntMatrix l = laplacian(g);
    for (int r = 0; r < l.dim(); ++r) {
      std::int64_t sum = 0;
      for (int c = 0; c < l.dim(); ++c) sum += l(r, c);
      CHECK(sum == 0);
    }
  }
}

TEST_CASE("entangled edges map to entangled edges") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto candidates = [] {
      std::vector<Edge> all;
      for (int u = 0; u < 6; ++u)
        for (int v = u + 1; v < 6; ++v) all.emplace_back(u, v);
      return all;
    }();
    const Graph g = testsupport::random_subgraph(2, 3, candidates, seed);
    const Graph gt = partial_transpose(g);
    int entangled_before = 0, entangled_after = 0;
    for (const Edge& e : g.edges())
      if (is_entangled_edge(g, e)) ++entangled_before;
    for (const Edge& e : gt.edges())
      if (is_entangled_edge(gt, e)) ++entangled_after;
    CHECK(entangled_before == entangled_after);
    for (const Edge& e : g.edges())
      if (!is_entangled_edge(g, e)) CHECK(gt.has_edge(e.first, e.second));
  }
}

TEST_CASE("entangled edge predicate") {
  CHECK(is_entangled_edge(L{1, 1}, L{2, 2}));
  CHECK_FALSE(is_entangled_edge(L{1, 1}, L{1, 2}));
  CHECK_FALSE(is_entangled_edge(L{1, 1}, L{2, 1}));
}

TEST_CASE("nearest point classification") {
  CHECK(is_nearest_point_graph(
      Graph::from_labels(2, 2, {{L{1, 1}, L{2, 2}}})));
  CHECK_FALSE(is_nearest_point_graph(
      Graph::from_labels(1, 3, {{L{1, 1}, L{1, 3}}})));
  CHECK(is_nearest_point_graph(cris_cross()));

  // candidate edge counts: horizontals + verticals + 2 diagonals per cell
  CHECK(nearest_point_candidate_edges(2, 2).size() == 6);
  CHECK(nearest_point_candidate_edges(2, 3).size() == 11);
  CHECK(nearest_point_candidate_edges(3, 3).size() == 20);
}

TEST_CASE("classify_matching core cases") {
  const auto tally = classify_matching(tally3());
  REQUIRE(tally.perfect_matching);
  REQUIRE(tally.components.size() == 1);
  CHECK(tally.components[0].kind == ComponentKind::TallyMark);
  CHECK(tally.components[0].cycle_a_labels == std::vector<int>{1, 2, 3});

  const auto cc = classify_matching(cris_cross());
  REQUIRE(cc.perfect_matching);
  REQUIRE(cc.components.size() == 1);
  CHECK(cc.components[0].kind == ComponentKind::CrisCross);

  const Graph path = Graph::from_labels(
      2, 2, {{L{1, 1}, L{1, 2}}, {L{1, 2}, L{2, 1}}});
  CHECK_FALSE(classify_matching(path).perfect_matching);

  // isolated vertices disqualify
  const Graph partial = Graph::from_labels(2, 2, {{L{1, 1}, L{1, 2}}});
  CHECK_FALSE(classify_matching(partial).perfect_matching);
}

TEST_CASE("classify_matching components partition the vertices") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Graph g = testsupport::random_entangling_matching(4 + seed % 3, seed);
    const auto cls = classify_matching(g);
    REQUIRE(cls.perfect_matching);
    std::set<int> seen;
    std::size_t total = 0;
    for (const auto& comp : cls.components) {
      for (int v : comp.vertices) seen.insert(v);
      total += comp.vertices.size();
      // every entangling component at q = 2 is a cris-cross or tally mark
      const bool canonical_kind = comp.kind == ComponentKind::CrisCross ||
                                  comp.kind == ComponentKind::TallyMark;
      CHECK(canonical_kind);
    }
    CHECK(seen.size() == total);
    CHECK(static_cast<int>(seen.size()) == g.vertex_count());
  }
}

TEST_CASE("classification splits mixed matchings by type") {
  // two horizontal edges plus a cris-cross on the other rows
  const Graph g = Graph::from_labels(4, 2,
                                     {{L{1, 1}, L{2, 1}},
                                      {L{1, 2}, L{2, 2}},
                                      {L{3, 1}, L{4, 2}},
                                      {L{3, 2}, L{4, 1}}});
  const auto cls = classify_matching(g);
  REQUIRE(cls.perfect_matching);
  REQUIRE(cls.components.size() == 2);
  CHECK(cls.components[0].kind == ComponentKind::Unentangled);
  CHECK(cls.components[0].edges.size() == 2);
  CHECK(cls.components[1].kind == ComponentKind::CrisCross);
}
