#include "graphdm/graph.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>
#include <string>

namespace graphdm {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SelfLoop: return "SelfLoop";
    case ErrorKind::DuplicateEdge: return "DuplicateEdge";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::EmptyGraph: return "EmptyGraph";
    case ErrorKind::HermiticityViolation: return "HermiticityViolation";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::TraceViolation: return "TraceViolation";
    case ErrorKind::NotNearestPoint: return "NotNearestPoint";
    case ErrorKind::PairingFailure: return "PairingFailure";
    case ErrorKind::NotPerfectMatching: return "NotPerfectMatching";
    case ErrorKind::NotPerfectEntanglingMatching:
      return "NotPerfectEntanglingMatching";
    case ErrorKind::NotBlockStructured: return "NotBlockStructured";
    case ErrorKind::WrongQ: return "WrongQ";
    case ErrorKind::ReconstructionFailure: return "ReconstructionFailure";
    case ErrorKind::DimensionNotSupported: return "DimensionNotSupported";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::DegreeConditionFails: return "DegreeConditionFails";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "UnknownError";
}

const char* to_string(ComponentKind kind) {
  switch (kind) {
    case ComponentKind::Unentangled: return "unentangled";
    case ComponentKind::CrisCross: return "cris_cross";
    case ComponentKind::TallyMark: return "tally_mark";
    case ComponentKind::GeneralEntangling: return "general_entangling";
  }
  return "unknown";
}

Graph::Graph(int p, int q, std::vector<Edge> edges) : p_(p), q_(q) {
  if (p < 1 || q < 1) fail(ErrorKind::IndexOutOfRange, "p and q must be >= 1");
  const int n = p * q;
  for (auto& e : edges) {
    if (e.first == e.second)
      fail(ErrorKind::SelfLoop,
           "edge joins vertex " + std::to_string(e.first + 1) + " to itself");
    if (e.first < 0 || e.second < 0 || e.first >= n || e.second >= n)
      fail(ErrorKind::IndexOutOfRange, "edge endpoint outside 0.." +
                                           std::to_string(n - 1));
    if (e.first > e.second) std::swap(e.first, e.second);
  }
  std::sort(edges.begin(), edges.end());
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (edges[i] == edges[i - 1])
      fail(ErrorKind::DuplicateEdge,
           "edge {" + std::to_string(edges[i].first + 1) + "," +
               std::to_string(edges[i].second + 1) + "} listed twice");
  edges_ = std::move(edges);
}

Graph Graph::from_labels(
    int p, int q,
    const std::vector<std::pair<VertexLabel, VertexLabel>>& edges) {
  if (p < 1 || q < 1) fail(ErrorKind::IndexOutOfRange, "p and q must be >= 1");
  std::vector<Edge> indexed;
  indexed.reserve(edges.size());
  for (const auto& [x, y] : edges) {
    for (const VertexLabel& v : {x, y})
      if (v.a < 1 || v.a > p || v.b < 1 || v.b > q)
        fail(ErrorKind::IndexOutOfRange,
             "label (" + std::to_string(v.a) + "," + std::to_string(v.b) +
                 ") outside the " + std::to_string(p) + "x" +
                 std::to_string(q) + " grid");
    indexed.emplace_back((x.a - 1) * q + (x.b - 1), (y.a - 1) * q + (y.b - 1));
  }
  return Graph(p, q, std::move(indexed));
}

int Graph::index_of(VertexLabel v) const {
  if (v.a < 1 || v.a > p_ || v.b < 1 || v.b > q_)
    fail(ErrorKind::IndexOutOfRange, "label outside grid");
  return (v.a - 1) * q_ + (v.b - 1);
}

VertexLabel Graph::label_of(int index) const {
  if (index < 0 || index >= vertex_count())
    fail(ErrorKind::IndexOutOfRange, "vertex index outside grid");
  return VertexLabel{index / q_ + 1, index % q_ + 1};
}

bool Graph::has_edge(int u, int v) const {
  if (u > v) std::swap(u, v);
  return std::binary_search(edges_.begin(), edges_.end(), Edge{u, v});
}

std::vector<int> Graph::degrees() const {
  std::vector<int> d(vertex_count(), 0);
  for (const auto& [u, v] : edges_) {
    ++d[u];
    ++d[v];
  }
  return d;
}

Graph Graph::with_split(int p, int q) const {
  if (p * q != vertex_count())
    fail(ErrorKind::DimensionMismatch,
         "split " + std::to_string(p) + "x" + std::to_string(q) +
             " does not match " + std::to_string(vertex_count()) +
             " vertices");
  return Graph(p, q, edges_);
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
  IntMatrix r(n_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
  return r;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
  IntMatrix r(n_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
  return r;
}

IntMatrix adjacency_matrix(const Graph& g) {
  IntMatrix m(g.vertex_count());
  for (const auto& [u, v] : g.edges()) {
    m(u, v) = 1;
    m(v, u) = 1;
  }
  return m;
}

IntMatrix degree_matrix(const Graph& g) {
  IntMatrix m(g.vertex_count());
  const auto d = g.degrees();
  for (int i = 0; i < g.vertex_count(); ++i) m(i, i) = d[i];
  return m;
}

IntMatrix laplacian(const Graph& g) {
  return degree_matrix(g) - adjacency_matrix(g);
}

IntMatrix partial_transpose(const IntMatrix& m, int p, int q) {
  if (p * q != m.dim())
    fail(ErrorKind::DimensionMismatch, "matrix dimension is not p*q");
  IntMatrix r(m.dim());
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j)
      for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
          r(i * q + a, j * q + b) = m(i * q + b, j * q + a);
  return r;
}

Graph partial_transpose(const Graph& g) {
  const int q = g.q();
  std::vector<Edge> edges;
  edges.reserve(g.edges().size());
  for (const auto& [u, v] : g.edges()) {
    const int i = u / q, j = u % q;
    const int k = v / q, l = v % q;
    edges.emplace_back(i * q + l, k * q + j);
  }
  return Graph(g.p(), q, std::move(edges));
}

bool is_entangled_edge(VertexLabel x, VertexLabel y) {
  return x.a != y.a && x.b != y.b;
}

bool is_entangled_edge(const Graph& g, const Edge& e) {
  return is_entangled_edge(g.label_of(e.first), g.label_of(e.second));
}

bool is_nearest_point_graph(const Graph& g) {
  for (const auto& [u, v] : g.edges()) {
    const VertexLabel x = g.label_of(u), y = g.label_of(v);
    if (std::abs(x.a - y.a) > 1 || std::abs(x.b - y.b) > 1) return false;
  }
  return true;
}

std::vector<Edge> nearest_point_candidate_edges(int p, int q) {
  std::vector<Edge> out;
  const int n = p * q;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      const int da = std::abs(u / q - v / q), db = std::abs(u % q - v % q);
      if (da <= 1 && db <= 1) out.emplace_back(u, v);
    }
  return out;
}

namespace {

struct DisjointSet {
  std::vector<int> parent;
  explicit DisjointSet(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

std::set<int> a_labels(const Graph& g, const std::vector<Edge>& edges) {
  std::set<int> s;
  for (const auto& [u, v] : edges) {
    s.insert(g.label_of(u).a);
    s.insert(g.label_of(v).a);
  }
  return s;
}

std::set<int> b_labels(const Graph& g, const std::vector<Edge>& edges) {
  std::set<int> s;
  for (const auto& [u, v] : edges) {
    s.insert(g.label_of(u).b);
    s.insert(g.label_of(v).b);
  }
  return s;
}

bool intersects(const std::set<int>& a, const std::set<int>& b) {
  auto it = a.begin();
  auto jt = b.begin();
  while (it != a.end() && jt != b.end()) {
    if (*it < *jt)
      ++it;
    else if (*jt < *it)
      ++jt;
    else
      return true;
  }
  return false;
}

// Groups edge indices by the closure of `merge`; returns groups ordered by
// their smallest edge index.
std::vector<std::vector<int>> group_edges(
    const Graph& g, const std::vector<int>& edge_ids,
    bool (*merge)(const Graph&, const Edge&, const Edge&)) {
  const auto& all = g.edges();
  const int m = static_cast<int>(edge_ids.size());
  DisjointSet ds(m);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (merge(g, all[edge_ids[i]], all[edge_ids[j]])) ds.unite(i, j);
  std::map<int, std::vector<int>> buckets;
  for (int i = 0; i < m; ++i) buckets[ds.find(i)].push_back(edge_ids[i]);
  std::vector<std::vector<int>> groups;
  for (auto& [root, ids] : buckets) groups.push_back(std::move(ids));
  std::sort(groups.begin(), groups.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return groups;
}

bool merge_entangled(const Graph& g, const Edge& e, const Edge& f) {
  const std::set<int> ea = a_labels(g, {e}), fa = a_labels(g, {f});
  const std::set<int> eb = b_labels(g, {e}), fb = b_labels(g, {f});
  return intersects(ea, fa) && intersects(eb, fb);
}

bool merge_unentangled(const Graph& g, const Edge& e, const Edge& f) {
  return a_labels(g, {e}) == a_labels(g, {f}) ||
         b_labels(g, {e}) == b_labels(g, {f});
}

MatchingComponent build_component(const Graph& g, const std::vector<int>& ids,
                                  bool entangled) {
  MatchingComponent comp;
  for (int id : ids) comp.edges.push_back(g.edges()[id]);
  std::set<int> verts;
  for (const auto& [u, v] : comp.edges) {
    verts.insert(u);
    verts.insert(v);
  }
  comp.vertices.assign(verts.begin(), verts.end());

  if (!entangled) {
    comp.kind = ComponentKind::Unentangled;
    return comp;
  }

  comp.kind = ComponentKind::GeneralEntangling;
  const std::set<int> cols = b_labels(g, comp.edges);
  if (cols.size() != 2) return comp;
  const int c1 = *cols.begin(), c2 = *cols.rbegin();

  // A-label map across the two columns; a cycle iff it is a permutation.
  std::map<int, int> pi;
  for (const auto& [u, v] : comp.edges) {
    VertexLabel x = g.label_of(u), y = g.label_of(v);
    if (x.b == c2) std::swap(x, y);
    if (x.b != c1 || y.b != c2 || pi.count(x.a)) return comp;
    pi[x.a] = y.a;
  }
  std::set<int> domain, codomain;
  for (const auto& [from, to] : pi) {
    domain.insert(from);
    codomain.insert(to);
  }
  if (domain != codomain) return comp;

  std::vector<int> cycle;
  int cur = *domain.begin();
  do {
    cycle.push_back(cur);
    cur = pi[cur];
  } while (cur != cycle.front() && cycle.size() <= pi.size());
  if (cycle.size() != pi.size()) return comp;  // not a single cycle
  comp.cycle_a_labels = cycle;

  // The canonical cris-cross and tally-mark forms live on columns 1 and 2.
  if (c1 == 1 && c2 == 2)
    comp.kind = cycle.size() == 2 ? ComponentKind::CrisCross
                                  : ComponentKind::TallyMark;
  return comp;
}

}  // namespace

MatchingClassification classify_matching(const Graph& g) {
  MatchingClassification result;
  const auto deg = g.degrees();
  for (int d : deg)
    if (d != 1) return result;
  result.perfect_matching = true;

  std::vector<int> entangled_ids, unentangled_ids;
  for (int i = 0; i < g.edge_count(); ++i)
    (is_entangled_edge(g, g.edges()[i]) ? entangled_ids : unentangled_ids)
        .push_back(i);

  std::vector<MatchingComponent> comps;
  for (const auto& ids : group_edges(g, unentangled_ids, merge_unentangled))
    comps.push_back(build_component(g, ids, false));
  for (const auto& ids : group_edges(g, entangled_ids, merge_entangled))
    comps.push_back(build_component(g, ids, true));
  std::sort(comps.begin(), comps.end(),
            [](const MatchingComponent& a, const MatchingComponent& b) {
              return a.vertices.front() < b.vertices.front();
            });
  result.components = std::move(comps);
  return result;
}

}  // namespace graphdm
