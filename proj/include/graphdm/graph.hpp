#ifndef GRAPHDM_GRAPH_HPP
#define GRAPHDM_GRAPH_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "graphdm/error.hpp"

namespace graphdm {

// Vertex of a bipartite-split graph addressed by its 1-based label pair:
// `a` indexes the A side (rows, 1..p), `b` the B side (columns, 1..q).
struct VertexLabel {
  int a = 0;
  int b = 0;
  friend bool operator==(const VertexLabel&, const VertexLabel&) = default;
};

// Unordered edge stored as a pair of 0-based vertex indices, smaller first.
using Edge = std::pair<int, int>;

// Simple graph on p*q vertices laid out row-major: label (a, b) sits at
// index (a-1)*q + (b-1). The edge set is canonicalized (pairs min-first,
// set sorted) so equality is structural and bit-exact.
class Graph {
 public:
  Graph(int p, int q, std::vector<Edge> edges);

  static Graph from_labels(
      int p, int q,
      const std::vector<std::pair<VertexLabel, VertexLabel>>& edges);

  int p() const { return p_; }
  int q() const { return q_; }
  int vertex_count() const { return p_ * q_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }

  int index_of(VertexLabel v) const;
  VertexLabel label_of(int index) const;
  bool has_edge(int u, int v) const;
  std::vector<int> degrees() const;

  // Same edge set reinterpreted under another factorization of p*q.
  Graph with_split(int p, int q) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  int p_;
  int q_;
  std::vector<Edge> edges_;
};

// Dense square integer matrix; adjacency/degree/laplacian values are held
// exactly so the transpose identity can be checked bit-for-bit.
class IntMatrix {
 public:
  explicit IntMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0) {}

  int dim() const { return n_; }
  std::int64_t& operator()(int r, int c) { return a_[idx(r, c)]; }
  std::int64_t operator()(int r, int c) const { return a_[idx(r, c)]; }

  IntMatrix operator+(const IntMatrix& o) const;
  IntMatrix operator-(const IntMatrix& o) const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t idx(int r, int c) const {
    return static_cast<std::size_t>(r) * n_ + c;
  }
  int n_;
  std::vector<std::int64_t> a_;
};

IntMatrix adjacency_matrix(const Graph& g);
IntMatrix degree_matrix(const Graph& g);
IntMatrix laplacian(const Graph& g);

// Blockwise transpose of the q x q blocks, in exact integers.
IntMatrix partial_transpose(const IntMatrix& m, int p, int q);

// Edge relabeling {(i,j),(k,l)} -> {(i,l),(k,j)}; an involution.
Graph partial_transpose(const Graph& g);

// True iff the endpoints differ in both the A label and the B label.
bool is_entangled_edge(VertexLabel x, VertexLabel y);
bool is_entangled_edge(const Graph& g, const Edge& e);

// True iff every edge connects lattice points at Euclidean distance 1 or
// sqrt(2) (horizontal, vertical, or either diagonal neighbor). Isolated
// vertices are allowed; only edge geometry is classified.
bool is_nearest_point_graph(const Graph& g);

// All candidate edges of the p x q lattice at distance 1 or sqrt(2).
std::vector<Edge> nearest_point_candidate_edges(int p, int q);

enum class ComponentKind {
  Unentangled,
  CrisCross,
  TallyMark,
  GeneralEntangling,
};

const char* to_string(ComponentKind kind);

struct MatchingComponent {
  std::vector<int> vertices;  // sorted 0-based indices
  std::vector<Edge> edges;    // canonical order
  ComponentKind kind = ComponentKind::Unentangled;
  // For entangling components spanning exactly two columns whose A-label
  // map is a permutation: the A labels in cycle order, starting from the
  // smallest. Empty otherwise.
  std::vector<int> cycle_a_labels;
};

struct MatchingClassification {
  bool perfect_matching = false;
  std::vector<MatchingComponent> components;
};

// Perfect-matching test plus decomposition into the disjoint type-pure
// pieces used throughout: entangled edges group when they share both an A
// label and a B label, unentangled edges when their A-label sets or B-label
// sets coincide. Cris-cross and tally-mark tags are reserved for components
// living on columns {1,2}; entangling components elsewhere are tagged
// GeneralEntangling.
MatchingClassification classify_matching(const Graph& g);

}  // namespace graphdm

#endif
