#ifndef GRAPHDM_SEPARABILITY_HPP
#define GRAPHDM_SEPARABILITY_HPP

#include <optional>
#include <vector>

#include "graphdm/density.hpp"
#include "graphdm/graph.hpp"
#include "graphdm/matrix.hpp"

namespace graphdm {

// One pure product projector w * P[a (x) b] of a convex mixture.
struct ProductTerm {
  double weight = 0.0;
  std::vector<cplx> a;  // length p, unit norm
  std::vector<cplx> b;  // length q, unit norm
};

struct Decomposition {
  int p = 0;
  int q = 0;
  std::vector<ProductTerm> terms;

  CMatrix reconstruct() const;
};

struct VerifyReport {
  bool ok = false;
  double reconstruction_error = 0.0;  // max entry of |reconstruct - rho|
};

// Checks weight positivity, weight sum 1 (1e-12), unit vectors (1e-12) and
// reconstruction within `tol`.
VerifyReport verify_decomposition(const Decomposition& d,
                                  const DensityMatrix& rho,
                                  double tol = 1e-10);

struct DegreeConditionGraph {
  bool holds = false;
  std::vector<std::int64_t> diff;  // diagonal of Delta(G) - Delta(G^Gamma_B)
};

// Exact integer comparison of the two degree matrices.
DegreeConditionGraph degree_condition_graph(const Graph& g);

struct PptResult {
  bool ppt = false;
  double min_eigenvalue = 0.0;
  std::vector<cplx> witness;  // eigenvector of the most negative eigenvalue
                              // when the test fails, empty otherwise
};

PptResult ppt_test(const DensityMatrix& rho, double tol = 1e-10);

enum class Decision { Separable, Entangled, Undecided };

struct Certificate {
  enum class Kind { DegreeViolation, NegativeEigenvalue };
  Kind kind = Kind::DegreeViolation;
  // DegreeViolation: vertices (0-based) where the degree diff is nonzero.
  std::vector<int> vertices;
  std::vector<std::int64_t> diff;
  // NegativeEigenvalue payload.
  double eigenvalue = 0.0;
  std::vector<cplx> eigenvector;
};

struct Verdict {
  bool degree_condition = false;
  bool ppt = false;
  Decision decision = Decision::Undecided;
  std::optional<Decomposition> decomposition;
  std::optional<Certificate> certificate;
};

// PPT is a complete separability certificate only for p*q <= 6; Separable
// verdicts here therefore carry no decomposition. Throws
// DimensionNotSupported beyond that range.
Verdict decide_low_dim(const DensityMatrix& rho);

// Result of a constructive builder: either a verified decomposition or an
// entanglement certificate (degree violation).
struct DecomposeResult {
  std::optional<Decomposition> decomposition;
  std::optional<Certificate> certificate;
  bool separable() const { return decomposition.has_value(); }
};

// Lattice graphs with edges of length 1 or sqrt(2): unentangled edges become
// single product terms, entangled edges pair up into opposite diagonals and
// contribute two terms each.
DecomposeResult decompose_nearest_point(const Graph& g);

// Perfect matchings at q = 2: unentangled edges become product terms; each
// entangled cycle of length L contributes L discrete-Fourier-phased terms.
DecomposeResult decompose_perfect_matching(const Graph& g);

struct Canonicalization {
  // image[a-1] is the new A label of a; applying it maps every cycle onto
  // its sorted labels in increasing order.
  std::vector<int> image;
  std::vector<std::vector<int>> cycles;  // A labels in cycle order
};

// Permutation on A labels turning a perfect entangling matching at q = 2
// into a disjoint union of cris-crosses and tally marks.
Canonicalization canonicalize_entangling_matching(const Graph& g);

Graph apply_a_label_permutation(const Graph& g, const std::vector<int>& image);

// Perfect entangling matchings that split into q/2 column-pair matchings,
// each covering every A label. Mixture weight 1/r per column pair.
Decomposition decompose_block_matching(const Graph& g);

// Eigenvector route: DFT product eigenvectors, one term per nonzero
// eigenvalue, for any factorization p*q = n.
Decomposition decompose_circulant(const CirculantSpec& spec, int p, int q);

// Hadamard route for Z_2^n group densities, any split k + l = n.
Decomposition decompose_z2n(const GroupFunctionZ2n& f, int k, int l);

}  // namespace graphdm

#endif
