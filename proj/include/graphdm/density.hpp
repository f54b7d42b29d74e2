#ifndef GRAPHDM_DENSITY_HPP
#define GRAPHDM_DENSITY_HPP

#include <vector>

#include "graphdm/graph.hpp"
#include "graphdm/matrix.hpp"

namespace graphdm {

// Unit-trace PSD Hermitian matrix carrying its (p, q) tensor split.
class DensityMatrix {
 public:
  // Validates hermiticity, unit trace and positive semidefiniteness.
  DensityMatrix(CMatrix matrix, int p, int q);

  // For constructors whose output is PSD/unit-trace by construction.
  static DensityMatrix trusted(CMatrix matrix, int p, int q);

  const CMatrix& matrix() const { return m_; }
  int p() const { return p_; }
  int q() const { return q_; }
  int dim() const { return m_.dim(); }

  // Same matrix under another factorization of the dimension.
  DensityMatrix with_split(int p, int q) const;

 private:
  struct Trusted {};
  DensityMatrix(Trusted, CMatrix matrix, int p, int q)
      : m_(std::move(matrix)), p_(p), q_(q) {}
  CMatrix m_;
  int p_;
  int q_;
};

// rho(G) = L(G) / (2|E|). Throws EmptyGraph when |E| = 0.
DensityMatrix density_of_graph(const Graph& g);

// Circulant density given by its first row. Row r is the first row shifted
// cyclically right r times.
struct CirculantSpec {
  std::vector<cplx> first_row;
};

// Eigenvalues lambda_j = sum_d row[d] * exp(-2*pi*i*j*d/n), j = 0..n-1.
// Real for every row satisfying the hermiticity constraints.
std::vector<double> circulant_eigenvalues(const CirculantSpec& spec);

// Validation order: hermiticity of the first row, then trace, then PSD via
// the DFT eigenvalues.
DensityMatrix circulant_density(const CirculantSpec& spec, int p, int q);

// Real function on Z_2^n indexed by bitstrings; the density has entries
// rho(x, y) = f(x XOR y).
struct GroupFunctionZ2n {
  int n = 0;
  std::vector<double> values;  // length 2^n
};

// Eigenvalues lambda_s = sum_g f(g) * (-1)^popcount(s & g), s = 0..2^n-1.
std::vector<double> z2n_eigenvalues(const GroupFunctionZ2n& f);

// Split defaults to 2^(n/2) x 2^(n - n/2); any k + l = n works.
DensityMatrix group_density_z2n(const GroupFunctionZ2n& f);
DensityMatrix group_density_z2n(const GroupFunctionZ2n& f, int k, int l);

struct DegreeConditionGeneral {
  bool holds = false;
  std::vector<cplx> delta;     // row sums of rho
  std::vector<cplx> delta_pt;  // row sums of the partial transpose
};

// Compares Delta(rho) with Delta(rho^Gamma_B) entrywise at 1e-12.
DegreeConditionGeneral degree_condition_general(const DensityMatrix& rho);

// Normalized complement (I - rho) / (dim - 1). The unnormalized form
// (I - rho)/(dim/2) does not have unit trace; reports note the rescaling.
DensityMatrix complement_density(const DensityMatrix& rho);

}  // namespace graphdm

#endif
