#ifndef GRAPHDM_MATRIX_HPP
#define GRAPHDM_MATRIX_HPP

#include <complex>
#include <vector>

#include "graphdm/error.hpp"
#include "graphdm/graph.hpp"

namespace graphdm {

using cplx = std::complex<double>;

// Dense square complex matrix, row-major. Small dimensions only; every
// operation is a pure value transformation.
class CMatrix {
 public:
  explicit CMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n) {}

  static CMatrix identity(int n);
  static CMatrix from_int(const IntMatrix& m);

  int dim() const { return n_; }
  cplx& operator()(int r, int c) { return a_[idx(r, c)]; }
  const cplx& operator()(int r, int c) const { return a_[idx(r, c)]; }

  CMatrix operator+(const CMatrix& o) const;
  CMatrix operator-(const CMatrix& o) const;
  CMatrix operator*(const CMatrix& o) const;
  CMatrix scaled(cplx factor) const;
  CMatrix adjoint() const;

  cplx trace() const;
  double max_abs() const;      // max entry magnitude
  double inf_norm() const;     // max absolute row sum
  double hermiticity_defect() const;  // max |A - A^dagger| entry
  bool is_hermitian(double tol) const { return hermiticity_defect() <= tol; }

  friend bool operator==(const CMatrix&, const CMatrix&) = default;

 private:
  std::size_t idx(int r, int c) const {
    return static_cast<std::size_t>(r) * n_ + c;
  }
  int n_;
  std::vector<cplx> a_;
};

double max_abs_diff(const CMatrix& a, const CMatrix& b);

CMatrix kron(const CMatrix& a, const CMatrix& b);

// Blockwise transpose of the q x q blocks of a p*q dimensional matrix.
CMatrix partial_transpose(const CMatrix& m, int p, int q);

// Diagonal matrix of row sums.
CMatrix row_sum_diagonal(const CMatrix& m);

// Fourier matrix over Z_n: U[j][k] = exp(2*pi*i*j*k/n)/sqrt(n), 0-based.
CMatrix dft_matrix(int n);

// n-fold Kronecker power of the 2x2 Hadamard; dimension 2^n. n = 0 gives
// the 1x1 identity.
CMatrix hadamard_sylvester(int n);

struct EigenSystem {
  std::vector<double> values;  // ascending
  CMatrix vectors;             // orthonormal columns, vectors(:, i) <-> values[i]
  EigenSystem() : vectors(0) {}
};

// Cyclic complex Jacobi diagonalization. Self-contained and deterministic;
// accurate to ~1e-14 * ||M|| at the dimensions used here.
EigenSystem hermitian_eigen(const CMatrix& m, double hermiticity_tol = 1e-9);

// lambda_min >= -tol * max(1, ||M||_inf).
bool is_psd(const CMatrix& m, double tol = 1e-10);

}  // namespace graphdm

#endif
