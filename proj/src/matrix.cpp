#include "graphdm/matrix.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>

namespace graphdm {

CMatrix CMatrix::identity(int n) {
  CMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::from_int(const IntMatrix& im) {
  CMatrix m(im.dim());
  for (int r = 0; r < im.dim(); ++r)
    for (int c = 0; c < im.dim(); ++c)
      m(r, c) = static_cast<double>(im(r, c));
  return m;
}

CMatrix CMatrix::operator+(const CMatrix& o) const {
  CMatrix r(n_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
  return r;
}

CMatrix CMatrix::operator-(const CMatrix& o) const {
  CMatrix r(n_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
  return r;
}

CMatrix CMatrix::operator*(const CMatrix& o) const {
  CMatrix r(n_);
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k) {
      const cplx aik = (*this)(i, k);
      if (aik == cplx{}) continue;
      for (int j = 0; j < n_; ++j) r(i, j) += aik * o(k, j);
    }
  return r;
}

CMatrix CMatrix::scaled(cplx factor) const {
  CMatrix r(n_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * factor;
  return r;
}

CMatrix CMatrix::adjoint() const {
  CMatrix r(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r(i, j) = std::conj((*this)(j, i));
  return r;
}

cplx CMatrix::trace() const {
  cplx t = 0.0;
  for (int i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

double CMatrix::max_abs() const {
  double m = 0.0;
  for (const cplx& z : a_) m = std::max(m, std::abs(z));
  return m;
}

double CMatrix::inf_norm() const {
  double best = 0.0;
  for (int i = 0; i < n_; ++i) {
    double row = 0.0;
    for (int j = 0; j < n_; ++j) row += std::abs((*this)(i, j));
    best = std::max(best, row);
  }
  return best;
}

double CMatrix::hermiticity_defect() const {
  double worst = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = i; j < n_; ++j)
      worst = std::max(worst,
                       std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return worst;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.dim() != b.dim())
    fail(ErrorKind::DimensionMismatch, "matrices differ in dimension");
  double worst = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
  return worst;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const int na = a.dim(), nb = b.dim();
  CMatrix r(na * nb);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < na; ++j) {
      const cplx aij = a(i, j);
      if (aij == cplx{}) continue;
      for (int k = 0; k < nb; ++k)
        for (int l = 0; l < nb; ++l)
          r(i * nb + k, j * nb + l) = aij * b(k, l);
    }
  return r;
}

CMatrix partial_transpose(const CMatrix& m, int p, int q) {
  if (p * q != m.dim())
    fail(ErrorKind::DimensionMismatch, "matrix dimension is not p*q");
  CMatrix r(m.dim());
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j)
      for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
          r(i * q + a, j * q + b) = m(i * q + b, j * q + a);
  return r;
}

CMatrix row_sum_diagonal(const CMatrix& m) {
  CMatrix r(m.dim());
  for (int i = 0; i < m.dim(); ++i) {
    cplx s = 0.0;
    for (int j = 0; j < m.dim(); ++j) s += m(i, j);
    r(i, i) = s;
  }
  return r;
}

CMatrix dft_matrix(int n) {
  if (n < 1) fail(ErrorKind::DimensionMismatch, "dft_matrix needs n >= 1");
  CMatrix u(n);
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      const long long e = (static_cast<long long>(j) * k) % n;
      u(j, k) = std::polar(norm, 2.0 * std::numbers::pi * e / n);
    }
  return u;
}

CMatrix hadamard_sylvester(int n) {
  if (n < 0) fail(ErrorKind::DimensionMismatch, "hadamard_sylvester needs n >= 0");
  const int dim = 1 << n;
  const double norm = std::pow(2.0, -0.5 * n);
  CMatrix h(dim);
  for (int x = 0; x < dim; ++x)
    for (int y = 0; y < dim; ++y)
      h(x, y) = (std::popcount(static_cast<unsigned>(x & y)) & 1) ? -norm
                                                                  : norm;
  return h;
}

namespace {

double off_diagonal_norm(const CMatrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

double frobenius(const CMatrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// One complex Jacobi rotation zeroing a(p,q), applied to a and accumulated
// into v. Rotation columns: R[p][p]=c, R[p][q]=s*u, R[q][p]=-s*conj(u),
// R[q][q]=c with u = a(p,q)/|a(p,q)|.
void rotate(CMatrix& a, CMatrix& v, int p, int q) {
  const cplx g = a(p, q);
  const double absg = std::abs(g);
  if (absg == 0.0) return;
  const cplx u = g / absg;
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double theta = (aqq - app) / (2.0 * absg);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::hypot(1.0, theta));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  const int n = a.dim();
  for (int k = 0; k < n; ++k) {  // rows p and q: A <- R^dagger A
    const cplx x = a(p, k), y = a(q, k);
    a(p, k) = c * x - s * u * y;
    a(q, k) = s * std::conj(u) * x + c * y;
  }
  for (int k = 0; k < n; ++k) {  // columns p and q: A <- A R
    const cplx x = a(k, p), y = a(k, q);
    a(k, p) = c * x - s * std::conj(u) * y;
    a(k, q) = s * u * x + c * y;
  }
  for (int k = 0; k < n; ++k) {
    const cplx x = v(k, p), y = v(k, q);
    v(k, p) = c * x - s * std::conj(u) * y;
    v(k, q) = s * u * x + c * y;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();
}

}  // namespace

EigenSystem hermitian_eigen(const CMatrix& m, double hermiticity_tol) {
  if (!m.is_hermitian(hermiticity_tol))
    fail(ErrorKind::NotHermitian,
         "hermiticity defect " + std::to_string(m.hermiticity_defect()));
  const int n = m.dim();
  CMatrix a(n);
  for (int i = 0; i < n; ++i) {
    a(i, i) = m(i, i).real();
    for (int j = i + 1; j < n; ++j) {
      const cplx avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
      a(i, j) = avg;
      a(j, i) = std::conj(avg);
    }
  }
  CMatrix v = CMatrix::identity(n);

  const double scale = std::max(1.0, frobenius(a));
  constexpr int kMaxSweeps = 60;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= 1e-15 * scale) break;
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q)
        if (std::abs(a(p, q)) > 1e-18 * scale) rotate(a, v, p, q);
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    return a(i, i).real() < a(j, j).real();
  });

  EigenSystem es;
  es.values.resize(n);
  es.vectors = CMatrix(n);
  for (int i = 0; i < n; ++i) {
    es.values[i] = a(order[i], order[i]).real();
    for (int r = 0; r < n; ++r) es.vectors(r, i) = v(r, order[i]);
  }
  return es;
}

bool is_psd(const CMatrix& m, double tol) {
  const EigenSystem es = hermitian_eigen(m);
  const double threshold = -tol * std::max(1.0, m.inf_norm());
  return es.values.empty() || es.values.front() >= threshold;
}

}  // namespace graphdm
