#include "graphdm/density.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

namespace graphdm {

namespace {

constexpr double kTraceTol = 1e-12;
constexpr double kPsdTol = 1e-10;
constexpr double kDegreeTol = 1e-12;

void check_split(int dim, int p, int q) {
  if (p < 1 || q < 1 || p * q != dim)
    fail(ErrorKind::DimensionMismatch,
         "split " + std::to_string(p) + "x" + std::to_string(q) +
             " does not factor dimension " + std::to_string(dim));
}

}  // namespace

DensityMatrix::DensityMatrix(CMatrix matrix, int p, int q)
    : m_(std::move(matrix)), p_(p), q_(q) {
  check_split(m_.dim(), p, q);
  if (!m_.is_hermitian(1e-10 * std::max(1.0, m_.inf_norm())))
    fail(ErrorKind::NotHermitian, "density matrix is not Hermitian");
  if (std::abs(m_.trace() - cplx{1.0}) > kTraceTol)
    fail(ErrorKind::TraceViolation,
         "trace = " + std::to_string(m_.trace().real()));
  if (!is_psd(m_, kPsdTol))
    fail(ErrorKind::NotPSD, "density matrix has a negative eigenvalue");
}

DensityMatrix DensityMatrix::trusted(CMatrix matrix, int p, int q) {
  check_split(matrix.dim(), p, q);
  return DensityMatrix(Trusted{}, std::move(matrix), p, q);
}

DensityMatrix DensityMatrix::with_split(int p, int q) const {
  check_split(dim(), p, q);
  return DensityMatrix(Trusted{}, m_, p, q);
}

DensityMatrix density_of_graph(const Graph& g) {
  if (g.edge_count() == 0)
    fail(ErrorKind::EmptyGraph, "density of a graph needs at least one edge");
  const IntMatrix l = laplacian(g);
  CMatrix m = CMatrix::from_int(l).scaled(1.0 / (2.0 * g.edge_count()));
  return DensityMatrix::trusted(std::move(m), g.p(), g.q());
}

std::vector<double> circulant_eigenvalues(const CirculantSpec& spec) {
  const int n = static_cast<int>(spec.first_row.size());
  std::vector<double> lambda(n);
  for (int j = 0; j < n; ++j) {
    cplx s = 0.0;
    for (int d = 0; d < n; ++d) {
      const long long e = (static_cast<long long>(j) * d) % n;
      s += spec.first_row[d] *
           std::polar(1.0, -2.0 * std::numbers::pi * e / n);
    }
    lambda[j] = s.real();
  }
  return lambda;
}

DensityMatrix circulant_density(const CirculantSpec& spec, int p, int q) {
  const int n = static_cast<int>(spec.first_row.size());
  if (n < 1) fail(ErrorKind::DimensionMismatch, "empty first row");
  check_split(n, p, q);

  const auto& a = spec.first_row;
  if (std::abs(a[0].imag()) > kTraceTol)
    fail(ErrorKind::HermiticityViolation, "first entry must be real");
  for (int l = 1; l < n; ++l)  // a_{l+1} = conj(a_{n-l+1}), 0-based l vs n-l
    if (std::abs(a[l] - std::conj(a[n - l])) > kTraceTol)
      fail(ErrorKind::HermiticityViolation,
           "entry " + std::to_string(l + 1) + " is not the conjugate of entry " +
               std::to_string(n - l + 1));
  if (std::abs(static_cast<double>(n) * a[0].real() - 1.0) > kTraceTol)
    fail(ErrorKind::TraceViolation,
         "n * a_1 = " + std::to_string(n * a[0].real()));

  const auto lambda = circulant_eigenvalues(spec);
  const double lmax =
      std::max(1.0, std::abs(*std::max_element(
                        lambda.begin(), lambda.end(),
                        [](double x, double y) { return std::abs(x) < std::abs(y); })));
  for (double l : lambda)
    if (l < -kPsdTol * lmax)
      fail(ErrorKind::NotPSD, "DFT eigenvalue " + std::to_string(l));

  CMatrix m(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = a[((c - r) % n + n) % n];
  return DensityMatrix::trusted(std::move(m), p, q);
}

std::vector<double> z2n_eigenvalues(const GroupFunctionZ2n& f) {
  const int dim = 1 << f.n;
  std::vector<double> lambda(dim, 0.0);
  for (int s = 0; s < dim; ++s)
    for (int g = 0; g < dim; ++g)
      lambda[s] += (std::popcount(static_cast<unsigned>(s & g)) & 1)
                       ? -f.values[g]
                       : f.values[g];
  return lambda;
}

DensityMatrix group_density_z2n(const GroupFunctionZ2n& f) {
  return group_density_z2n(f, f.n / 2, f.n - f.n / 2);
}

DensityMatrix group_density_z2n(const GroupFunctionZ2n& f, int k, int l) {
  if (f.n < 1 || static_cast<int>(f.values.size()) != (1 << f.n))
    fail(ErrorKind::DimensionMismatch, "values must have length 2^n");
  if (k < 0 || l < 0 || k + l != f.n)
    fail(ErrorKind::DimensionMismatch, "split must satisfy k + l = n");
  const int dim = 1 << f.n;
  if (std::abs(dim * f.values[0] - 1.0) > kTraceTol)
    fail(ErrorKind::TraceViolation,
         "2^n * f(identity) = " + std::to_string(dim * f.values[0]));
  const auto lambda = z2n_eigenvalues(f);
  double lmax = 1.0;
  for (double x : lambda) lmax = std::max(lmax, std::abs(x));
  for (double x : lambda)
    if (x < -kPsdTol * lmax)
      fail(ErrorKind::NotPSD, "character eigenvalue " + std::to_string(x));

  CMatrix m(dim);
  for (int x = 0; x < dim; ++x)
    for (int y = 0; y < dim; ++y) m(x, y) = f.values[x ^ y];
  return DensityMatrix::trusted(std::move(m), 1 << k, 1 << l);
}

DegreeConditionGeneral degree_condition_general(const DensityMatrix& rho) {
  DegreeConditionGeneral result;
  const CMatrix pt = partial_transpose(rho.matrix(), rho.p(), rho.q());
  const CMatrix d = row_sum_diagonal(rho.matrix());
  const CMatrix dpt = row_sum_diagonal(pt);
  result.delta.resize(rho.dim());
  result.delta_pt.resize(rho.dim());
  double worst = 0.0;
  for (int i = 0; i < rho.dim(); ++i) {
    result.delta[i] = d(i, i);
    result.delta_pt[i] = dpt(i, i);
    worst = std::max(worst, std::abs(result.delta[i] - result.delta_pt[i]));
  }
  result.holds = worst <= kDegreeTol;
  return result;
}

DensityMatrix complement_density(const DensityMatrix& rho) {
  const int n = rho.dim();
  if (n < 2)
    fail(ErrorKind::DimensionNotSupported, "complement needs dimension >= 2");
  CMatrix m = (CMatrix::identity(n) - rho.matrix()).scaled(1.0 / (n - 1));
  return DensityMatrix::trusted(std::move(m), rho.p(), rho.q());
}

}  // namespace graphdm
