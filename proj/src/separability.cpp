#include "graphdm/separability.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <string>

namespace graphdm {

namespace {

constexpr double kWeightTol = 1e-12;
constexpr double kUnitTol = 1e-12;
constexpr double kDropTol = 1e-12;
constexpr double kBuilderTol = 1e-10;

double norm2(const std::vector<cplx>& v) {
  double s = 0.0;
  for (const cplx& z : v) s += std::norm(z);
  return std::sqrt(s);
}

std::vector<cplx> basis_vector(int dim, int index) {
  std::vector<cplx> v(dim, cplx{});
  v[index] = 1.0;
  return v;
}

// (e_i - e_j) / sqrt(2)
std::vector<cplx> difference_vector(int dim, int i, int j) {
  std::vector<cplx> v(dim, cplx{});
  v[i] = 1.0 / std::numbers::sqrt2;
  v[j] = -1.0 / std::numbers::sqrt2;
  return v;
}

Certificate degree_certificate(const DegreeConditionGraph& dc) {
  Certificate cert;
  cert.kind = Certificate::Kind::DegreeViolation;
  cert.diff = dc.diff;
  for (int i = 0; i < static_cast<int>(dc.diff.size()); ++i)
    if (dc.diff[i] != 0) cert.vertices.push_back(i);
  return cert;
}

void verify_or_throw(const Decomposition& d, const DensityMatrix& rho,
                     const char* builder) {
  const VerifyReport report = verify_decomposition(d, rho, kBuilderTol);
  if (!report.ok)
    fail(ErrorKind::ReconstructionFailure,
         std::string(builder) + " produced reconstruction error " +
             std::to_string(report.reconstruction_error));
}

// Cycle terms of a perfect entangling matching supported on the two B
// columns col1/col2 (1-based): term l has the A-side vector running through
// the cycle with phases exp(2*pi*i*(m-1)*l/L) and the B-side vector
// (|col1> - exp(-2*pi*i*l/L)|col2>)/sqrt(2).
void append_cycle_terms(const std::vector<int>& cycle, int col1, int col2,
                        int p, int q, double weight_per_term,
                        std::vector<ProductTerm>& out) {
  const int length = static_cast<int>(cycle.size());
  for (int l = 0; l < length; ++l) {
    ProductTerm term;
    term.weight = weight_per_term;
    term.a.assign(p, cplx{});
    const double amp = 1.0 / std::sqrt(static_cast<double>(length));
    for (int m = 0; m < length; ++m)
      term.a[cycle[m] - 1] =
          std::polar(amp, 2.0 * std::numbers::pi * ((m * l) % length) / length);
    term.b.assign(q, cplx{});
    term.b[col1 - 1] = 1.0 / std::numbers::sqrt2;
    term.b[col2 - 1] =
        -std::polar(1.0 / std::numbers::sqrt2,
                    -2.0 * std::numbers::pi * (l % length) / length);
    out.push_back(std::move(term));
  }
}

// A-label permutation cycles of a set of entangled edges joining the two
// columns col1 < col2. Fails with `kind` unless the map is a permutation of
// a common label set.
std::vector<std::vector<int>> permutation_cycles(
    const Graph& g, const std::vector<Edge>& edges, int col1, int col2,
    ErrorKind kind) {
  std::map<int, int> pi;
  for (const auto& [u, v] : edges) {
    VertexLabel x = g.label_of(u), y = g.label_of(v);
    if (x.b == col2) std::swap(x, y);
    if (x.b != col1 || y.b != col2 || pi.count(x.a))
      fail(kind, "entangled edges do not join columns " +
                     std::to_string(col1) + " and " + std::to_string(col2) +
                     " bijectively");
    pi[x.a] = y.a;
  }
  std::set<int> domain, codomain;
  for (const auto& [from, to] : pi) {
    domain.insert(from);
    codomain.insert(to);
  }
  if (domain != codomain)
    fail(kind, "entangled edges do not close into cycles");

  std::vector<std::vector<int>> cycles;
  std::set<int> visited;
  for (const auto& [start, unused] : pi) {
    if (visited.count(start)) continue;
    std::vector<int> cycle;
    int cur = start;
    do {
      cycle.push_back(cur);
      visited.insert(cur);
      cur = pi[cur];
    } while (cur != start);
    cycles.push_back(std::move(cycle));
  }
  return cycles;
}

}  // namespace

CMatrix Decomposition::reconstruct() const {
  const int n = p * q;
  CMatrix m(n);
  for (const ProductTerm& t : terms) {
    std::vector<cplx> v(n);
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < q; ++j) v[i * q + j] = t.a[i] * t.b[j];
    for (int r = 0; r < n; ++r) {
      if (v[r] == cplx{}) continue;
      const cplx wr = t.weight * v[r];
      for (int c = 0; c < n; ++c) m(r, c) += wr * std::conj(v[c]);
    }
  }
  return m;
}

VerifyReport verify_decomposition(const Decomposition& d,
                                  const DensityMatrix& rho, double tol) {
  if (d.p != rho.p() || d.q != rho.q())
    fail(ErrorKind::DimensionMismatch,
         "decomposition split does not match the density matrix");
  VerifyReport report;
  report.reconstruction_error = max_abs_diff(d.reconstruct(), rho.matrix());

  bool shape_ok = true;
  double weight_sum = 0.0;
  for (const ProductTerm& t : d.terms) {
    if (t.weight <= 0.0) shape_ok = false;
    if (static_cast<int>(t.a.size()) != d.p ||
        static_cast<int>(t.b.size()) != d.q)
      shape_ok = false;
    else if (std::abs(norm2(t.a) - 1.0) > kUnitTol ||
             std::abs(norm2(t.b) - 1.0) > kUnitTol)
      shape_ok = false;
    weight_sum += t.weight;
  }
  report.ok = shape_ok && std::abs(weight_sum - 1.0) <= kWeightTol &&
              report.reconstruction_error <= tol;
  return report;
}

DegreeConditionGraph degree_condition_graph(const Graph& g) {
  DegreeConditionGraph result;
  const auto d = g.degrees();
  const auto dpt = partial_transpose(g).degrees();
  result.diff.resize(d.size());
  result.holds = true;
  for (std::size_t i = 0; i < d.size(); ++i) {
    result.diff[i] = static_cast<std::int64_t>(d[i]) - dpt[i];
    if (result.diff[i] != 0) result.holds = false;
  }
  return result;
}

PptResult ppt_test(const DensityMatrix& rho, double tol) {
  const CMatrix pt = partial_transpose(rho.matrix(), rho.p(), rho.q());
  const EigenSystem es = hermitian_eigen(pt);
  PptResult result;
  result.min_eigenvalue = es.values.front();
  result.ppt =
      result.min_eigenvalue >= -tol * std::max(1.0, pt.inf_norm());
  if (!result.ppt) {
    result.witness.resize(pt.dim());
    for (int r = 0; r < pt.dim(); ++r) result.witness[r] = es.vectors(r, 0);
  }
  return result;
}

Verdict decide_low_dim(const DensityMatrix& rho) {
  if (rho.dim() > 6)
    fail(ErrorKind::DimensionNotSupported,
         "PPT decides separability only for p*q <= 6, got " +
             std::to_string(rho.dim()));
  Verdict verdict;
  verdict.degree_condition = degree_condition_general(rho).holds;
  const PptResult ppt = ppt_test(rho);
  verdict.ppt = ppt.ppt;
  if (ppt.ppt) {
    verdict.decision = Decision::Separable;
  } else {
    verdict.decision = Decision::Entangled;
    Certificate cert;
    cert.kind = Certificate::Kind::NegativeEigenvalue;
    cert.eigenvalue = ppt.min_eigenvalue;
    cert.eigenvector = ppt.witness;
    verdict.certificate = std::move(cert);
  }
  return verdict;
}

DecomposeResult decompose_nearest_point(const Graph& g) {
  if (!is_nearest_point_graph(g))
    fail(ErrorKind::NotNearestPoint,
         "an edge joins lattice points farther than sqrt(2) apart");
  if (g.edge_count() == 0)
    fail(ErrorKind::EmptyGraph, "nothing to decompose");

  DecomposeResult result;
  const DegreeConditionGraph dc = degree_condition_graph(g);
  if (!dc.holds) {
    result.certificate = degree_certificate(dc);
    return result;
  }

  const int m = g.edge_count();
  Decomposition d;
  d.p = g.p();
  d.q = g.q();

  std::set<Edge> remaining_entangled;
  for (const Edge& e : g.edges()) {
    const VertexLabel x = g.label_of(e.first), y = g.label_of(e.second);
    if (!is_entangled_edge(x, y)) {
      ProductTerm term;
      term.weight = 1.0 / m;
      if (x.a == y.a) {  // same row
        term.a = basis_vector(g.p(), x.a - 1);
        term.b = difference_vector(g.q(), x.b - 1, y.b - 1);
      } else {  // same column
        term.a = difference_vector(g.p(), x.a - 1, y.a - 1);
        term.b = basis_vector(g.q(), x.b - 1);
      }
      d.terms.push_back(std::move(term));
    } else {
      remaining_entangled.insert(e);
    }
  }

  // Entangled edges pair with their opposite diagonal {(i,j'),(i',j)}; the
  // degree condition forces the partner to exist.
  while (!remaining_entangled.empty()) {
    const Edge e = *remaining_entangled.begin();
    remaining_entangled.erase(remaining_entangled.begin());
    const VertexLabel x = g.label_of(e.first), y = g.label_of(e.second);
    Edge partner{g.index_of({x.a, y.b}), g.index_of({y.a, x.b})};
    if (partner.first > partner.second)
      std::swap(partner.first, partner.second);
    if (!remaining_entangled.erase(partner))
      fail(ErrorKind::PairingFailure,
           "entangled edge {(" + std::to_string(x.a) + "," +
               std::to_string(x.b) + "),(" + std::to_string(y.a) + "," +
               std::to_string(y.b) +
               ")} lacks its opposite diagonal despite the degree condition");

    const double amp = 1.0 / std::numbers::sqrt2;
    for (int sign : {+1, -1}) {
      ProductTerm term;
      term.weight = 1.0 / m;
      term.a.assign(g.p(), cplx{});
      term.a[x.a - 1] = amp;
      term.a[y.a - 1] = sign * amp;
      term.b.assign(g.q(), cplx{});
      term.b[x.b - 1] = amp;
      term.b[y.b - 1] = -sign * amp;
      d.terms.push_back(std::move(term));
    }
  }

  verify_or_throw(d, density_of_graph(g), "decompose_nearest_point");
  result.decomposition = std::move(d);
  return result;
}

DecomposeResult decompose_perfect_matching(const Graph& g) {
  const auto degrees = g.degrees();
  if (std::any_of(degrees.begin(), degrees.end(),
                  [](int d) { return d != 1; }))
    fail(ErrorKind::NotPerfectMatching,
         "every vertex must have degree exactly 1");
  if (g.q() != 2)
    fail(ErrorKind::WrongQ, "q = " + std::to_string(g.q()) + ", expected 2");

  DecomposeResult result;
  const DegreeConditionGraph dc = degree_condition_graph(g);
  if (!dc.holds) {
    result.certificate = degree_certificate(dc);
    return result;
  }

  const int m = g.edge_count();  // = p
  Decomposition d;
  d.p = g.p();
  d.q = 2;

  std::vector<Edge> entangled;
  for (const Edge& e : g.edges()) {
    const VertexLabel x = g.label_of(e.first), y = g.label_of(e.second);
    if (is_entangled_edge(x, y)) {
      entangled.push_back(e);
      continue;
    }
    ProductTerm term;
    term.weight = 1.0 / m;
    if (x.a == y.a) {  // vertical {(i,1),(i,2)}
      term.a = basis_vector(g.p(), x.a - 1);
      term.b = difference_vector(2, x.b - 1, y.b - 1);
    } else {  // horizontal within one column
      term.a = difference_vector(g.p(), x.a - 1, y.a - 1);
      term.b = basis_vector(2, x.b - 1);
    }
    d.terms.push_back(std::move(term));
  }

  const auto cycles =
      permutation_cycles(g, entangled, 1, 2, ErrorKind::PairingFailure);
  for (const auto& cycle : cycles)
    append_cycle_terms(cycle, 1, 2, g.p(), 2, 1.0 / m, d.terms);

  verify_or_throw(d, density_of_graph(g), "decompose_perfect_matching");
  result.decomposition = std::move(d);
  return result;
}

Canonicalization canonicalize_entangling_matching(const Graph& g) {
  if (g.q() != 2) fail(ErrorKind::WrongQ, "expected q = 2");
  const auto degrees = g.degrees();
  if (std::any_of(degrees.begin(), degrees.end(),
                  [](int d) { return d != 1; }))
    fail(ErrorKind::NotPerfectEntanglingMatching, "not a perfect matching");
  for (const Edge& e : g.edges())
    if (!is_entangled_edge(g, e))
      fail(ErrorKind::NotPerfectEntanglingMatching,
           "contains an unentangled edge");

  Canonicalization canon;
  canon.cycles = permutation_cycles(g, g.edges(), 1, 2,
                                    ErrorKind::NotPerfectEntanglingMatching);
  canon.image.resize(g.p());
  for (int a = 1; a <= g.p(); ++a) canon.image[a - 1] = a;
  for (const auto& cycle : canon.cycles) {
    std::vector<int> sorted = cycle;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t m = 0; m < cycle.size(); ++m)
      canon.image[cycle[m] - 1] = sorted[m];
  }
  return canon;
}

Graph apply_a_label_permutation(const Graph& g, const std::vector<int>& image) {
  if (static_cast<int>(image.size()) != g.p())
    fail(ErrorKind::DimensionMismatch, "permutation must cover 1..p");
  std::vector<std::pair<VertexLabel, VertexLabel>> edges;
  edges.reserve(g.edges().size());
  for (const Edge& e : g.edges()) {
    VertexLabel x = g.label_of(e.first), y = g.label_of(e.second);
    x.a = image[x.a - 1];
    y.a = image[y.a - 1];
    edges.emplace_back(x, y);
  }
  return Graph::from_labels(g.p(), g.q(), edges);
}

Decomposition decompose_block_matching(const Graph& g) {
  const auto degrees = g.degrees();
  if (std::any_of(degrees.begin(), degrees.end(),
                  [](int d) { return d != 1; }))
    fail(ErrorKind::NotPerfectMatching, "not a perfect matching");
  if (g.q() % 2 != 0)
    fail(ErrorKind::NotBlockStructured, "q must be even");

  // Bucket edges by their column pair; all must be entangled.
  std::map<std::pair<int, int>, std::vector<Edge>> buckets;
  for (const Edge& e : g.edges()) {
    const VertexLabel x = g.label_of(e.first), y = g.label_of(e.second);
    if (!is_entangled_edge(x, y))
      fail(ErrorKind::NotBlockStructured,
           "contains an unentangled edge");
    buckets[{std::min(x.b, y.b), std::max(x.b, y.b)}].push_back(e);
  }

  const int r = g.q() / 2;
  if (static_cast<int>(buckets.size()) != r)
    fail(ErrorKind::NotBlockStructured,
         "edges span " + std::to_string(buckets.size()) +
             " column pairs, expected " + std::to_string(r));
  std::set<int> columns_seen;
  for (const auto& [pair, edges] : buckets) {
    columns_seen.insert(pair.first);
    columns_seen.insert(pair.second);
    if (static_cast<int>(edges.size()) != g.p())
      fail(ErrorKind::NotBlockStructured,
           "column pair misses some A labels");
  }
  if (static_cast<int>(columns_seen.size()) != g.q())
    fail(ErrorKind::NotBlockStructured, "column pairs overlap");

  Decomposition d;
  d.p = g.p();
  d.q = g.q();
  const double weight = 1.0 / (static_cast<double>(r) * g.p());
  for (const auto& [pair, edges] : buckets) {
    const auto cycles = permutation_cycles(g, edges, pair.first, pair.second,
                                           ErrorKind::NotBlockStructured);
    for (const auto& cycle : cycles)
      append_cycle_terms(cycle, pair.first, pair.second, g.p(), g.q(), weight,
                         d.terms);
  }

  verify_or_throw(d, density_of_graph(g), "decompose_block_matching");
  return d;
}

Decomposition decompose_circulant(const CirculantSpec& spec, int p, int q) {
  const DensityMatrix rho = circulant_density(spec, p, q);
  const int n = rho.dim();
  const auto lambda = circulant_eigenvalues(spec);

  double kept_mass = 0.0;
  for (double l : lambda)
    if (l > kDropTol) kept_mass += l;
  if (kept_mass <= 0.0) fail(ErrorKind::NotPSD, "no positive eigenvalues");

  Decomposition d;
  d.p = p;
  d.q = q;
  for (int j = 0; j < n; ++j) {
    if (lambda[j] <= kDropTol) continue;
    ProductTerm term;
    term.weight = lambda[j] / kept_mass;
    term.a.resize(p);
    const double pa = 1.0 / std::sqrt(static_cast<double>(p));
    for (int a = 0; a < p; ++a)
      term.a[a] = std::polar(
          pa, -2.0 * std::numbers::pi *
                  ((static_cast<long long>(j) * a) % p) / p);
    term.b.resize(q);
    const double pb = 1.0 / std::sqrt(static_cast<double>(q));
    for (int b = 0; b < q; ++b)
      term.b[b] = std::polar(
          pb, -2.0 * std::numbers::pi *
                  ((static_cast<long long>(j) * b) % n) / n);
    d.terms.push_back(std::move(term));
  }

  verify_or_throw(d, rho, "decompose_circulant");
  return d;
}

Decomposition decompose_z2n(const GroupFunctionZ2n& f, int k, int l) {
  const DensityMatrix rho = group_density_z2n(f, k, l);
  const int dim = 1 << f.n;
  const auto lambda_all = z2n_eigenvalues(f);

  double kept_mass = 0.0;
  for (double x : lambda_all)
    if (x > kDropTol) kept_mass += x;
  if (kept_mass <= 0.0) fail(ErrorKind::NotPSD, "no positive eigenvalues");

  Decomposition d;
  d.p = 1 << k;
  d.q = 1 << l;
  const double pa = std::pow(2.0, -0.5 * k);
  const double pb = std::pow(2.0, -0.5 * l);
  for (int s = 0; s < dim; ++s) {
    if (lambda_all[s] <= kDropTol) continue;
    const int sa = s >> l;
    const int sb = s & ((1 << l) - 1);
    ProductTerm term;
    term.weight = lambda_all[s] / kept_mass;
    term.a.resize(d.p);
    for (int x = 0; x < d.p; ++x)
      term.a[x] =
          (std::popcount(static_cast<unsigned>(sa & x)) & 1) ? -pa : pa;
    term.b.resize(d.q);
    for (int x = 0; x < d.q; ++x)
      term.b[x] =
          (std::popcount(static_cast<unsigned>(sb & x)) & 1) ? -pb : pb;
    d.terms.push_back(std::move(term));
  }

  verify_or_throw(d, rho, "decompose_z2n");
  return d;
}

}  // namespace graphdm
