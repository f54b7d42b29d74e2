#include <doctest.h>

#include <cmath>

#include "graphdm/density.hpp"
#include "support.hpp"

using namespace graphdm;
using L = VertexLabel;

namespace {

Graph cris_cross() {
  return Graph::from_labels(2, 2, {{L{1, 1}, L{2, 2}}, {L{1, 2}, L{2, 1}}});
}

}  // namespace

TEST_CASE("density of a graph") {
  const Graph k2 = Graph::from_labels(1, 2, {{L{1, 1}, L{1, 2}}});
  const DensityMatrix rho = density_of_graph(k2);
  CHECK(rho.matrix()(0, 0) == cplx{0.5});
  CHECK(rho.matrix()(0, 1) == cplx{-0.5});
  CHECK(std::abs(rho.matrix().trace() - cplx{1.0}) < 1e-15);

  const DensityMatrix rcc = density_of_graph(cris_cross());
  for (int i = 0; i < 4; ++i) CHECK(rcc.matrix()(i, i) == cplx{0.25});
  CHECK(rcc.matrix()(0, 3) == cplx{-0.25});

  CHECK_THROWS_AS(density_of_graph(Graph(2, 2, {})), Error);
}

TEST_CASE("circulant density validation and values") {
  // maximally mixed
  const DensityMatrix mixed =
      circulant_density(CirculantSpec{{0.25, 0.0, 0.0, 0.0}}, 2, 2);
  CHECK(max_abs_diff(mixed.matrix(), CMatrix::identity(4).scaled(0.25)) == 0.0);

  // valid spec with a zero eigenvalue
  const CirculantSpec spec{{0.25, 0.125, 0.0, 0.125}};
  const auto lambda = circulant_eigenvalues(spec);
  CHECK(lambda[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(lambda[1] == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(lambda[2] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(lambda[3] == doctest::Approx(0.25).epsilon(1e-14));
  const DensityMatrix rho = circulant_density(spec, 2, 2);
  CHECK(rho.matrix()(1, 0) == cplx{0.125});  // row 1 = row 0 shifted right

  auto thrown_kind = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::ParseError;  // sentinel: nothing thrown
  };
  // hermiticity violated: a_2 != conj(a_4)
  CHECK(thrown_kind([] {
          (void)circulant_density(CirculantSpec{{0.25, 0.25, 0.0, 0.0}}, 2, 2);
        }) == ErrorKind::HermiticityViolation);
  // trace violated
  CHECK(thrown_kind([] {
          (void)circulant_density(CirculantSpec{{0.5, 0.0, 0.0, 0.0}}, 2, 2);
        }) == ErrorKind::TraceViolation);
  // negative DFT eigenvalue
  CHECK(thrown_kind([] {
          (void)circulant_density(CirculantSpec{{0.25, 0.25, 0.0, 0.25}}, 2, 2);
        }) == ErrorKind::NotPSD);
}

TEST_CASE("circulant block-conjugate structure and real row sums") {
  for (int n : {4, 6, 8, 9}) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const CirculantSpec spec = testsupport::random_circulant_spec(n, seed);
      for (int p = 1; p <= n; ++p) {
        if (n % p != 0) continue;
        const int q = n / p;
        const DensityMatrix rho = circulant_density(spec, p, q);
        // first block-row: A_{1,m+1} = A_{1,p-m+1}^dagger
        for (int m = 1; m < p; ++m) {
          for (int a = 0; a < q; ++a)
            for (int b = 0; b < q; ++b) {
              const cplx lhs = rho.matrix()(a, m * q + b);
              const cplx rhs =
                  std::conj(rho.matrix()(b, (p - m) * q + a));
              CHECK(std::abs(lhs - rhs) < 1e-14);
            }
        }
        const auto dc = degree_condition_general(rho);
        CHECK(dc.holds);
        for (const cplx& d : dc.delta) CHECK(std::abs(d.imag()) <= 1e-12);
      }
    }
  }
}

TEST_CASE("z2n group densities") {
  const DensityMatrix mixed =
      group_density_z2n(GroupFunctionZ2n{2, {0.25, 0.0, 0.0, 0.0}});
  CHECK(max_abs_diff(mixed.matrix(), CMatrix::identity(4).scaled(0.25)) == 0.0);

  const GroupFunctionZ2n f{2, {0.25, 0.25, 0.0, 0.0}};
  const auto lambda = z2n_eigenvalues(f);
  CHECK(lambda == std::vector<double>{0.5, 0.0, 0.5, 0.0});
  const DensityMatrix rho = group_density_z2n(f);
  CHECK(rho.matrix()(0, 1) == cplx{0.25});
  CHECK(rho.matrix()(2, 3) == cplx{0.25});
  CHECK(rho.matrix()(0, 2) == cplx{});

  try {
    (void)group_density_z2n(GroupFunctionZ2n{2, {0.0, 0.25, 0.25, 0.0}});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TraceViolation);
  }
}

TEST_CASE("sigma(g) sigma(h) = sigma(g xor h)") {
  const int dim = 4;
  auto sigma = [&](int g) {
    CMatrix m(dim);
    for (int x = 0; x < dim; ++x) m(x ^ g, x) = 1.0;
    return m;
  };
  for (int g = 0; g < dim; ++g)
    for (int h = 0; h < dim; ++h)
      CHECK(max_abs_diff(sigma(g) * sigma(h), sigma(g ^ h)) == 0.0);
}

TEST_CASE("z2n densities are diagonalized by the sylvester hadamard") {
  for (int n : {2, 3}) {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
      const GroupFunctionZ2n f = testsupport::random_z2n_function(n, seed);
      const DensityMatrix rho = group_density_z2n(f);
      const CMatrix h = hadamard_sylvester(n);
      const CMatrix diag = h * rho.matrix() * h;
      for (int r = 0; r < rho.dim(); ++r)
        for (int c = 0; c < rho.dim(); ++c)
          if (r != c) CHECK(std::abs(diag(r, c)) <= 1e-12);
    }
  }
}

TEST_CASE("general degree condition") {
  const DensityMatrix mixed = DensityMatrix(CMatrix::identity(4).scaled(0.25), 2, 2);
  CHECK(degree_condition_general(mixed).holds);

  const Graph single = Graph::from_labels(2, 2, {{L{1, 1}, L{2, 2}}});
  const auto dc = degree_condition_general(density_of_graph(single));
  CHECK_FALSE(dc.holds);
  for (const cplx& d : dc.delta) CHECK(std::abs(d) < 1e-15);
  // row sums of the partial transpose: (Delta(G) - Delta(G^Gamma)) / 2|E|
  CHECK(std::abs(dc.delta_pt[0] - cplx{0.5}) < 1e-15);
  CHECK(std::abs(dc.delta_pt[1] - cplx{-0.5}) < 1e-15);
  CHECK(std::abs(dc.delta_pt[2] - cplx{-0.5}) < 1e-15);
  CHECK(std::abs(dc.delta_pt[3] - cplx{0.5}) < 1e-15);
}

TEST_CASE("graph and general degree conditions agree, exhaustively") {
  for (const auto [p, q] : {std::pair{2, 2}, std::pair{2, 3}}) {
    std::vector<Edge> pairs;
    for (int u = 0; u < p * q; ++u)
      for (int v = u + 1; v < p * q; ++v) pairs.emplace_back(u, v);
    long long mismatches = 0;
    for (long long mask = 1; mask < (1ll << pairs.size()); ++mask) {
      std::vector<Edge> edges;
      for (std::size_t t = 0; t < pairs.size(); ++t)
        if (mask & (1ll << t)) edges.push_back(pairs[t]);
      const Graph g(p, q, edges);
      const bool graph_level =
          degree_matrix(g) == degree_matrix(partial_transpose(g));
      const auto general = degree_condition_general(density_of_graph(g));
      if (general.holds != graph_level) ++mismatches;
      // Delta(rho(G)) vanishes: laplacian rows sum to zero
      for (const cplx& d : general.delta)
        if (std::abs(d) > 1e-15) ++mismatches;
    }
    CHECK(mismatches == 0);
  }
}

TEST_CASE("validated density constructor rejects bad input") {
  CMatrix bad = CMatrix::identity(4).scaled(0.25);
  bad(0, 1) = 0.5;  // not hermitian
  CHECK_THROWS_AS(DensityMatrix(bad, 2, 2), Error);

  CHECK_THROWS_AS(DensityMatrix(CMatrix::identity(4), 2, 2), Error);  // trace 4

  CMatrix neg = CMatrix::identity(2).scaled(1.0);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix(neg, 1, 2), Error);  // negative eigenvalue
}

TEST_CASE("complement density is normalized") {
  const DensityMatrix rho = density_of_graph(cris_cross());
  const DensityMatrix comp = complement_density(rho);
  CHECK(std::abs(comp.matrix().trace() - cplx{1.0}) < 1e-14);
}
