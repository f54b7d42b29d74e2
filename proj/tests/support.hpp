#ifndef GRAPHDM_TESTS_SUPPORT_HPP
#define GRAPHDM_TESTS_SUPPORT_HPP

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <vector>

#include "graphdm/density.hpp"
#include "graphdm/graph.hpp"
#include "graphdm/matrix.hpp"
#include "graphdm/rng.hpp"

namespace graphdm::testsupport {

inline CMatrix random_hermitian(int n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  CMatrix m(n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = 2.0 * rng.next_unit() - 1.0;
    for (int j = i + 1; j < n; ++j) {
      const cplx z{2.0 * rng.next_unit() - 1.0, 2.0 * rng.next_unit() - 1.0};
      m(i, j) = z;
      m(j, i) = std::conj(z);
    }
  }
  return m;
}

// Valid circulant spec built from sampled nonnegative DFT eigenvalues; a
// third of them are zeroed so rank-deficient cases are exercised.
inline CirculantSpec random_circulant_spec(int n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<double> lambda(n);
  double sum = 0.0;
  for (double& l : lambda) {
    l = rng.next_unit() < 0.3 ? 0.0 : rng.next_unit();
    sum += l;
  }
  if (sum == 0.0) {
    lambda[0] = 1.0;
    sum = 1.0;
  }
  for (double& l : lambda) l /= sum;

  CirculantSpec spec;
  spec.first_row.resize(n);
  for (int d = 0; d < n; ++d) {
    cplx s = 0.0;
    for (int j = 0; j < n; ++j)
      s += lambda[j] * std::polar(1.0, 2.0 * std::numbers::pi *
                                           ((static_cast<long long>(j) * d) % n) / n);
    spec.first_row[d] = s / static_cast<double>(n);
  }
  spec.first_row[0] = cplx{spec.first_row[0].real(), 0.0};
  return spec;
}

inline GroupFunctionZ2n random_z2n_function(int n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  const int dim = 1 << n;
  std::vector<double> lambda(dim);
  double sum = 0.0;
  for (double& l : lambda) {
    l = rng.next_unit() < 0.3 ? 0.0 : rng.next_unit();
    sum += l;
  }
  if (sum == 0.0) {
    lambda[0] = 1.0;
    sum = 1.0;
  }
  for (double& l : lambda) l /= sum;

  GroupFunctionZ2n f;
  f.n = n;
  f.values.resize(dim, 0.0);
  for (int g = 0; g < dim; ++g) {
    double s = 0.0;
    for (int j = 0; j < dim; ++j)
      s += (std::popcount(static_cast<unsigned>(j & g)) & 1) ? -lambda[j]
                                                             : lambda[j];
    f.values[g] = s / dim;
  }
  return f;
}

// Uniform random permutation of 1..p via Fisher-Yates.
inline std::vector<int> random_permutation(int p, SplitMix64& rng) {
  std::vector<int> perm(p);
  for (int i = 0; i < p; ++i) perm[i] = i + 1;
  for (int i = p - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.next() % (i + 1));
    std::swap(perm[i], perm[j]);
  }
  return perm;
}

// Random member of the perfect entangling matchings on p x 2 (a derangement
// of the A labels), or nullopt-equivalent retry until one is found.
inline Graph random_entangling_matching(int p, std::uint64_t seed) {
  SplitMix64 rng(seed);
  while (true) {
    const std::vector<int> perm = random_permutation(p, rng);
    bool derangement = true;
    for (int i = 0; i < p; ++i)
      if (perm[i] == i + 1) derangement = false;
    if (!derangement) continue;
    std::vector<std::pair<VertexLabel, VertexLabel>> edges;
    for (int a = 1; a <= p; ++a)
      edges.push_back({VertexLabel{a, 1}, VertexLabel{perm[a - 1], 2}});
    return Graph::from_labels(p, 2, edges);
  }
}

// Random subset of the given candidate edges, each kept with probability
// 1/2; resamples until nonempty.
inline Graph random_subgraph(int p, int q, const std::vector<Edge>& candidates,
                             std::uint64_t seed) {
  SplitMix64 rng(seed);
  while (true) {
    std::vector<Edge> edges;
    for (const Edge& e : candidates)
      if (rng.next_bit()) edges.push_back(e);
    if (!edges.empty()) return Graph(p, q, std::move(edges));
  }
}

}  // namespace graphdm::testsupport

#endif
