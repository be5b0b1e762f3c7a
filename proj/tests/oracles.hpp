#pragma once

// Brute-force reference computations for the property suites. Nothing here
// calls into the library algorithms being checked.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qpsgraph/graph.hpp"
#include "qpsgraph/integer_matrix.hpp"

namespace oracle {

using qpsgraph::BigInt;
using qpsgraph::Graph;
using qpsgraph::IntegerMatrix;
using qpsgraph::VertexIndex;

inline BigInt big_abs(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

inline BigInt big_gcd(BigInt a, BigInt b) {
  a = big_abs(a);
  b = big_abs(b);
  while (b != 0) {
    BigInt t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Laplace expansion along the first row.
inline BigInt laplace_det(const std::vector<std::vector<BigInt>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  BigInt total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c] == 0) continue;
    std::vector<std::vector<BigInt>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<BigInt> row;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != c) row.push_back(m[r][k]);
      }
      minor.push_back(std::move(row));
    }
    const BigInt term = m[0][c] * laplace_det(minor);
    total += (c % 2 == 0) ? term : BigInt(-term);
  }
  return total;
}

inline void combinations(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = i;
  if (k > n) return;
  while (true) {
    out.push_back(pick);
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
}

// Determinantal divisors D_k = gcd of all k x k minors, k = 1..min(r, c).
inline std::vector<BigInt> determinantal_divisors(const IntegerMatrix& m) {
  std::vector<BigInt> out;
  const std::size_t kmax = std::min(m.rows(), m.cols());
  for (std::size_t k = 1; k <= kmax; ++k) {
    std::vector<std::vector<std::size_t>> rows;
    std::vector<std::vector<std::size_t>> cols;
    combinations(m.rows(), k, rows);
    combinations(m.cols(), k, cols);
    BigInt g = 0;
    for (const auto& rs : rows) {
      for (const auto& cs : cols) {
        std::vector<std::vector<BigInt>> sub(k, std::vector<BigInt>(k));
        for (std::size_t i = 0; i < k; ++i) {
          for (std::size_t j = 0; j < k; ++j) sub[i][j] = m(rs[i], cs[j]);
        }
        g = big_gcd(g, laplace_det(sub));
      }
    }
    out.push_back(g);
  }
  return out;
}

// Invariant factors from determinantal divisors; zeros past the rank.
inline std::vector<BigInt> invariant_factors(const IntegerMatrix& m) {
  const auto d = determinantal_divisors(m);
  std::vector<BigInt> out;
  BigInt prev = 1;
  for (const auto& dk : d) {
    if (dk == 0) {
      out.push_back(0);
      prev = 0;
      continue;
    }
    out.push_back(dk / prev);
    prev = dk;
  }
  return out;
}

// Size of the image of (Z/p)^c -> (Z/p)^r under m, by enumerating every input.
inline std::size_t image_size_mod_p(const IntegerMatrix& m, int p) {
  std::set<std::vector<int>> images;
  std::vector<int> x(m.cols(), 0);
  std::vector<std::vector<int>> mm(m.rows(), std::vector<int>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const int v = static_cast<int>(m(i, j) % p);
      mm[i][j] = (v + p) % p;
    }
  }
  while (true) {
    std::vector<int> y(m.rows(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      int acc = 0;
      for (std::size_t j = 0; j < m.cols(); ++j) acc += mm[i][j] * x[j];
      y[i] = acc % p;
    }
    images.insert(y);
    std::size_t k = 0;
    while (k < x.size() && ++x[k] == p) x[k++] = 0;
    if (k == x.size()) break;
  }
  return images.size();
}

inline IntegerMatrix random_matrix(std::mt19937& rng, std::size_t max_dim, int bound) {
  std::uniform_int_distribution<std::size_t> dim(1, max_dim);
  std::uniform_int_distribution<int> entry(-bound, bound);
  IntegerMatrix m(dim(rng), dim(rng));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = entry(rng);
  }
  return m;
}

// Random graph on up to max_vertices vertices named x0, x1, ...; classes
// carry multiplicity 1, 2 or infinity.
inline Graph random_graph(std::mt19937& rng, std::size_t max_vertices, double density) {
  std::uniform_int_distribution<std::size_t> count(1, max_vertices);
  std::bernoulli_distribution has_edge(density);
  std::uniform_int_distribution<int> kind(0, 5);
  const std::size_t n = count(rng);
  std::vector<qpsgraph::VertexId> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
  std::vector<qpsgraph::EdgeSpec> edges;
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = 0; t < n; ++t) {
      if (!has_edge(rng)) continue;
      const int k = kind(rng);
      const auto mult = k == 0 ? qpsgraph::Multiplicity::infinite()
                               : qpsgraph::Multiplicity(k <= 3 ? 1 : 2);
      edges.push_back({names[s], names[t], mult});
    }
  }
  return qpsgraph::build_graph(names, edges);
}

using Mask = std::uint32_t;

inline bool mask_has(Mask m, std::size_t i) { return (m >> i) & 1U; }

// Directly from the edge list: every edge out of H lands in H.
inline bool hereditary(const Graph& g, Mask h) {
  for (const auto& e : g.edges()) {
    if (mask_has(h, e.source) && !mask_has(h, e.target)) return false;
  }
  return true;
}

// Regular vertices (finite, nonzero emission) emitting only into H are in H.
inline bool saturated(const Graph& g, Mask h) {
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (mask_has(h, v)) continue;
    bool any = false;
    bool infinite = false;
    bool all_in = true;
    for (const auto& e : g.edges()) {
      if (e.source != v) continue;
      any = true;
      infinite = infinite || e.multiplicity.is_infinite();
      all_in = all_in && mask_has(h, e.target);
    }
    if (any && !infinite && all_in) return false;
  }
  return true;
}

inline std::vector<Mask> all_hereditary_saturated(const Graph& g) {
  std::vector<Mask> out;
  const Mask limit = Mask{1} << g.vertex_count();
  for (Mask h = 0; h < limit; ++h) {
    if (hereditary(g, h) && saturated(g, h)) out.push_back(h);
  }
  return out;
}

// Least hereditary saturated superset, by scanning all of them.
inline Mask least_closed_superset(const Graph& g, Mask h) {
  Mask best = (Mask{1} << g.vertex_count()) - 1;
  for (Mask c : all_hereditary_saturated(g)) {
    if ((c & h) == h && __builtin_popcount(c) < __builtin_popcount(best)) best = c;
  }
  return best;
}

template <class Set>
Mask to_mask(const Set& s) {
  Mask m = 0;
  for (auto v : s) m |= Mask{1} << v;
  return m;
}

}  // namespace oracle
