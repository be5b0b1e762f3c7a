#include "qpsgraph/catalog.hpp"

#include <map>
#include <mutex>

#include "qpsgraph/errors.hpp"

namespace qpsgraph {
namespace {

void require_nonnegative(int n) {
  if (n < 0) throw PreconditionError("n must be nonnegative");
}

void require_positive(int n) {
  if (n < 1) throw PreconditionError("n must be at least 1");
}

GraphPtr cached(std::map<int, GraphPtr>& cache, int n, Graph (*make)(int)) {
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = share(make(n));
  return slot;
}

}  // namespace

std::string sphere_vertex(int i) { return "v" + std::to_string(i); }
std::string projective_vertex(int i) { return "w" + std::to_string(i); }

Graph sphere_graph(int n) {
  require_nonnegative(n);
  std::vector<VertexId> vertices;
  std::vector<EdgeSpec> edges;
  for (int i = 1; i <= n + 1; ++i) vertices.push_back(sphere_vertex(i));
  for (int i = 1; i <= n + 1; ++i) {
    for (int j = i; j <= n + 1; ++j) edges.push_back({sphere_vertex(i), sphere_vertex(j)});
  }
  return build_graph(std::move(vertices), edges);
}

Graph projective_graph(int n) {
  require_nonnegative(n);
  std::vector<VertexId> vertices;
  std::vector<EdgeSpec> edges;
  for (int i = 1; i <= n + 1; ++i) vertices.push_back(projective_vertex(i));
  for (int i = 1; i <= n + 1; ++i) {
    for (int j = i + 1; j <= n + 1; ++j) {
      edges.push_back({projective_vertex(i), projective_vertex(j), Multiplicity::infinite()});
    }
  }
  return build_graph(std::move(vertices), edges);
}

GraphPtr sphere_graph_ptr(int n) {
  require_nonnegative(n);
  static std::map<int, GraphPtr> cache;
  return cached(cache, n, &sphere_graph);
}

GraphPtr projective_graph_ptr(int n) {
  require_nonnegative(n);
  static std::map<int, GraphPtr> cache;
  return cached(cache, n, &projective_graph);
}

GeneratorMap quotient_map(int n) {
  require_positive(n);
  GeneratorMap q(projective_graph_ptr(n), projective_graph_ptr(n - 1));
  const auto& tgt = q.target();
  for (int i = 1; i <= n; ++i) {
    q.set_vertex(projective_vertex(i), Element::vertex(tgt, projective_vertex(i)));
  }
  q.set_vertex(projective_vertex(n + 1), Element(tgt));
  for (int i = 1; i <= n + 1; ++i) {
    for (int j = i + 1; j <= n + 1; ++j) {
      const auto wi = projective_vertex(i);
      const auto wj = projective_vertex(j);
      if (j == n + 1) {
        q.set_edge_zero(wi, wj);
      } else {
        q.set_uniform_edge(wi, wj, {{{wi, wj}, 1}});
      }
    }
  }
  return q;
}

GeneratorMap splitting_map(int n) {
  require_positive(n);
  GeneratorMap s(projective_graph_ptr(n - 1), projective_graph_ptr(n));
  const auto& tgt = s.target();
  for (int i = 1; i < n; ++i) {
    s.set_vertex(projective_vertex(i), Element::vertex(tgt, projective_vertex(i)));
  }
  s.set_vertex(projective_vertex(n), Element::vertex(tgt, projective_vertex(n)) +
                                         Element::vertex(tgt, projective_vertex(n + 1)));
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const auto wi = projective_vertex(i);
      const auto wj = projective_vertex(j);
      if (j == n) {
        s.set_uniform_edge(wi, wj, {{{wi, wj}, 1}, {{wi, projective_vertex(n + 1)}, 1}});
      } else {
        s.set_uniform_edge(wi, wj, {{{wi, wj}, 1}});
      }
    }
  }
  return s;
}

ExtensionData extension_data(int n) {
  return ExtensionData{n, projective_vertex(n + 1), quotient_map(n), splitting_map(n)};
}

Element matrix_unit_image(int n, const Path& alpha, const Path& beta) {
  require_nonnegative(n);
  const GraphPtr g = projective_graph_ptr(n);
  const VertexIndex sink = static_cast<VertexIndex>(n);
  if (alpha.range() != sink || beta.range() != sink) {
    throw PreconditionError("matrix units need paths ending at " + projective_vertex(n + 1));
  }
  return Element::monomial(g, Monomial{alpha, beta});
}

Element splitting_chain_image(int n, int k) {
  require_positive(n);
  if (k < 0 || k > n - 1) throw PreconditionError("k must lie in [0, n-1]");
  // P_{w_{n-k}} is the minimal projection at the sink of F_{n-k-1}.
  const VertexIndex sink = static_cast<VertexIndex>(n - k - 1);
  Element x = matrix_unit_image(n - k - 1, Path::empty(sink), Path::empty(sink));
  for (int m = n - k; m <= n; ++m) x = apply_map(splitting_map(m), x);
  return x;
}

Element vertex_projection_sum(int n, int from) {
  require_nonnegative(n);
  if (from < 1 || from > n + 2) throw PreconditionError("vertex index out of range");
  const GraphPtr g = projective_graph_ptr(n);
  Element sum(g);
  for (int i = from; i <= n + 1; ++i) sum = sum + Element::vertex(g, projective_vertex(i));
  return sum;
}

K0Class projection_class(int n, int l) {
  require_positive(n);
  if (l < 0 || l > n) throw PreconditionError("l must lie in [0, n]");
  std::vector<VertexId> vertices;
  for (int i = (l == 0 ? 1 : l + 1); i <= n + 1; ++i) vertices.push_back(projective_vertex(i));
  return class_in_k0(*projective_graph_ptr(n), vertices);
}

IntegerMatrix basis_change_matrix(int n) {
  require_positive(n);
  const K0Coordinates coords(*projective_graph_ptr(n));
  IntegerMatrix out(n + 1, n + 1);
  for (int l = 0; l <= n; ++l) {
    std::vector<VertexId> vertices;
    for (int i = (l == 0 ? 1 : l + 1); i <= n + 1; ++i) vertices.push_back(projective_vertex(i));
    const K0Class c = coords.class_of(vertices);
    if (c.free.size() != static_cast<std::size_t>(n + 1) || !c.torsion.empty()) {
      throw PreconditionError("unexpected K0 group shape");
    }
    for (int j = 0; j <= n; ++j) out(l, j) = c.free[j];
  }
  return out;
}

}  // namespace qpsgraph
