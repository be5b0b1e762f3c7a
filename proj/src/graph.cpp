#include "qpsgraph/graph.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "qpsgraph/errors.hpp"

namespace qpsgraph {

std::string Multiplicity::to_string() const {
  return infinite_ ? std::string("inf") : std::to_string(count_);
}

std::optional<VertexIndex> Graph::find(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

VertexIndex Graph::index_of(std::string_view name) const {
  if (auto v = find(name)) return *v;
  throw GraphError("unknown vertex '" + std::string(name) + "'");
}

const EdgeClass* Graph::edge(VertexIndex source, VertexIndex target) const {
  auto it = edge_slot_.find({source, target});
  return it == edge_slot_.end() ? nullptr : &edges_[it->second];
}

Multiplicity Graph::multiplicity(VertexIndex source, VertexIndex target) const {
  const EdgeClass* e = edge(source, target);
  return e ? e->multiplicity : Multiplicity(0);
}

std::vector<EdgeClass> Graph::out_edges(VertexIndex v) const {
  std::vector<EdgeClass> out;
  for (const auto& e : edges_) {
    if (e.source == v) out.push_back(e);
  }
  return out;
}

std::vector<EdgeClass> Graph::in_edges(VertexIndex v) const {
  std::vector<EdgeClass> in;
  for (const auto& e : edges_) {
    if (e.target == v) in.push_back(e);
  }
  return in;
}

Multiplicity Graph::out_multiplicity(VertexIndex v) const {
  Multiplicity total(0);
  for (const auto& e : edges_) {
    if (e.source == v) total = total + e.multiplicity;
  }
  return total;
}

bool is_valid_vertex_name(std::string_view name) {
  if (name.empty()) return false;
  return std::none_of(name.begin(), name.end(), [](unsigned char c) {
    return std::isspace(c) || std::iscntrl(c);
  });
}

Graph build_graph(std::vector<VertexId> vertices,
                  const std::vector<EdgeSpec>& edges) {
  Graph g;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const auto& name = vertices[i];
    if (!is_valid_vertex_name(name)) {
      throw GraphError("invalid vertex name '" + name + "'");
    }
    if (!g.index_.emplace(name, i).second) {
      throw GraphError("duplicate vertex '" + name + "'");
    }
  }
  g.vertices_ = std::move(vertices);

  std::map<std::pair<VertexIndex, VertexIndex>, Multiplicity> merged;
  for (const auto& spec : edges) {
    if (spec.multiplicity.is_zero()) {
      throw GraphError("zero multiplicity on edge " + spec.source + " -> " +
                       spec.target);
    }
    auto key = std::make_pair(g.index_of(spec.source), g.index_of(spec.target));
    auto [it, inserted] = merged.emplace(key, spec.multiplicity);
    if (!inserted) it->second = it->second + spec.multiplicity;
  }
  for (const auto& [key, mult] : merged) {
    g.edge_slot_.emplace(key, g.edges_.size());
    g.edges_.push_back(EdgeClass{key.first, key.second, mult});
  }
  return g;
}

std::vector<VertexIndex> regular_vertices(const Graph& graph) {
  std::vector<VertexIndex> out;
  for (VertexIndex v = 0; v < graph.vertex_count(); ++v) {
    auto m = graph.out_multiplicity(v);
    if (!m.is_infinite() && !m.is_zero()) out.push_back(v);
  }
  return out;
}

std::vector<VertexIndex> sinks(const Graph& graph) {
  std::vector<VertexIndex> out;
  for (VertexIndex v = 0; v < graph.vertex_count(); ++v) {
    if (graph.out_multiplicity(v).is_zero()) out.push_back(v);
  }
  return out;
}

std::vector<VertexIndex> infinite_emitters(const Graph& graph) {
  std::vector<VertexIndex> out;
  for (VertexIndex v = 0; v < graph.vertex_count(); ++v) {
    if (graph.out_multiplicity(v).is_infinite()) out.push_back(v);
  }
  return out;
}

bool is_row_finite(const Graph& graph) {
  return infinite_emitters(graph).empty();
}

namespace {

// Isomorphism-invariant summary of a vertex used to prune candidates.
struct VertexSignature {
  std::vector<Multiplicity> out;
  std::vector<Multiplicity> in;
  Multiplicity loop;

  bool operator==(const VertexSignature&) const = default;
};

std::vector<VertexSignature> signatures(const Graph& g) {
  std::vector<VertexSignature> sig(g.vertex_count());
  for (const auto& e : g.edges()) {
    if (e.source == e.target) {
      sig[e.source].loop = e.multiplicity;
      continue;
    }
    sig[e.source].out.push_back(e.multiplicity);
    sig[e.target].in.push_back(e.multiplicity);
  }
  for (auto& s : sig) {
    std::sort(s.out.begin(), s.out.end());
    std::sort(s.in.begin(), s.in.end());
  }
  return sig;
}

}  // namespace

std::optional<std::vector<VertexIndex>> graph_isomorphism(const Graph& first,
                                                          const Graph& second) {
  if (first.vertex_count() > kIsomorphismVertexLimit ||
      second.vertex_count() > kIsomorphismVertexLimit) {
    throw SizeLimitError("graph_isomorphism supports at most " +
                         std::to_string(kIsomorphismVertexLimit) +
                         " vertices");
  }
  const std::size_t n = first.vertex_count();
  if (n != second.vertex_count() || first.edges().size() != second.edges().size()) {
    return std::nullopt;
  }

  const auto sig1 = signatures(first);
  const auto sig2 = signatures(second);
  std::vector<VertexIndex> image(n);
  std::vector<bool> used(n, false);

  std::function<bool(VertexIndex)> extend = [&](VertexIndex v) -> bool {
    if (v == n) return true;
    for (VertexIndex w = 0; w < n; ++w) {
      if (used[w] || !(sig1[v] == sig2[w])) continue;
      bool consistent = true;
      for (VertexIndex u = 0; u < v && consistent; ++u) {
        consistent = first.multiplicity(v, u) == second.multiplicity(w, image[u]) &&
                     first.multiplicity(u, v) == second.multiplicity(image[u], w);
      }
      if (!consistent) continue;
      used[w] = true;
      image[v] = w;
      if (extend(v + 1)) return true;
      used[w] = false;
    }
    return false;
  };

  if (!extend(0)) return std::nullopt;
  return image;
}

std::vector<VertexId> names_of(const Graph& graph,
                               const std::vector<VertexIndex>& vertices) {
  std::vector<VertexId> out;
  out.reserve(vertices.size());
  for (auto v : vertices) out.push_back(graph.name(v));
  return out;
}

}  // namespace qpsgraph
