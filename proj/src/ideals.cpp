#include "qpsgraph/ideals.hpp"

#include <algorithm>
#include <cstdint>

#include "qpsgraph/errors.hpp"

namespace qpsgraph {
namespace {

void require_hereditary_saturated(const Graph& graph, const VertexSubset& h) {
  if (!is_hereditary_saturated(graph, h)) {
    throw PreconditionError("vertex set " + subset_to_string(graph, h) +
                            " is not hereditary and saturated");
  }
}

void check_members(const Graph& graph, const VertexSubset& h) {
  for (auto v : h) {
    if (v >= graph.vertex_count()) throw GraphError("vertex index out of range");
  }
}

bool hereditary_mask(const Graph& graph, std::uint32_t mask) {
  for (const auto& e : graph.edges()) {
    if ((mask >> e.source & 1u) && !(mask >> e.target & 1u)) return false;
  }
  return true;
}

bool saturated_mask(const Graph& graph, const std::vector<VertexIndex>& regular,
                    std::uint32_t mask) {
  for (auto v : regular) {
    if (mask >> v & 1u) continue;
    bool all_inside = true;
    for (const auto& e : graph.out_edges(v)) {
      if (!(mask >> e.target & 1u)) {
        all_inside = false;
        break;
      }
    }
    if (all_inside) return false;
  }
  return true;
}

}  // namespace

VertexSubset subset_of(const Graph& graph, const std::vector<VertexId>& names) {
  VertexSubset out;
  for (const auto& name : names) out.insert(graph.index_of(name));
  return out;
}

std::vector<VertexId> subset_names(const Graph& graph, const VertexSubset& subset) {
  std::vector<VertexId> out;
  for (auto v : subset) out.push_back(graph.name(v));
  return out;
}

std::string subset_to_string(const Graph& graph, const VertexSubset& subset) {
  std::string out = "{";
  bool first = true;
  for (auto v : subset) {
    out += (first ? "" : ",") + graph.name(v);
    first = false;
  }
  return out + "}";
}

bool is_hereditary(const Graph& graph, const VertexSubset& h) {
  check_members(graph, h);
  // Closure under single edges is closure under paths.
  for (const auto& e : graph.edges()) {
    if (h.count(e.source) && !h.count(e.target)) return false;
  }
  return true;
}

bool is_saturated(const Graph& graph, const VertexSubset& h) {
  check_members(graph, h);
  for (auto v : regular_vertices(graph)) {
    if (h.count(v)) continue;
    const auto out = graph.out_edges(v);
    if (std::all_of(out.begin(), out.end(),
                    [&](const EdgeClass& e) { return h.count(e.target) > 0; })) {
      return false;
    }
  }
  return true;
}

bool is_hereditary_saturated(const Graph& graph, const VertexSubset& h) {
  return is_hereditary(graph, h) && is_saturated(graph, h);
}

VertexSubset saturate(const Graph& graph, const VertexSubset& h) {
  check_members(graph, h);
  VertexSubset out = h;
  const auto regular = regular_vertices(graph);
  for (bool changed = true; changed;) {
    changed = false;
    for (bool grew = true; grew;) {
      grew = false;
      for (const auto& e : graph.edges()) {
        if (out.count(e.source) && out.insert(e.target).second) grew = changed = true;
      }
    }
    for (auto v : regular) {
      if (out.count(v)) continue;
      const auto edges = graph.out_edges(v);
      if (std::all_of(edges.begin(), edges.end(),
                      [&](const EdgeClass& e) { return out.count(e.target) > 0; })) {
        out.insert(v);
        changed = true;
      }
    }
  }
  return out;
}

bool IdealLattice::leq(std::size_t a, std::size_t b) const {
  const auto& x = members.at(a);
  const auto& y = members.at(b);
  return std::includes(y.begin(), y.end(), x.begin(), x.end());
}

bool IdealLattice::is_chain() const {
  for (std::size_t a = 0; a < members.size(); ++a) {
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      if (!leq(a, b) && !leq(b, a)) return false;
    }
  }
  return true;
}

IdealLattice enumerate_hereditary_saturated(const Graph& graph) {
  const std::size_t n = graph.vertex_count();
  if (n > kIdealEnumerationVertexLimit) {
    throw SizeLimitError("ideal enumeration supports at most " +
                         std::to_string(kIdealEnumerationVertexLimit) + " vertices");
  }
  const auto regular = regular_vertices(graph);
  IdealLattice lattice;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (!hereditary_mask(graph, mask) || !saturated_mask(graph, regular, mask)) continue;
    VertexSubset s;
    for (VertexIndex v = 0; v < n; ++v) {
      if (mask >> v & 1u) s.insert(v);
    }
    lattice.members.push_back(std::move(s));
  }
  std::sort(lattice.members.begin(), lattice.members.end(),
            [](const VertexSubset& a, const VertexSubset& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  return lattice;
}

VertexSubset h_inf_fin(const Graph& graph, const VertexSubset& h) {
  require_hereditary_saturated(graph, h);
  VertexSubset out;
  for (auto v : infinite_emitters(graph)) {
    if (h.count(v)) continue;
    Multiplicity outside(0);
    for (const auto& e : graph.out_edges(v)) {
      if (!h.count(e.target)) outside = outside + e.multiplicity;
    }
    if (!outside.is_infinite() && !outside.is_zero()) out.insert(v);
  }
  return out;
}

std::string beta_name(const VertexId& original) { return "beta:" + original; }

Graph quotient_graph(const Graph& graph, const VertexSubset& h) {
  const VertexSubset breaking = h_inf_fin(graph, h);
  std::vector<VertexId> vertices;
  for (VertexIndex v = 0; v < graph.vertex_count(); ++v) {
    if (!h.count(v)) vertices.push_back(graph.name(v));
  }
  for (auto v : breaking) vertices.push_back(beta_name(graph.name(v)));

  std::vector<EdgeSpec> edges;
  for (const auto& e : graph.edges()) {
    if (h.count(e.target)) continue;
    // h is hereditary, so a source in h would force the target into h.
    edges.push_back({graph.name(e.source), graph.name(e.target), e.multiplicity});
    if (breaking.count(e.target)) {
      edges.push_back({graph.name(e.source), beta_name(graph.name(e.target)),
                       e.multiplicity});
    }
  }
  return build_graph(std::move(vertices), edges);
}

}  // namespace qpsgraph
