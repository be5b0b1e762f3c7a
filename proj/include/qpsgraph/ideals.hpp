#pragma once

// Hereditary and saturated vertex sets, the lattice they form, and the
// quotient graph E/H.

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "qpsgraph/graph.hpp"

namespace qpsgraph {

using VertexSubset = std::set<VertexIndex>;

// Names must belong to the graph (GraphError otherwise).
VertexSubset subset_of(const Graph& graph, const std::vector<VertexId>& names);
std::vector<VertexId> subset_names(const Graph& graph, const VertexSubset& subset);
std::string subset_to_string(const Graph& graph, const VertexSubset& subset);

bool is_hereditary(const Graph& graph, const VertexSubset& h);
bool is_saturated(const Graph& graph, const VertexSubset& h);
bool is_hereditary_saturated(const Graph& graph, const VertexSubset& h);

// Least hereditary and saturated superset.
VertexSubset saturate(const Graph& graph, const VertexSubset& h);

inline constexpr std::size_t kIdealEnumerationVertexLimit = 20;

struct IdealLattice {
  // Sorted by size, then lexicographically on vertex indices.
  std::vector<VertexSubset> members;

  std::size_t size() const { return members.size(); }
  bool leq(std::size_t a, std::size_t b) const;
  // True when inclusion is a total order on the members.
  bool is_chain() const;
};

// Throws SizeLimitError above kIdealEnumerationVertexLimit vertices.
IdealLattice enumerate_hereditary_saturated(const Graph& graph);

// Vertices outside H with infinitely many edges, of which finitely many
// (and at least one) end outside H. Throws PreconditionError unless H is
// hereditary and saturated.
VertexSubset h_inf_fin(const Graph& graph, const VertexSubset& h);

std::string beta_name(const VertexId& original);

// Vertices: E^0 \ H in graph order, then "beta:<v>" for v in H_inf^fin.
// Edges: classes ending outside H, plus a copy of each class ending at some
// v in H_inf^fin redirected to beta:<v>. Throws PreconditionError unless H is
// hereditary and saturated.
Graph quotient_graph(const Graph& graph, const VertexSubset& h);

}  // namespace qpsgraph
