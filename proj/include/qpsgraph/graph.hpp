#pragma once

// Directed multigraphs whose parallel edges are stored as one edge class with
// a (possibly infinite) multiplicity. Individual edges of a class are
// addressed downstream by a label in [0, multiplicity).

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qpsgraph {

using VertexId = std::string;
using VertexIndex = std::size_t;

class Multiplicity {
 public:
  constexpr Multiplicity() = default;
  constexpr explicit Multiplicity(std::uint64_t count) : count_(count) {}

  static constexpr Multiplicity infinite() {
    Multiplicity m;
    m.infinite_ = true;
    return m;
  }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_zero() const { return !infinite_ && count_ == 0; }
  // Only meaningful when finite.
  constexpr std::uint64_t count() const { return count_; }

  // True when `label` addresses an edge of a class with this multiplicity.
  constexpr bool admits_label(std::uint64_t label) const {
    return infinite_ || label < count_;
  }

  constexpr Multiplicity operator+(Multiplicity other) const {
    if (infinite_ || other.infinite_) return infinite();
    return Multiplicity(count_ + other.count_);
  }

  constexpr bool operator==(const Multiplicity& other) const {
    return infinite_ == other.infinite_ && (infinite_ || count_ == other.count_);
  }

  // Finite values ordered numerically, every finite value below infinity.
  constexpr std::strong_ordering operator<=>(const Multiplicity& other) const {
    if (infinite_ != other.infinite_) {
      return infinite_ ? std::strong_ordering::greater
                       : std::strong_ordering::less;
    }
    if (infinite_) return std::strong_ordering::equal;
    return count_ <=> other.count_;
  }

  std::string to_string() const;

 private:
  std::uint64_t count_ = 0;
  bool infinite_ = false;
};

struct EdgeClass {
  VertexIndex source = 0;
  VertexIndex target = 0;
  Multiplicity multiplicity;

  bool operator==(const EdgeClass&) const = default;
};

struct EdgeSpec {
  VertexId source;
  VertexId target;
  Multiplicity multiplicity{1};
};

// Immutable after construction. Vertex order is the order given to
// build_graph and fixes every matrix index convention downstream.
class Graph {
 public:
  Graph() = default;

  std::size_t vertex_count() const { return vertices_.size(); }
  const std::vector<VertexId>& vertices() const { return vertices_; }
  const VertexId& name(VertexIndex v) const { return vertices_.at(v); }

  std::optional<VertexIndex> find(std::string_view name) const;
  // Throws GraphError for unknown names.
  VertexIndex index_of(std::string_view name) const;

  // Sorted by (source, target); at most one class per pair.
  const std::vector<EdgeClass>& edges() const { return edges_; }
  const EdgeClass* edge(VertexIndex source, VertexIndex target) const;
  Multiplicity multiplicity(VertexIndex source, VertexIndex target) const;

  // Edge classes leaving v, in target order.
  std::vector<EdgeClass> out_edges(VertexIndex v) const;
  // Edge classes entering v, in source order.
  std::vector<EdgeClass> in_edges(VertexIndex v) const;

  // Total number of edges emitted by v (sum of class multiplicities).
  Multiplicity out_multiplicity(VertexIndex v) const;

  bool operator==(const Graph& other) const {
    return vertices_ == other.vertices_ && edges_ == other.edges_;
  }

 private:
  friend Graph build_graph(std::vector<VertexId> vertices,
                           const std::vector<EdgeSpec>& edges);

  std::vector<VertexId> vertices_;
  std::map<VertexId, VertexIndex, std::less<>> index_;
  std::vector<EdgeClass> edges_;
  std::map<std::pair<VertexIndex, VertexIndex>, std::size_t> edge_slot_;
};

bool is_valid_vertex_name(std::string_view name);

// Duplicate (source, target) entries are merged by adding multiplicities,
// with Infinite absorbing. Throws GraphError on a bad or duplicate vertex
// name, an edge naming an unknown vertex, or a zero multiplicity.
Graph build_graph(std::vector<VertexId> vertices,
                  const std::vector<EdgeSpec>& edges);

// Vertices emitting a finite, nonzero number of edges.
std::vector<VertexIndex> regular_vertices(const Graph& graph);
std::vector<VertexIndex> sinks(const Graph& graph);
std::vector<VertexIndex> infinite_emitters(const Graph& graph);
bool is_row_finite(const Graph& graph);

// Brute-force bound for graph_isomorphism.
inline constexpr std::size_t kIsomorphismVertexLimit = 12;

// Returns a witness bijection (first[v] = image of v in `second`) when the
// graphs are isomorphic as multigraphs. Throws SizeLimitError if either graph
// has more than kIsomorphismVertexLimit vertices.
std::optional<std::vector<VertexIndex>> graph_isomorphism(const Graph& first,
                                                          const Graph& second);

inline bool graph_isomorphic(const Graph& first, const Graph& second) {
  return graph_isomorphism(first, second).has_value();
}

std::vector<VertexId> names_of(const Graph& graph,
                               const std::vector<VertexIndex>& vertices);

}  // namespace qpsgraph
