#pragma once

// Plain-text graph documents, one declaration per line:
//
//   # comment
//   vertex <name>
//   edge <source> <target> <multiplicity>     (positive integer or "inf")
//
// Vertices must be declared before an edge mentions them; declaration order
// is the graph's vertex order.

#include <iosfwd>
#include <string>
#include <string_view>

#include "qpsgraph/graph.hpp"

namespace qpsgraph {

// Throws ParseError (with 1-based line number) on malformed input, unknown
// or undeclared vertices, zero multiplicities, or a document declaring no
// vertices at all.
Graph parse_graph(std::istream& in);
Graph parse_graph(std::string_view text);
Graph read_graph_file(const std::string& path);

std::string serialize_graph(const Graph& graph);

}  // namespace qpsgraph
