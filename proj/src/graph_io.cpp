#include "qpsgraph/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "qpsgraph/errors.hpp"

namespace qpsgraph {
namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream ss(line.substr(0, line.find('#')));
  std::vector<std::string> out;
  for (std::string tok; ss >> tok;) out.push_back(tok);
  return out;
}

Multiplicity parse_multiplicity(const std::string& tok, std::size_t line) {
  if (tok == "inf") return Multiplicity::infinite();
  std::uint64_t value = 0;
  auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || end != tok.data() + tok.size()) {
    throw ParseError(line, "bad multiplicity '" + tok + "'");
  }
  if (value == 0) throw ParseError(line, "multiplicity must be positive");
  return Multiplicity(value);
}

}  // namespace

Graph parse_graph(std::istream& in) {
  std::vector<VertexId> vertices;
  std::vector<EdgeSpec> edges;
  std::map<std::string, std::size_t, std::less<>> declared;

  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    auto tok = tokenize(line);
    if (tok.empty()) continue;
    if (tok[0] == "vertex") {
      if (tok.size() != 2) throw ParseError(lineno, "expected 'vertex <name>'");
      if (!declared.emplace(tok[1], lineno).second) {
        throw ParseError(lineno, "duplicate vertex '" + tok[1] + "'");
      }
      vertices.push_back(tok[1]);
    } else if (tok[0] == "edge") {
      if (tok.size() != 4) {
        throw ParseError(lineno, "expected 'edge <source> <target> <multiplicity>'");
      }
      for (int i : {1, 2}) {
        if (!declared.contains(tok[i])) {
          throw ParseError(lineno, "vertex '" + tok[i] + "' used before declaration");
        }
      }
      edges.push_back(EdgeSpec{tok[1], tok[2], parse_multiplicity(tok[3], lineno)});
    } else {
      throw ParseError(lineno, "unknown declaration '" + tok[0] + "'");
    }
  }
  if (vertices.empty()) throw ParseError(0, "graph declares no vertices");
  return build_graph(std::move(vertices), edges);
}

Graph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_graph(in);
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  return parse_graph(in);
}

std::string serialize_graph(const Graph& graph) {
  std::ostringstream out;
  for (const auto& v : graph.vertices()) {
    if (v.find('#') != std::string::npos) {
      throw GraphError("vertex name '" + v + "' cannot be serialized");
    }
    out << "vertex " << v << '\n';
  }
  for (const auto& e : graph.edges()) {
    out << "edge " << graph.name(e.source) << ' ' << graph.name(e.target) << ' '
        << e.multiplicity.to_string() << '\n';
  }
  return out.str();
}

}  // namespace qpsgraph
