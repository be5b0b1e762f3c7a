#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "qpsgraph/catalog.hpp"
#include "qpsgraph/errors.hpp"
#include "qpsgraph/graph.hpp"
#include "qpsgraph/graph_io.hpp"
#include "qpsgraph/ideals.hpp"

using namespace qpsgraph;

namespace {

std::vector<VertexId> named(const Graph& g, const std::vector<VertexIndex>& idx) {
  std::vector<VertexId> out;
  for (auto i : idx) out.push_back(g.name(i));
  return out;
}

}  // namespace

TEST_CASE("build_graph: isolated vertex is a sink") {
  const Graph g = build_graph({"v"}, {});
  CHECK(g.vertex_count() == 1);
  CHECK(g.edges().empty());
  CHECK(named(g, sinks(g)) == std::vector<VertexId>{"v"});
  CHECK(regular_vertices(g).empty());
}

TEST_CASE("build_graph: infinite class gives F_1") {
  const Graph g = build_graph({"w1", "w2"}, {{"w1", "w2", Multiplicity::infinite()}});
  CHECK(g == projective_graph(1));
  CHECK(g.multiplicity(0, 1).is_infinite());
}

TEST_CASE("build_graph: parallel entries merge") {
  const Graph g = build_graph({"a"}, {{"a", "a", Multiplicity(1)}, {"a", "a", Multiplicity(1)}});
  REQUIRE(g.edges().size() == 1);
  CHECK(g.edges()[0].multiplicity == Multiplicity(2));
  const Graph h = build_graph({"a", "b"}, {{"a", "b", Multiplicity(3)},
                                           {"a", "b", Multiplicity::infinite()}});
  CHECK(h.multiplicity(0, 1).is_infinite());
}

TEST_CASE("build_graph: errors") {
  CHECK_THROWS_AS(build_graph({"a"}, {{"a", "b", Multiplicity(1)}}), GraphError);
  CHECK_THROWS_AS(build_graph({"a"}, {{"a", "a", Multiplicity(0)}}), GraphError);
  CHECK_THROWS_AS(build_graph({"a", "a"}, {}), GraphError);
  CHECK_THROWS_AS(build_graph({"a b"}, {}), GraphError);
  CHECK_THROWS_AS(build_graph({""}, {}), GraphError);
}

TEST_CASE("vertex classes of F_1, L_5 and an edgeless graph") {
  const Graph f1 = projective_graph(1);
  CHECK(regular_vertices(f1).empty());
  CHECK(named(f1, sinks(f1)) == std::vector<VertexId>{"w2"});
  CHECK(named(f1, infinite_emitters(f1)) == std::vector<VertexId>{"w1"});

  const Graph l5 = sphere_graph(2);
  CHECK(named(l5, regular_vertices(l5)) == std::vector<VertexId>{"v1", "v2", "v3"});
  CHECK(sinks(l5).empty());
  CHECK(is_row_finite(l5));

  for (int n = 1; n <= 5; ++n) {
    const Graph f = projective_graph(n);
    CHECK(named(f, sinks(f)) == std::vector<VertexId>{projective_vertex(n + 1)});
    CHECK_FALSE(is_row_finite(f));
    CHECK(is_row_finite(sphere_graph(n)));
  }

  const Graph bare = build_graph({"a", "b", "c"}, {});
  CHECK(sinks(bare).size() == 3);
  CHECK(is_row_finite(bare));
}

TEST_CASE("property: vertex classes partition the vertex set") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const Graph g = oracle::random_graph(rng, 8, 0.3);
    std::vector<VertexIndex> all;
    for (auto v : regular_vertices(g)) all.push_back(v);
    for (auto v : sinks(g)) all.push_back(v);
    for (auto v : infinite_emitters(g)) all.push_back(v);
    std::sort(all.begin(), all.end());
    REQUIRE(all.size() == g.vertex_count());
    for (std::size_t i = 0; i < all.size(); ++i) CHECK(all[i] == i);
  }
}

TEST_CASE("graph file round trip") {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const Graph g = oracle::random_graph(rng, 8, 0.3);
    CHECK(parse_graph(serialize_graph(g)) == g);
  }
  for (int n = 0; n <= 4; ++n) {
    CHECK(parse_graph(serialize_graph(projective_graph(n))) == projective_graph(n));
    CHECK(parse_graph(serialize_graph(sphere_graph(n))) == sphere_graph(n));
  }
}

TEST_CASE("graph file parsing") {
  const Graph g = parse_graph(
      "# F_1 with a comment\n"
      "vertex w1\n"
      "vertex w2   # trailing\n"
      "\n"
      "edge w1 w2 inf\n");
  CHECK(g == projective_graph(1));
  CHECK(g.vertices() == std::vector<VertexId>{"w1", "w2"});

  CHECK_THROWS_AS(parse_graph(""), ParseError);
  CHECK_THROWS_AS(parse_graph("# nothing\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("vertex a\nedge a b 1\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("edge a a 1\nvertex a\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("vertex a\nedge a a 0\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("vertex a\nedge a a -1\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("vertex a\nedge a a\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("node a\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("vertex a\nvertex a\n"), ParseError);
  try {
    parse_graph("vertex a\n\nedge a z 1\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("graph_isomorphic examples") {
  CHECK(graph_isomorphic(projective_graph(1), projective_graph(1)));
  const Graph f2 = projective_graph(2);
  const Graph quotient = quotient_graph(f2, subset_of(f2, {"w3"}));
  CHECK(graph_isomorphic(quotient, projective_graph(1)));
  CHECK_FALSE(graph_isomorphic(projective_graph(1), sphere_graph(1)));

  // Relabelled and reordered copy.
  const Graph relabelled =
      build_graph({"b", "a"}, {{"a", "b", Multiplicity::infinite()}});
  const auto witness = graph_isomorphism(projective_graph(1), relabelled);
  REQUIRE(witness.has_value());
  CHECK((*witness)[0] == 1);
  CHECK((*witness)[1] == 0);

  std::vector<VertexId> big;
  for (int i = 0; i < 13; ++i) big.push_back("x" + std::to_string(i));
  const Graph large = build_graph(big, {});
  CHECK_THROWS_AS(graph_isomorphic(large, large), SizeLimitError);
}

TEST_CASE("property: graph_isomorphic is an equivalence on a test set") {
  std::mt19937 rng(13);
  std::vector<Graph> set;
  for (int i = 0; i < 12; ++i) set.push_back(oracle::random_graph(rng, 4, 0.4));
  // Shuffled copies guarantee some positive pairs.
  for (int i = 0; i < 6; ++i) {
    const Graph g = set[static_cast<std::size_t>(i)];
    std::vector<VertexId> names = g.vertices();
    std::shuffle(names.begin(), names.end(), rng);
    std::vector<EdgeSpec> edges;
    for (const auto& e : g.edges()) edges.push_back({g.name(e.source), g.name(e.target), e.multiplicity});
    set.push_back(build_graph(names, edges));
    CHECK(graph_isomorphic(g, set.back()));
  }
  for (const auto& a : set) {
    CHECK(graph_isomorphic(a, a));
    for (const auto& b : set) {
      CHECK(graph_isomorphic(a, b) == graph_isomorphic(b, a));
      for (const auto& c : set) {
        if (graph_isomorphic(a, b) && graph_isomorphic(b, c)) CHECK(graph_isomorphic(a, c));
      }
    }
  }
}
