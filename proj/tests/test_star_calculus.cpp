#include <doctest.h>

#include <algorithm>
#include <random>

#include "qpsgraph/catalog.hpp"
#include "qpsgraph/errors.hpp"
#include "qpsgraph/star_calculus.hpp"

using namespace qpsgraph;

namespace {

EdgeInstance inst(const Graph& g, const char* s, const char* t, std::uint64_t label) {
  return EdgeInstance{g.index_of(s), g.index_of(t), label};
}

// All paths of length <= max_len with labels below `labels`, including the
// empty paths.
std::vector<Path> all_paths(const Graph& g, std::size_t max_len, std::uint64_t labels) {
  std::vector<Path> out;
  std::vector<Path> frontier;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) frontier.push_back(Path::empty(v));
  out = frontier;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<Path> next;
    for (const auto& p : frontier) {
      for (const auto& e : edge_instances(g, labels)) {
        if (e.source != p.range()) continue;
        next.push_back(p.then(Path::edge(e)));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

std::vector<Monomial> all_monomials(const std::vector<Path>& paths) {
  std::vector<Monomial> out;
  for (const auto& a : paths) {
    for (const auto& b : paths) {
      if (a.range() == b.range()) out.push_back(Monomial{a, b});
    }
  }
  return out;
}

GeneratorMap identity_map(const GraphPtr& g) {
  GeneratorMap m(g, g);
  for (const auto& name : g->vertices()) m.set_vertex(name, Element::vertex(g, name));
  for (const auto& e : g->edges()) {
    const auto s = g->name(e.source);
    const auto t = g->name(e.target);
    m.set_uniform_edge(s, t, {{{s, t}, 1}});
  }
  return m;
}

Element random_element(std::mt19937& rng, const GraphPtr& g, const std::vector<Monomial>& pool) {
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<int> coef(-3, 3);
  Element x(g);
  for (int i = 0; i < 3; ++i) x = x + Element::monomial(g, pool[pick(rng)], coef(rng));
  return x;
}

}  // namespace

TEST_CASE("multiply examples") {
  const GraphPtr g = projective_graph_ptr(2);
  const Element p1 = Element::vertex(g, "w1");
  const Element p2 = Element::vertex(g, "w2");
  CHECK((p1 * p2).is_zero());
  CHECK(p1 * p1 == p1);

  const Element s = Element::edge(g, "w1", "w2", 0);
  CHECK(s.adjoint() * s == Element::vertex(g, "w2"));
  CHECK((s.adjoint() * Element::edge(g, "w1", "w2", 1)).is_zero());
  CHECK((s.adjoint() * Element::edge(g, "w1", "w3", 0)).is_zero());

  // (S_a S_b^*)(S_b S_c^*) = S_a S_c^* with a, b, c ending at w3.
  const Path a = Path::edge(inst(*g, "w1", "w3", 0));
  const Path b = Path::edge(inst(*g, "w1", "w2", 1)).then(Path::edge(inst(*g, "w2", "w3", 0)));
  const Path c = Path::empty(g->index_of("w3"));
  const Element ab = Element::monomial(g, {a, b});
  const Element bc = Element::monomial(g, {b, c});
  CHECK(ab * bc == Element::monomial(g, {a, c}));
  CHECK(ab.to_string() == "S(w1>w3#0)S*(w1>w2#1 w2>w3#0)");
  CHECK(p1.to_string() == "P_w1");
  CHECK((p1 + p1.scaled(2)).to_string() == "3*P_w1");
}

TEST_CASE("multiply rejects mixed graphs and bad paths") {
  const Element a = Element::vertex(projective_graph_ptr(1), "w1");
  const Element b = Element::vertex(projective_graph_ptr(2), "w1");
  CHECK_THROWS(a * b);
  const GraphPtr g = projective_graph_ptr(2);
  CHECK_THROWS_AS(Element::edge(g, "w2", "w1", 0), GraphError);
  const GraphPtr l = sphere_graph_ptr(1);
  CHECK_THROWS_AS(Element::edge(l, "v1", "v1", 1), GraphError);
  const Path to_w2 = Path::edge(inst(*g, "w1", "w2", 0));
  const Path to_w3 = Path::edge(inst(*g, "w1", "w3", 0));
  CHECK_THROWS(Element::monomial(g, {to_w2, to_w3}));
}

TEST_CASE("adjoint examples") {
  const GraphPtr g = projective_graph_ptr(2);
  const Element p = Element::vertex(g, "w2");
  CHECK(p.adjoint() == p);
  const Element s = Element::edge(g, "w1", "w2", 0);
  const Monomial sm = s.terms().begin()->first;
  CHECK(s.adjoint() == Element::monomial(g, {sm.beta, sm.alpha}));
  const Path a = Path::edge(inst(*g, "w1", "w3", 0));
  const Path b = Path::edge(inst(*g, "w2", "w3", 1));
  CHECK(Element::monomial(g, {a, b}, 2).adjoint() == Element::monomial(g, {b, a}, 2));
}

TEST_CASE("property: multiply is associative on short paths of F_2") {
  const GraphPtr g = projective_graph_ptr(2);
  const auto monomials = all_monomials(all_paths(*g, 3, 2));
  REQUIRE(monomials.size() == 91);
  std::size_t nonzero = 0;
  for (const auto& x : monomials) {
    for (const auto& y : monomials) {
      const auto xy = multiply_monomials(x, y);
      for (const auto& z : monomials) {
        const auto yz = multiply_monomials(y, z);
        const auto left = xy ? multiply_monomials(*xy, z) : std::nullopt;
        const auto right = yz ? multiply_monomials(x, *yz) : std::nullopt;
        REQUIRE(left == right);
        nonzero += left ? 1 : 0;
      }
    }
  }
  CHECK(nonzero > 0);
}

TEST_CASE("property: adjoint is an involutive anti-homomorphism; degrees add") {
  std::mt19937 rng(41);
  const GraphPtr g = projective_graph_ptr(2);
  const auto pool = all_monomials(all_paths(*g, 2, 2));
  for (int trial = 0; trial < 300; ++trial) {
    const Element a = random_element(rng, g, pool);
    const Element b = random_element(rng, g, pool);
    CHECK(a.adjoint().adjoint() == a);
    CHECK((a * b).adjoint() == b.adjoint() * a.adjoint());
  }
  for (const auto& x : pool) {
    for (const auto& y : pool) {
      if (auto xy = multiply_monomials(x, y)) CHECK(xy->degree() == x.degree() + y.degree());
    }
  }
}

TEST_CASE("property: P_s(alpha) is a local unit") {
  const GraphPtr g = projective_graph_ptr(3);
  for (const auto& m : all_monomials(all_paths(*g, 2, 2))) {
    const Element x = Element::monomial(g, m);
    CHECK(Element::vertex(g, m.alpha.source()) * x == x);
    CHECK(x * Element::vertex(g, m.beta.source()) == x);
  }
  const GraphPtr l = sphere_graph_ptr(2);
  for (const auto& m : all_monomials(all_paths(*l, 2, 1))) {
    const Element x = Element::monomial(l, m);
    CHECK(Element::vertex(l, m.alpha.source()) * x == x);
  }
}

TEST_CASE("apply_map examples") {
  const GeneratorMap q2 = quotient_map(2);
  CHECK(apply_map(q2, Element::vertex(q2.source(), "w3")).is_zero());
  const GeneratorMap s2 = splitting_map(2);
  CHECK(apply_map(s2, Element::vertex(s2.source(), "w2")) ==
        Element::vertex(s2.target(), "w2") + Element::vertex(s2.target(), "w3"));

  const GraphPtr g = projective_graph_ptr(2);
  const GeneratorMap id = identity_map(g);
  std::mt19937 rng(42);
  const auto pool = all_monomials(all_paths(*g, 2, 3));
  for (int trial = 0; trial < 50; ++trial) {
    const Element x = random_element(rng, g, pool);
    CHECK(apply_map(id, x) == x);
  }

  GeneratorMap partial(g, g);
  partial.set_vertex("w1", Element::vertex(g, "w1"));
  CHECK_THROWS_AS(apply_map(partial, Element::vertex(g, "w2")), PreconditionError);
}

TEST_CASE("verify_star_hom on the extension maps") {
  for (int n = 1; n <= 5; ++n) {
    CAPTURE(n);
    const StarHomReport s = verify_star_hom(splitting_map(n));
    const StarHomReport q = verify_star_hom(quotient_map(n));
    CHECK(s.passed);
    CHECK(q.passed);
    CHECK(s.checks > 0);
    CHECK(is_identity(compose_maps(quotient_map(n), splitting_map(n))));
  }
  CHECK_THROWS_AS(verify_star_hom(splitting_map(2), 1), PreconditionError);
  const Graph f1 = projective_graph(1);
  const Graph f2 = projective_graph(2);
  CHECK(verify_star_hom(f1, f2, splitting_map(2)).passed);
  CHECK_THROWS(verify_star_hom(f2, f2, splitting_map(2)));
}

TEST_CASE("verify_star_hom detects a dropped summand") {
  GeneratorMap broken = splitting_map(2);
  broken.set_uniform_edge("w1", "w2", {{{"w1", "w2"}, 1}});
  const StarHomReport r = verify_star_hom(broken);
  CHECK_FALSE(r.passed);
  REQUIRE(r.first_violation.has_value());
  CHECK(r.first_violation->relation == "(iii)");
}

TEST_CASE("verify_star_hom checks (v) at regular vertices") {
  const GraphPtr circle = sphere_graph_ptr(0);
  CHECK(verify_star_hom(identity_map(circle)).passed);
  CHECK(verify_star_hom(identity_map(sphere_graph_ptr(2))).passed);

  // One loop sent into a vertex with two loops: an isometry, not a unitary.
  const GraphPtr two_loops = share(build_graph({"v"}, {{"v", "v", Multiplicity(2)}}));
  GeneratorMap m(circle, two_loops);
  m.set_vertex("v1", Element::vertex(two_loops, "v"));
  m.set_edge_rule(0, 0, [two_loops](std::uint64_t) { return Element::edge(two_loops, "v", "v", 0); });
  const StarHomReport r = verify_star_hom(m);
  CHECK_FALSE(r.passed);
  REQUIRE(r.first_violation.has_value());
  CHECK(r.first_violation->relation == "(v)");
}

TEST_CASE("reduce_modulo_v") {
  const GraphPtr two_loops = share(build_graph({"v"}, {{"v", "v", Multiplicity(2)}}));
  const Element pv = Element::vertex(two_loops, "v");
  const Element e0 = Element::edge(two_loops, "v", "v", 0);
  const Element e1 = Element::edge(two_loops, "v", "v", 1);
  CHECK(reduce_modulo_v(pv - e0 * e0.adjoint() - e1 * e1.adjoint()).is_zero());
  CHECK(equal_in_algebra(e0 * e0.adjoint(), pv - e1 * e1.adjoint()));
  CHECK_FALSE(equal_in_algebra(e0 * e0.adjoint(), pv));
  CHECK(reduce_modulo_v(e1 * e1.adjoint()) == e1 * e1.adjoint());

  // Nothing to do without regular vertices.
  const GraphPtr f2 = projective_graph_ptr(2);
  const Element x = Element::edge(f2, "w1", "w2", 0) * Element::edge(f2, "w1", "w2", 0).adjoint();
  CHECK(reduce_modulo_v(x) == x);
}

TEST_CASE("property: reduce_modulo_v is linear and leaves no special pair") {
  const GraphPtr l5 = sphere_graph_ptr(2);
  const Graph& g = *l5;
  std::vector<Element> gens;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) gens.push_back(Element::vertex(l5, v));
  for (const auto& e : edge_instances(g, 2)) {
    gens.push_back(Element::edge(l5, e));
    gens.push_back(Element::edge(l5, e).adjoint());
  }
  std::mt19937 rng(5);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  std::uniform_int_distribution<int> coeff(-3, 3);
  auto random_word = [&] {
    Element w = gens[pick(rng)];
    for (int k = 0; k < 3; ++k) w = w * gens[pick(rng)];
    return w;
  };
  for (int trial = 0; trial < 200; ++trial) {
    const Element a = random_word();
    const Element b = random_word();
    const Rational c = coeff(rng);
    const Element ra = reduce_modulo_v(a);
    CHECK(reduce_modulo_v(ra) == ra);
    CHECK(reduce_modulo_v(a + b.scaled(c)) == ra + reduce_modulo_v(b).scaled(c));
    // Relation (v) at every vertex, pushed through a random word, reduces to zero.
    for (auto v : regular_vertices(g)) {
      Element cuntz = Element::vertex(l5, v);
      for (const auto& cls : g.out_edges(v)) {
        const Element e = Element::edge(l5, EdgeInstance{v, cls.target, 0});
        cuntz = cuntz - e * e.adjoint();
      }
      CHECK(reduce_modulo_v(a * cuntz * b).is_zero());
    }
  }
}

TEST_CASE("label sufficiency") {
  const GraphPtr f2 = projective_graph_ptr(2);
  const auto bad_image = [&](std::uint64_t label) {
    return Element::edge(f2, "w1", "w2", label);  // drops the w1 -> w3 summand
  };
  // A defect in the uniform rule shows up at budget 2.
  GeneratorMap uniform = splitting_map(2);
  uniform.set_edge_rule(0, 1, bad_image);
  CHECK_FALSE(verify_star_hom(uniform, 2).passed);

  // A single bad instance is seen once its label is inside the budget.
  for (std::uint64_t label : {0, 1, 7}) {
    CAPTURE(label);
    GeneratorMap single = splitting_map(2);
    single.set_edge_override(EdgeInstance{0, 1, label}, bad_image(label));
    CHECK(verify_star_hom(single, 2).passed == (label >= 2));
    CHECK_FALSE(verify_star_hom(single, std::max<std::uint64_t>(2, label + 1)).passed);
  }
}

TEST_CASE("compose_maps and is_identity") {
  for (int n = 1; n <= 4; ++n) {
    CHECK_FALSE(is_identity(compose_maps(splitting_map(n), quotient_map(n))));
  }
  const GraphPtr g = projective_graph_ptr(2);
  CHECK(is_identity(compose_maps(identity_map(g), identity_map(g))));
}
