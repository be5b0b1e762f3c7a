#pragma once

// Finite linear combinations of monomials S_a S_b^* in a graph C*-algebra,
// multiplied with the path-prefix rule, plus maps defined on generators and
// a checker for the graph-algebra relations on their images.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qpsgraph/graph.hpp"

namespace qpsgraph {

using Rational = boost::multiprecision::cpp_rational;
using GraphPtr = std::shared_ptr<const Graph>;

GraphPtr share(Graph graph);

// One edge of an edge class, addressed by its label.
struct EdgeInstance {
  VertexIndex source = 0;
  VertexIndex target = 0;
  std::uint64_t label = 0;

  auto operator<=>(const EdgeInstance&) const = default;
};

// `anchor` is the source vertex; for the empty path it is the only vertex.
struct Path {
  VertexIndex anchor = 0;
  std::vector<EdgeInstance> steps;

  static Path empty(VertexIndex v) { return Path{v, {}}; }
  static Path edge(const EdgeInstance& e) { return Path{e.source, {e}}; }

  VertexIndex source() const { return anchor; }
  VertexIndex range() const { return steps.empty() ? anchor : steps.back().target; }
  std::size_t length() const { return steps.size(); }

  // Throws GraphError when steps do not chain or use an edge absent from
  // the graph (or a label beyond a finite multiplicity).
  void validate(const Graph& graph) const;

  // Concatenation; requires range() == tail.source().
  Path then(const Path& tail) const;
  // True when this path is an initial segment of `other`.
  bool is_prefix_of(const Path& other) const;

  auto operator<=>(const Path&) const = default;
};

// S_alpha S_beta^* with r(alpha) = r(beta).
struct Monomial {
  Path alpha;
  Path beta;

  long degree() const {
    return static_cast<long>(alpha.length()) - static_cast<long>(beta.length());
  }

  auto operator<=>(const Monomial&) const = default;
};

// Product of two monomials; nullopt when it vanishes.
std::optional<Monomial> multiply_monomials(const Monomial& a, const Monomial& b);

class Element {
 public:
  explicit Element(GraphPtr graph);

  static Element vertex(GraphPtr graph, VertexIndex v);
  static Element vertex(GraphPtr graph, std::string_view name);
  static Element edge(GraphPtr graph, const EdgeInstance& e);
  static Element edge(GraphPtr graph, std::string_view source, std::string_view target,
                      std::uint64_t label);
  static Element monomial(GraphPtr graph, Monomial m, Rational coefficient = 1);

  const GraphPtr& graph_ptr() const { return graph_; }
  const Graph& graph() const { return *graph_; }
  const std::map<Monomial, Rational>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const Monomial& m) const;
  // Common gauge degree of all terms; nullopt if mixed. Zero has degree 0.
  std::optional<long> degree() const;

  Element adjoint() const;

  Element operator+(const Element& other) const;
  Element operator-(const Element& other) const;
  Element operator*(const Element& other) const;
  Element scaled(const Rational& factor) const;

  // Same graph (by value) and same normal form.
  bool operator==(const Element& other) const;

  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  void require_same_graph(const Element& other) const;

  GraphPtr graph_;
  std::map<Monomial, Rational> terms_;
};

Element multiply(const Element& a, const Element& b);
Element adjoint(const Element& a);

// Canonical form modulo relation (v) of the element's graph. At each regular
// vertex w the first edge out of w (label 0) is special, and every
// S_{a e} S_{b e}^* with e special is rewritten as
// S_a S_b^* - sum over the other edges f out of w of S_{a f} S_{b f}^*.
// Identity on graphs without regular vertices.
Element reduce_modulo_v(const Element& x);
// a == b in the graph algebra (normal form plus relation (v)).
bool equal_in_algebra(const Element& a, const Element& b);

std::string edge_instance_name(const Graph& graph, const EdgeInstance& e);
std::string monomial_name(const Graph& graph, const Monomial& m);

// Candidate *-homomorphism given by images of generators. Edge classes may
// carry a rule producing the image of every label; single instances may be
// overridden.
class GeneratorMap {
 public:
  using EdgeRule = std::function<Element(std::uint64_t label)>;

  GeneratorMap(GraphPtr source, GraphPtr target);

  const GraphPtr& source() const { return source_; }
  const GraphPtr& target() const { return target_; }

  void set_vertex(VertexIndex v, Element image);
  void set_vertex(std::string_view name, Element image);
  void set_edge_rule(VertexIndex source, VertexIndex target, EdgeRule rule);
  // Label m of the class maps to sum_k c_k * (label m of target class k).
  void set_uniform_edge(std::string_view source, std::string_view target,
                        const std::vector<std::pair<std::pair<VertexId, VertexId>,
                                                    Rational>>& target_classes);
  // Every label of the class maps to zero.
  void set_edge_zero(std::string_view source, std::string_view target);
  void set_edge_override(const EdgeInstance& e, Element image);

  // Throw PreconditionError for unmapped generators.
  Element vertex_image(VertexIndex v) const;
  Element edge_image(const EdgeInstance& e) const;

 private:
  void require_target(const Element& image) const;

  GraphPtr source_;
  GraphPtr target_;
  std::map<VertexIndex, Element> vertices_;
  std::map<std::pair<VertexIndex, VertexIndex>, EdgeRule> edge_rules_;
  std::map<EdgeInstance, Element> overrides_;
};

Element apply_map(const GeneratorMap& map, const Element& a);

// outer after inner: generators of inner.source() go through both.
GeneratorMap compose_maps(const GeneratorMap& outer, const GeneratorMap& inner);

// Generator instances with labels below label_budget (all labels of finite
// classes smaller than the budget).
std::vector<EdgeInstance> edge_instances(const Graph& graph, std::uint64_t label_budget);

// Checks that every vertex and every edge instance with label below the
// budget is fixed. Requires source and target to be the same graph.
bool is_identity(const GeneratorMap& map, std::uint64_t label_budget = 2);

struct RelationViolation {
  std::string relation;  // "projection", "(i)" .. "(v)"
  std::string detail;
};

struct StarHomReport {
  bool passed = true;
  std::size_t checks = 0;
  std::optional<RelationViolation> first_violation;

  std::string to_string() const;
};

// Images of P_v must be projections satisfying (i); images of edge instances
// (labels below the budget) must satisfy (ii)-(iv); (v) is checked at every
// regular vertex of the source graph over all of its edges.
// Throws PreconditionError when label_budget < 2.
StarHomReport verify_star_hom(const GeneratorMap& map, std::uint64_t label_budget = 2);
StarHomReport verify_star_hom(const Graph& source, const Graph& target,
                              const GeneratorMap& map, std::uint64_t label_budget = 2);

}  // namespace qpsgraph
