#include "qpsgraph/star_calculus.hpp"

#include <algorithm>
#include <sstream>

#include "qpsgraph/errors.hpp"

namespace qpsgraph {

GraphPtr share(Graph graph) { return std::make_shared<const Graph>(std::move(graph)); }

void Path::validate(const Graph& graph) const {
  if (anchor >= graph.vertex_count()) throw GraphError("path anchor out of range");
  VertexIndex at = anchor;
  for (const auto& e : steps) {
    if (e.source != at) throw GraphError("path steps do not chain");
    const EdgeClass* cls = graph.edge(e.source, e.target);
    if (!cls) {
      throw GraphError("no edge " + graph.name(e.source) + " -> " +
                       (e.target < graph.vertex_count() ? graph.name(e.target) : "?"));
    }
    if (!cls->multiplicity.admits_label(e.label)) {
      throw GraphError("label " + std::to_string(e.label) + " exceeds multiplicity of " +
                       graph.name(e.source) + " -> " + graph.name(e.target));
    }
    at = e.target;
  }
}

Path Path::then(const Path& tail) const {
  if (range() != tail.source()) throw PreconditionError("paths do not concatenate");
  Path out = *this;
  out.steps.insert(out.steps.end(), tail.steps.begin(), tail.steps.end());
  return out;
}

bool Path::is_prefix_of(const Path& other) const {
  return anchor == other.anchor && steps.size() <= other.steps.size() &&
         std::equal(steps.begin(), steps.end(), other.steps.begin());
}

namespace {

Path remainder_after(const Path& prefix, const Path& whole) {
  return Path{prefix.range(),
              std::vector<EdgeInstance>(whole.steps.begin() + prefix.steps.size(),
                                        whole.steps.end())};
}

}  // namespace

std::optional<Monomial> multiply_monomials(const Monomial& a, const Monomial& b) {
  if (a.beta.is_prefix_of(b.alpha)) {
    return Monomial{a.alpha.then(remainder_after(a.beta, b.alpha)), b.beta};
  }
  if (b.alpha.is_prefix_of(a.beta)) {
    return Monomial{a.alpha, b.beta.then(remainder_after(b.alpha, a.beta))};
  }
  return std::nullopt;
}

Element::Element(GraphPtr graph) : graph_(std::move(graph)) {
  if (!graph_) throw PreconditionError("element without a graph");
}

Element Element::vertex(GraphPtr graph, VertexIndex v) {
  return monomial(graph, Monomial{Path::empty(v), Path::empty(v)});
}

Element Element::vertex(GraphPtr graph, std::string_view name) {
  const auto v = graph->index_of(name);
  return vertex(std::move(graph), v);
}

Element Element::edge(GraphPtr graph, const EdgeInstance& e) {
  return monomial(graph, Monomial{Path::edge(e), Path::empty(e.target)});
}

Element Element::edge(GraphPtr graph, std::string_view source, std::string_view target,
                      std::uint64_t label) {
  const EdgeInstance e{graph->index_of(source), graph->index_of(target), label};
  return edge(std::move(graph), e);
}

Element Element::monomial(GraphPtr graph, Monomial m, Rational coefficient) {
  m.alpha.validate(*graph);
  m.beta.validate(*graph);
  if (m.alpha.range() != m.beta.range()) {
    throw PreconditionError("monomial paths end at different vertices");
  }
  Element out(std::move(graph));
  out.add_term(m, coefficient);
  return out;
}

Rational Element::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::optional<long> Element::degree() const {
  if (terms_.empty()) return 0L;
  const long d = terms_.begin()->first.degree();
  for (const auto& [m, c] : terms_) {
    if (m.degree() != d) return std::nullopt;
  }
  return d;
}

void Element::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

void Element::require_same_graph(const Element& other) const {
  if (graph_ != other.graph_ && !(*graph_ == *other.graph_)) {
    throw GraphError("elements belong to different graphs");
  }
}

Element Element::adjoint() const {
  Element out(graph_);
  for (const auto& [m, c] : terms_) out.add_term(Monomial{m.beta, m.alpha}, c);
  return out;
}

Element Element::operator+(const Element& other) const {
  require_same_graph(other);
  Element out = *this;
  for (const auto& [m, c] : other.terms_) out.add_term(m, c);
  return out;
}

Element Element::operator-(const Element& other) const {
  return *this + other.scaled(-1);
}

Element Element::operator*(const Element& other) const {
  require_same_graph(other);
  Element out(graph_);
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : other.terms_) {
      if (auto m = multiply_monomials(ma, mb)) out.add_term(*m, ca * cb);
    }
  }
  return out;
}

Element Element::scaled(const Rational& factor) const {
  Element out(graph_);
  if (factor == 0) return out;
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, c * factor);
  return out;
}

bool Element::operator==(const Element& other) const {
  if (graph_ != other.graph_ && !(*graph_ == *other.graph_)) return false;
  return terms_ == other.terms_;
}

std::string edge_instance_name(const Graph& graph, const EdgeInstance& e) {
  return graph.name(e.source) + ">" + graph.name(e.target) + "#" + std::to_string(e.label);
}

namespace {

std::string path_name(const Graph& graph, const Path& p) {
  std::string out;
  for (const auto& e : p.steps) out += (out.empty() ? "" : " ") + edge_instance_name(graph, e);
  return out;
}

}  // namespace

std::string monomial_name(const Graph& graph, const Monomial& m) {
  if (m.alpha.steps.empty() && m.beta.steps.empty()) return "P_" + graph.name(m.alpha.anchor);
  std::string out;
  if (!m.alpha.steps.empty()) out += "S(" + path_name(graph, m.alpha) + ")";
  if (!m.beta.steps.empty()) out += "S*(" + path_name(graph, m.beta) + ")";
  return out;
}

std::string Element::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) out << (c < 0 ? " - " : " + ");
    else if (c < 0) out << "-";
    first = false;
    const Rational a = abs(c);
    if (a != 1) out << a << "*";
    out << monomial_name(*graph_, m);
  }
  return out.str();
}

Element multiply(const Element& a, const Element& b) { return a * b; }
Element adjoint(const Element& a) { return a.adjoint(); }

namespace {

Path drop_last(const Path& p) {
  Path out = p;
  out.steps.pop_back();
  return out;
}

}  // namespace

Element reduce_modulo_v(const Element& x) {
  const Graph& g = x.graph();
  std::map<VertexIndex, EdgeInstance> special;
  for (auto w : regular_vertices(g)) {
    special[w] = EdgeInstance{w, g.out_edges(w).front().target, 0};
  }
  if (special.empty()) return x;

  auto forbidden = [&](const Monomial& m) {
    if (m.alpha.steps.empty() || m.beta.steps.empty()) return false;
    const EdgeInstance& a = m.alpha.steps.back();
    if (!(a == m.beta.steps.back())) return false;
    const auto it = special.find(a.source);
    return it != special.end() && it->second == a;
  };

  Element out = x;
  while (true) {
    const auto& terms = out.terms();
    const auto hit = std::find_if(terms.begin(), terms.end(),
                                  [&](const auto& t) { return forbidden(t.first); });
    if (hit == terms.end()) break;
    const Monomial m = hit->first;
    const Rational c = hit->second;
    const EdgeInstance e = m.alpha.steps.back();
    const Path a = drop_last(m.alpha);
    const Path b = drop_last(m.beta);
    Element repl = Element::monomial(x.graph_ptr(), Monomial{a, b}, c);
    for (const auto& cls : g.out_edges(e.source)) {
      for (std::uint64_t label = 0; label < cls.multiplicity.count(); ++label) {
        const EdgeInstance f{e.source, cls.target, label};
        if (f == e) continue;
        const Path step = Path::edge(f);
        repl = repl - Element::monomial(x.graph_ptr(), Monomial{a.then(step), b.then(step)}, c);
      }
    }
    out = out - Element::monomial(x.graph_ptr(), m, c) + repl;
  }
  return out;
}

bool equal_in_algebra(const Element& a, const Element& b) {
  return reduce_modulo_v(a - b).is_zero();
}

GeneratorMap::GeneratorMap(GraphPtr source, GraphPtr target)
    : source_(std::move(source)), target_(std::move(target)) {
  if (!source_ || !target_) throw PreconditionError("generator map without graphs");
}

void GeneratorMap::require_target(const Element& image) const {
  if (image.graph_ptr() != target_ && !(image.graph() == *target_)) {
    throw GraphError("image does not live in the target graph");
  }
}

void GeneratorMap::set_vertex(VertexIndex v, Element image) {
  if (v >= source_->vertex_count()) throw GraphError("vertex index out of range");
  require_target(image);
  vertices_.insert_or_assign(v, std::move(image));
}

void GeneratorMap::set_vertex(std::string_view name, Element image) {
  set_vertex(source_->index_of(name), std::move(image));
}

void GeneratorMap::set_edge_rule(VertexIndex source, VertexIndex target, EdgeRule rule) {
  if (!source_->edge(source, target)) throw GraphError("no such edge class in source graph");
  edge_rules_.insert_or_assign({source, target}, std::move(rule));
}

void GeneratorMap::set_uniform_edge(
    std::string_view source, std::string_view target,
    const std::vector<std::pair<std::pair<VertexId, VertexId>, Rational>>& target_classes) {
  std::vector<std::pair<std::pair<VertexIndex, VertexIndex>, Rational>> resolved;
  for (const auto& [cls, c] : target_classes) {
    auto s = target_->index_of(cls.first);
    auto t = target_->index_of(cls.second);
    if (!target_->edge(s, t)) throw GraphError("no such edge class in target graph");
    resolved.push_back({{s, t}, c});
  }
  GraphPtr tgt = target_;
  set_edge_rule(source_->index_of(source), source_->index_of(target),
                [tgt, resolved](std::uint64_t label) {
                  Element out(tgt);
                  for (const auto& [cls, c] : resolved) {
                    out = out + Element::edge(tgt, EdgeInstance{cls.first, cls.second, label})
                                    .scaled(c);
                  }
                  return out;
                });
}

void GeneratorMap::set_edge_zero(std::string_view source, std::string_view target) {
  set_uniform_edge(source, target, {});
}

void GeneratorMap::set_edge_override(const EdgeInstance& e, Element image) {
  Path::edge(e).validate(*source_);
  require_target(image);
  overrides_.insert_or_assign(e, std::move(image));
}

Element GeneratorMap::vertex_image(VertexIndex v) const {
  auto it = vertices_.find(v);
  if (it == vertices_.end()) {
    throw PreconditionError("unmapped generator P_" + source_->name(v));
  }
  return it->second;
}

Element GeneratorMap::edge_image(const EdgeInstance& e) const {
  if (auto it = overrides_.find(e); it != overrides_.end()) return it->second;
  auto it = edge_rules_.find({e.source, e.target});
  if (it == edge_rules_.end()) {
    throw PreconditionError("unmapped generator S_" + edge_instance_name(*source_, e));
  }
  return it->second(e.label);
}

Element apply_map(const GeneratorMap& map, const Element& a) {
  if (a.graph_ptr() != map.source() && !(a.graph() == *map.source())) {
    throw GraphError("element does not live in the source graph of the map");
  }
  Element out(map.target());
  for (const auto& [m, c] : a.terms()) {
    // S_a S_b^* = S_{a1}...S_{ak} S_{bl}^*...S_{b1}^*; P_v only when both are empty.
    std::optional<Element> image;
    auto times = [&](const Element& x) { image = image ? *image * x : x; };
    for (const auto& e : m.alpha.steps) times(map.edge_image(e));
    for (auto it = m.beta.steps.rbegin(); it != m.beta.steps.rend(); ++it) {
      times(map.edge_image(*it).adjoint());
    }
    if (!image) image = map.vertex_image(m.alpha.range());
    out = out + image->scaled(c);
  }
  return out;
}

GeneratorMap compose_maps(const GeneratorMap& outer, const GeneratorMap& inner) {
  if (inner.target() != outer.source() && !(*inner.target() == *outer.source())) {
    throw GraphError("maps are not composable");
  }
  GeneratorMap out(inner.source(), outer.target());
  const Graph& src = *inner.source();
  for (VertexIndex v = 0; v < src.vertex_count(); ++v) {
    out.set_vertex(v, apply_map(outer, inner.vertex_image(v)));
  }
  for (const auto& e : src.edges()) {
    out.set_edge_rule(e.source, e.target,
                      [outer, inner, s = e.source, t = e.target](std::uint64_t label) {
                        return apply_map(outer, inner.edge_image(EdgeInstance{s, t, label}));
                      });
  }
  return out;
}

std::vector<EdgeInstance> edge_instances(const Graph& graph, std::uint64_t label_budget) {
  std::vector<EdgeInstance> out;
  for (const auto& e : graph.edges()) {
    std::uint64_t limit = label_budget;
    if (!e.multiplicity.is_infinite()) limit = std::min(limit, e.multiplicity.count());
    for (std::uint64_t m = 0; m < limit; ++m) out.push_back({e.source, e.target, m});
  }
  return out;
}

bool is_identity(const GeneratorMap& map, std::uint64_t label_budget) {
  if (map.source() != map.target() && !(*map.source() == *map.target())) return false;
  const GraphPtr& g = map.source();
  for (VertexIndex v = 0; v < g->vertex_count(); ++v) {
    if (!(map.vertex_image(v) == Element::vertex(g, v))) return false;
  }
  for (const auto& e : edge_instances(*g, label_budget)) {
    if (!(map.edge_image(e) == Element::edge(g, e))) return false;
  }
  return true;
}

std::string StarHomReport::to_string() const {
  std::ostringstream out;
  out << (passed ? "pass" : "fail") << " (" << checks << " checks)";
  if (first_violation) {
    out << ": relation " << first_violation->relation << " violated: "
        << first_violation->detail;
  }
  return out.str();
}

StarHomReport verify_star_hom(const GeneratorMap& map, std::uint64_t label_budget) {
  if (label_budget < 2) throw PreconditionError("label budget must be at least 2");
  const Graph& src = *map.source();
  const GraphPtr& tgt = map.target();
  StarHomReport report;

  auto check = [&](bool ok, const char* relation, const std::string& detail) {
    ++report.checks;
    if (ok) return true;
    report.passed = false;
    if (!report.first_violation) report.first_violation = RelationViolation{relation, detail};
    return false;
  };

  std::vector<Element> p;
  for (VertexIndex v = 0; v < src.vertex_count(); ++v) p.push_back(map.vertex_image(v));
  const auto instances = edge_instances(src, label_budget);
  std::vector<Element> s;
  std::vector<Element> s_adj;
  for (const auto& e : instances) {
    s.push_back(map.edge_image(e));
    s_adj.push_back(s.back().adjoint());
  }
  auto ename = [&](std::size_t i) { return edge_instance_name(src, instances[i]); };

  for (VertexIndex v = 0; v < src.vertex_count(); ++v) {
    const std::string pv = "P_" + src.name(v);
    if (!check(equal_in_algebra(p[v].adjoint(), p[v]), "projection",
               pv + " image is not self-adjoint")) {
      return report;
    }
    if (!check(equal_in_algebra(p[v] * p[v], p[v]), "projection",
               pv + " image is not idempotent")) {
      return report;
    }
  }
  for (VertexIndex v = 0; v < src.vertex_count(); ++v) {
    for (VertexIndex w = 0; w < src.vertex_count(); ++w) {
      if (v == w) continue;
      if (!check(reduce_modulo_v(p[v] * p[w]).is_zero(), "(i)",
                 "P_" + src.name(v) + " P_" + src.name(w) + " != 0")) {
        return report;
      }
    }
  }
  for (std::size_t a = 0; a < instances.size(); ++a) {
    for (std::size_t b = 0; b < instances.size(); ++b) {
      if (a == b) continue;
      if (!check(reduce_modulo_v(s_adj[a] * s[b]).is_zero(), "(ii)",
                 "S_" + ename(a) + "^* S_" + ename(b) + " != 0")) {
        return report;
      }
    }
  }
  for (std::size_t a = 0; a < instances.size(); ++a) {
    const Element lhs = s_adj[a] * s[a];
    const Element& rhs = p[instances[a].target];
    if (!check(equal_in_algebra(lhs, rhs), "(iii)",
               "S_" + ename(a) + "^* S_" + ename(a) + " = " + lhs.to_string() +
                   ", expected " + rhs.to_string())) {
      return report;
    }
  }
  for (std::size_t a = 0; a < instances.size(); ++a) {
    const Element range = s[a] * s_adj[a];
    if (!check(equal_in_algebra(p[instances[a].source] * range, range), "(iv)",
               "S_" + ename(a) + " S_" + ename(a) + "^* is not below P_" +
                   src.name(instances[a].source))) {
      return report;
    }
  }
  for (auto v : regular_vertices(src)) {
    Element sum(tgt);
    for (const auto& cls : src.out_edges(v)) {
      for (std::uint64_t m = 0; m < cls.multiplicity.count(); ++m) {
        const Element x = map.edge_image(EdgeInstance{cls.source, cls.target, m});
        sum = sum + x * x.adjoint();
      }
    }
    if (!check(equal_in_algebra(sum, p[v]), "(v)",
               "sum of range projections at " + src.name(v) + " = " + sum.to_string() +
                   ", expected " + p[v].to_string())) {
      return report;
    }
  }
  return report;
}

StarHomReport verify_star_hom(const Graph& source, const Graph& target,
                              const GeneratorMap& map, std::uint64_t label_budget) {
  if (!(source == *map.source()) || !(target == *map.target())) {
    throw GraphError("map does not go between the given graphs");
  }
  return verify_star_hom(map, label_budget);
}

}  // namespace qpsgraph
