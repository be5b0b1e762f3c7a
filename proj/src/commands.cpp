#include "qpsgraph/commands.hpp"

#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <sstream>

#include "qpsgraph/catalog.hpp"
#include "qpsgraph/errors.hpp"
#include "qpsgraph/graph_io.hpp"
#include "qpsgraph/ideals.hpp"
#include "qpsgraph/integer_matrix.hpp"
#include "qpsgraph/kk_rewrite.hpp"
#include "qpsgraph/ktheory.hpp"
#include "qpsgraph/numerics.hpp"
#include "qpsgraph/star_calculus.hpp"

namespace qpsgraph {
namespace {

using nlohmann::json;

json group_json(const AbelianGroup& g) {
  json torsion = json::array();
  for (const auto& d : g.torsion) torsion.push_back(d.str());
  return json{{"free_rank", g.free_rank}, {"torsion", torsion}, {"text", g.to_string()}};
}

json names_json(const Graph& graph, const std::vector<VertexIndex>& idx) {
  json out = json::array();
  for (auto i : idx) out.push_back(graph.name(i));
  return out;
}

json subset_json(const Graph& graph, const VertexSubset& s) {
  json out = json::array();
  for (const auto& name : subset_names(graph, s)) out.push_back(name);
  return out;
}

// Runs `body`; input errors become an exit-2 report.
Report guarded(std::string command, json inputs, const std::function<void(Report&)>& body) {
  Report r;
  r.command = std::move(command);
  r.inputs = std::move(inputs);
  try {
    body(r);
  } catch (const ParseError& e) {
    r.error = e.what();
  } catch (const GraphError& e) {
    r.error = e.what();
  } catch (const PreconditionError& e) {
    r.error = e.what();
  } catch (const SizeLimitError& e) {
    r.error = e.what();
  } catch (const std::ios_base::failure& e) {
    r.error = e.what();
  }
  if (!r.error.empty()) {
    r.verdict = Verdict::Failed;
    r.exit_code = kExitInputError;
    r.text = "error: " + r.error + "\n";
    r.payload = json::object();
  }
  return r;
}

void set_check_verdict(Report& r, bool ok) {
  r.verdict = ok ? Verdict::Verified : Verdict::Failed;
  r.exit_code = ok ? kExitOk : kExitFailed;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

json star_report_json(const StarHomReport& rep) {
  json j{{"passed", rep.passed}, {"checks", rep.checks}};
  if (rep.first_violation) {
    j["violation"] = {{"relation", rep.first_violation->relation},
                      {"detail", rep.first_violation->detail}};
  }
  return j;
}

json trace_json(const kk::Trace& trace) {
  json out = json::array();
  for (const auto& step : trace) {
    out.push_back(
        {{"rule", step.rule}, {"entry", step.entry}, {"before", step.before}, {"after", step.after}});
  }
  return out;
}

std::string fmt_residual(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

}  // namespace

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Verified: return "verified";
    case Verdict::Failed: return "failed";
    case Verdict::Computed: return "computed";
  }
  return "failed";
}

json Report::to_json() const {
  json j{{"schema", kReportSchema},
         {"command", command},
         {"inputs", inputs},
         {"verdict", verdict_name(verdict)},
         {"exit_code", exit_code},
         {"payload", payload},
         {"warnings", warnings}};
  if (!error.empty()) j["error"] = error;
  return j;
}

Report cmd_ktheory(const std::string& path) {
  return guarded("ktheory", {{"file", path}}, [&](Report& r) {
    const Graph g = read_graph_file(path);
    const KGroups k = k_groups(g);
    r.text = "K0 = " + k.k0.to_string() + ", K1 = " + k.k1.to_string() + "\n";
    r.payload = {{"k0", group_json(k.k0)},
                 {"k1", group_json(k.k1)},
                 {"vertices", g.vertex_count()},
                 {"regular", names_json(g, regular_vertices(g))},
                 {"sinks", names_json(g, sinks(g))},
                 {"infinite_emitters", names_json(g, infinite_emitters(g))}};
  });
}

Report cmd_ideals(const std::string& path) {
  return guarded("ideals", {{"file", path}}, [&](Report& r) {
    const Graph g = read_graph_file(path);
    const IdealLattice lattice = enumerate_hereditary_saturated(g);
    std::ostringstream os;
    os << lattice.size() << " hereditary saturated subsets"
       << (lattice.is_chain() ? " (chain)" : "") << "\n";
    json members = json::array();
    for (const auto& h : lattice.members) {
      os << "  " << subset_to_string(g, h) << "\n";
      members.push_back(subset_json(g, h));
    }
    json order = json::array();
    for (std::size_t a = 0; a < lattice.size(); ++a) {
      for (std::size_t b = 0; b < lattice.size(); ++b) {
        if (a != b && lattice.leq(a, b)) order.push_back({a, b});
      }
    }
    r.text = os.str();
    r.payload = {{"size", lattice.size()},
                 {"is_chain", lattice.is_chain()},
                 {"members", members},
                 {"inclusions", order}};
  });
}

Report cmd_quotient(const std::string& path, const std::vector<std::string>& drop) {
  return guarded("quotient", {{"file", path}, {"drop", drop}}, [&](Report& r) {
    const Graph g = read_graph_file(path);
    const VertexSubset requested = subset_of(g, drop);
    VertexSubset h = requested;
    if (!is_hereditary_saturated(g, h)) {
      h = saturate(g, h);
      r.warnings.push_back("drop set " + subset_to_string(g, requested) +
                           " is not hereditary and saturated; using " + subset_to_string(g, h));
    }
    const Graph quotient = quotient_graph(g, h);
    r.text = serialize_graph(quotient);
    r.payload = {{"requested", subset_json(g, requested)},
                 {"used", subset_json(g, h)},
                 {"h_inf_fin", subset_json(g, h_inf_fin(g, h))},
                 {"graph", r.text}};
  });
}

Report cmd_verify_splitting(int n, unsigned label_budget) {
  return guarded("verify-splitting", {{"n", n}, {"label_budget", label_budget}}, [&](Report& r) {
    if (n < 1) throw PreconditionError("n must be at least 1");
    const auto start = std::chrono::steady_clock::now();
    const GeneratorMap s = splitting_map(n);
    const GeneratorMap q = quotient_map(n);
    const StarHomReport s_rep = verify_star_hom(s, label_budget);
    const StarHomReport q_rep = verify_star_hom(q, label_budget);
    const bool id = is_identity(compose_maps(q, s), label_budget);
    const bool ok = s_rep.passed && q_rep.passed && id;
    std::ostringstream os;
    os << "s_" << n << ": " << s_rep.to_string() << "\n";
    os << "q_" << n << ": " << q_rep.to_string() << "\n";
    os << "q_" << n << " o s_" << n << " = id on generators: " << (id ? "yes" : "no") << "\n";
    os << (ok ? "verified" : "failed") << "\n";
    r.text = os.str();
    r.payload = {{"splitting", star_report_json(s_rep)},
                 {"quotient", star_report_json(q_rep)},
                 {"composite_is_identity", id},
                 {"seconds", seconds_since(start)}};
    set_check_verdict(r, ok);
  });
}

Report cmd_verify_kk(int n, bool with_trace) {
  return guarded("verify-kk", {{"n", n}, {"trace", with_trace}}, [&](Report& r) {
    if (n < 1) throw PreconditionError("n must be at least 1");
    const kk::EquivalenceReport eq = kk::verify_kk_equivalence(n);
    const kk::MoritaResult morita = kk::morita_compress(n);
    const bool ok = eq.passed && morita.report.passed;
    std::ostringstream os;
    os << eq.to_string(with_trace);
    os << "Morita compression: " << (morita.report.passed ? "inverse pair" : "not inverse")
       << "\n";
    os << (ok ? "verified" : "failed") << "\n";
    r.text = os.str();
    r.payload = {{"equivalence", eq.passed},
                 {"morita", morita.report.passed},
                 {"rules_used", eq.rules_used},
                 {"pi", kk::build_Pi(n).to_string()},
                 {"i", kk::build_I(n).to_string()}};
    if (with_trace) {
      r.payload["left_trace"] = trace_json(eq.left_trace);
      r.payload["right_trace"] = trace_json(eq.right_trace);
    }
    set_check_verdict(r, ok);
  });
}

Report cmd_numerics(int n, double q, int N, int M, double tol) {
  json inputs{{"n", n}, {"q", q}, {"trunc", N}, {"winding", M}, {"tol", tol}};
  return guarded("numerics", inputs, [&](Report& r) {
    using namespace numerics;
    if (n < 1) throw PreconditionError("n must be at least 1");
    if (!(q > 0.0 && q < 1.0)) throw PreconditionError("q must lie in (0, 1)");
    if (N < 4) throw PreconditionError("truncation N must be at least 4");
    if (M < 2) throw PreconditionError("winding cutoff M must be at least 2");
    if (!(tol > 0.0)) throw PreconditionError("tolerance must be positive");
    const auto start = std::chrono::steady_clock::now();
    const Truncation box = Truncation::with_winding(n, N, M);
    const RepresentationTable psi = rep_psi(n, q, N);
    const RepresentationTable pi = rep_pi(q, box);
    const RepresentationTable rho = rep_rho(box);

    struct Row {
      std::string representation;
      RelationSet set;
      const RepresentationTable* table;
      bool gated;
    };
    const std::vector<Row> rows = {
        {"psi", RelationSet::Sphere, &psi, true},
        {"pi", RelationSet::Sphere, &pi, true},
        {"rho", RelationSet::Graph, &rho, true},
        {"psi", RelationSet::ProjectionEntries, &psi, true},
        {"psi", RelationSet::ProjectiveCommutation, &psi, true},
        {"psi", RelationSet::SphereAsPrinted, &psi, false},
    };

    bool ok = true;
    std::ostringstream os;
    os << "relation residuals (interior, margin " << kRelationMargin << ")\n";
    json residuals = json::array();
    for (const auto& row : rows) {
      const ResidualReport rep = relation_residuals(*row.table, row.set);
      const double worst = rep.max_residual();
      const bool pass = worst < tol;
      if (row.gated) ok = ok && pass;
      os << "  " << row.representation << " " << relation_set_name(row.set) << ": "
         << fmt_residual(worst)
         << (row.gated ? (pass ? "  ok" : "  FAIL") : "  (reference, not gated)") << "\n";
      json entries = json::array();
      for (const auto& e : rep.entries) entries.push_back({{"relation", e.relation}, {"residual", e.residual}});
      residuals.push_back({{"representation", row.representation},
                           {"set", relation_set_name(row.set)},
                           {"gated", row.gated},
                           {"max_residual", worst},
                           {"interior_vectors", rep.interior_vectors},
                           {"entries", entries}});
    }

    os << "projection limit on pi (deviation from closed form, m = -M skipped)\n";
    json convergence = json::array();
    for (int l = 1; l <= n; ++l) {
      json series = json::array();
      os << "  l=" << l << ":";
      std::vector<int> schedule;
      for (int steps = 1; steps < l * N; steps *= 2) schedule.push_back(steps);
      schedule.push_back(l * N);
      for (int steps : schedule) {
        const double d = limit_deviation(l, steps, pi);
        series.push_back({{"steps", steps}, {"deviation", d}});
        os << " " << steps << "->" << fmt_residual(d);
      }
      os << "\n";
      convergence.push_back({{"l", l}, {"series", series}});
    }

    const ResidualReport relproj = check_rel_proj(n, q, box);
    const bool relproj_ok = relproj.within(tol);
    ok = ok && relproj_ok;
    os << "rel-proj: max " << fmt_residual(relproj.max_residual()) << (relproj_ok ? "  ok" : "  FAIL")
       << "\n";
    json relproj_entries = json::array();
    for (const auto& e : relproj.entries) {
      relproj_entries.push_back({{"relation", e.relation}, {"residual", e.residual}});
    }

    const IntegerMatrix basis = basis_change_matrix(n);
    const BigInt det = determinant(basis);
    const bool det_ok = det == 1 || det == -1;
    ok = ok && det_ok;
    os << "basis-change determinant: " << det.str() << (det_ok ? "  ok" : "  FAIL") << "\n";
    os << (ok ? "verified" : "failed") << "\n";

    r.text = os.str();
    r.payload = {{"dimension", box.dimension()},
                 {"residuals", residuals},
                 {"convergence", convergence},
                 {"rel_proj", {{"passed", relproj_ok}, {"entries", relproj_entries}}},
                 {"basis_matrix", basis.to_string()},
                 {"determinant", det.str()},
                 {"seconds", seconds_since(start)}};
    set_check_verdict(r, ok);
  });
}

}  // namespace qpsgraph
