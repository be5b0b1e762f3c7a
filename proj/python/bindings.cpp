#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qpsgraph/catalog.hpp"
#include "qpsgraph/commands.hpp"
#include "qpsgraph/errors.hpp"
#include "qpsgraph/graph.hpp"
#include "qpsgraph/graph_io.hpp"
#include "qpsgraph/ideals.hpp"
#include "qpsgraph/integer_matrix.hpp"
#include "qpsgraph/ktheory.hpp"
#include "qpsgraph/numerics.hpp"

namespace py = pybind11;
using namespace qpsgraph;

namespace {

py::object to_py_int(const BigInt& x) { return py::int_(py::str(x.str())); }

py::list matrix_to_py(const IntegerMatrix& m) {
  py::list rows;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    py::list row;
    for (std::size_t c = 0; c < m.cols(); ++c) row.append(to_py_int(m(r, c)));
    rows.append(row);
  }
  return rows;
}

IntegerMatrix matrix_from_py(const std::vector<std::vector<long long>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  IntegerMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw PreconditionError("ragged matrix");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

py::dict group_to_py(const AbelianGroup& g) {
  py::dict d;
  d["free_rank"] = g.free_rank;
  py::list torsion;
  for (const auto& t : g.torsion) torsion.append(to_py_int(t));
  d["torsion"] = torsion;
  d["text"] = g.to_string();
  return d;
}

std::vector<std::string> names(const Graph& g, const std::vector<VertexIndex>& idx) {
  std::vector<std::string> out;
  for (auto i : idx) out.push_back(g.name(i));
  return out;
}

Graph make_graph(std::vector<std::string> vertices,
                 const std::vector<std::tuple<std::string, std::string, py::object>>& edges) {
  std::vector<EdgeSpec> specs;
  for (const auto& [s, t, mult] : edges) {
    Multiplicity m;
    if (py::isinstance<py::str>(mult) && mult.cast<std::string>() == "inf") {
      m = Multiplicity::infinite();
    } else {
      const long long c = mult.cast<long long>();
      if (c < 0) throw GraphError("negative multiplicity");
      m = Multiplicity(static_cast<std::uint64_t>(c));
    }
    specs.push_back({s, t, m});
  }
  return build_graph(std::move(vertices), specs);
}

std::string report_json(const Report& r) { return r.to_json().dump(); }

numerics::RelationSet relation_set_from(const std::string& name) {
  using numerics::RelationSet;
  for (auto s : {RelationSet::Sphere, RelationSet::SphereAsPrinted, RelationSet::Graph,
                 RelationSet::ProjectionEntries, RelationSet::ProjectiveCommutation}) {
    if (numerics::relation_set_name(s) == name) return s;
  }
  throw PreconditionError("unknown relation set " + name);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Graph algebra toolkit for quantum projective spaces";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<SizeLimitError>(m, "SizeLimitError", PyExc_ValueError);

  py::class_<Graph>(m, "Graph")
      .def(py::init(&make_graph), py::arg("vertices"), py::arg("edges") = py::list())
      .def_static("parse", [](const std::string& text) { return parse_graph(text); })
      .def_property_readonly("vertices", &Graph::vertices)
      .def_property_readonly("edges",
                             [](const Graph& g) {
                               py::list out;
                               for (const auto& e : g.edges()) {
                                 py::object mult = e.multiplicity.is_infinite()
                                                       ? py::object(py::str("inf"))
                                                       : py::object(py::int_(e.multiplicity.count()));
                                 out.append(py::make_tuple(g.name(e.source), g.name(e.target), mult));
                               }
                               return out;
                             })
      .def("regular_vertices", [](const Graph& g) { return names(g, regular_vertices(g)); })
      .def("sinks", [](const Graph& g) { return names(g, sinks(g)); })
      .def("infinite_emitters", [](const Graph& g) { return names(g, infinite_emitters(g)); })
      .def("is_row_finite", [](const Graph& g) { return is_row_finite(g); })
      .def("serialize", [](const Graph& g) { return serialize_graph(g); })
      .def("__len__", &Graph::vertex_count)
      .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
      .def("__repr__", [](const Graph& g) {
        return "<Graph " + std::to_string(g.vertex_count()) + " vertices, " +
               std::to_string(g.edges().size()) + " edge classes>";
      });

  m.def("sphere_graph", &sphere_graph, py::arg("n"));
  m.def("projective_graph", &projective_graph, py::arg("n"));
  m.def("graph_isomorphic", &graph_isomorphic);

  m.def("smith_normal_form", [](const std::vector<std::vector<long long>>& rows) {
    const SmithDecomposition snf = smith_normal_form(matrix_from_py(rows));
    py::dict d;
    d["U"] = matrix_to_py(snf.U);
    d["D"] = matrix_to_py(snf.D);
    d["V"] = matrix_to_py(snf.V);
    return d;
  });
  m.def("k_groups", [](const Graph& g) {
    const KGroups k = k_groups(g);
    return py::make_tuple(group_to_py(k.k0), group_to_py(k.k1));
  });

  m.def("hereditary_saturated_sets", [](const Graph& g) {
    std::vector<std::vector<std::string>> out;
    for (const auto& h : enumerate_hereditary_saturated(g).members) out.push_back(subset_names(g, h));
    return out;
  });
  m.def("saturate", [](const Graph& g, const std::vector<std::string>& h) {
    return subset_names(g, saturate(g, subset_of(g, h)));
  });
  m.def("quotient_graph", [](const Graph& g, const std::vector<std::string>& h) {
    return quotient_graph(g, subset_of(g, h));
  });

  m.def("basis_change_matrix", [](int n) { return matrix_to_py(basis_change_matrix(n)); });
  m.def("basis_change_determinant", [](int n) { return to_py_int(determinant(basis_change_matrix(n))); });

  m.def(
      "relation_residual",
      [](const std::string& representation, const std::string& relations, int n, double q, int N,
         int M) {
        numerics::RepresentationTable table;
        if (representation == "psi") {
          table = numerics::rep_psi(n, q, N);
        } else if (representation == "pi") {
          table = numerics::rep_pi(q, numerics::Truncation::with_winding(n, N, M));
        } else if (representation == "rho") {
          table = numerics::rep_rho(numerics::Truncation::with_winding(n, N, M));
        } else {
          throw PreconditionError("representation must be psi, pi or rho");
        }
        return numerics::relation_residuals(table, relation_set_from(relations)).max_residual();
      },
      py::arg("representation"), py::arg("relations"), py::arg("n"), py::arg("q") = 0.5,
      py::arg("N") = 8, py::arg("M") = 3);

  // Commands return the JSON report as a string; the package wraps them.
  m.def("cmd_ktheory", [](const std::string& p) { return report_json(cmd_ktheory(p)); });
  m.def("cmd_ideals", [](const std::string& p) { return report_json(cmd_ideals(p)); });
  m.def("cmd_quotient", [](const std::string& p, const std::vector<std::string>& drop) {
    return report_json(cmd_quotient(p, drop));
  });
  m.def("cmd_verify_splitting", [](int n) { return report_json(cmd_verify_splitting(n)); });
  m.def("cmd_verify_kk", [](int n, bool trace) { return report_json(cmd_verify_kk(n, trace)); },
        py::arg("n"), py::arg("trace") = false);
  m.def(
      "cmd_numerics",
      [](int n, double q, int N, int M, double tol) {
        return report_json(cmd_numerics(n, q, N, M, tol));
      },
      py::arg("n"), py::arg("q") = 0.5, py::arg("N") = 8, py::arg("M") = 3,
      py::arg("tol") = kDefaultTolerance);
}
