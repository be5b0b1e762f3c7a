#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qpsgraph/commands.hpp"

namespace {

int emit(const qpsgraph::Report& report, bool as_json) {
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
  if (as_json) {
    std::cout << report.to_json().dump(2) << "\n";
  } else if (report.exit_code == qpsgraph::kExitInputError) {
    std::cerr << report.text;
  } else {
    std::cout << report.text;
  }
  return report.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph algebra toolkit for quantum projective spaces"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "Emit one JSON report instead of text");

  std::string file;
  std::vector<std::string> drop;
  int n = 1;
  bool trace = false;
  double q = 0.5;
  int trunc = 8;
  int winding = 3;
  double tol = qpsgraph::kDefaultTolerance;

  auto* ktheory = app.add_subcommand("ktheory", "K0 and K1 of a graph file");
  ktheory->add_option("file", file, "Graph file")->required();

  auto* ideals = app.add_subcommand("ideals", "Hereditary saturated vertex sets");
  ideals->add_option("file", file, "Graph file")->required();

  auto* quotient = app.add_subcommand("quotient", "Quotient graph by a vertex set");
  quotient->add_option("file", file, "Graph file")->required();
  quotient->add_option("--drop", drop, "Vertices to drop")->required()->delimiter(',');

  auto* splitting = app.add_subcommand("verify-splitting", "Check s_n and q_n");
  splitting->add_option("--n", n, "Dimension n >= 1")->required();

  auto* kk = app.add_subcommand("verify-kk", "Check Pi_n and I_n are inverse");
  kk->add_option("--n", n, "Dimension n >= 1")->required();
  kk->add_flag("--trace", trace, "Print the rewrite trace");

  auto* numerics = app.add_subcommand("numerics", "Truncated operator checks");
  numerics->add_option("--n", n, "Dimension n >= 1")->required();
  numerics->add_option("--q", q, "Deformation parameter in (0, 1)");
  numerics->add_option("--trunc", trunc, "Cutoff N for each k_i (>= 4)");
  numerics->add_option("--winding", winding, "Cutoff M for the winding index (>= 2)");
  numerics->add_option("--tol", tol, "Residual tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : qpsgraph::kExitInputError;
  }

  if (ktheory->parsed()) return emit(qpsgraph::cmd_ktheory(file), as_json);
  if (ideals->parsed()) return emit(qpsgraph::cmd_ideals(file), as_json);
  if (quotient->parsed()) return emit(qpsgraph::cmd_quotient(file, drop), as_json);
  if (splitting->parsed()) return emit(qpsgraph::cmd_verify_splitting(n), as_json);
  if (kk->parsed()) return emit(qpsgraph::cmd_verify_kk(n, trace), as_json);
  if (numerics->parsed()) {
    return emit(qpsgraph::cmd_numerics(n, q, trunc, winding, tol), as_json);
  }
  return qpsgraph::kExitInputError;
}
