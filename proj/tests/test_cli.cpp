#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "qpsgraph/catalog.hpp"
#include "qpsgraph/commands.hpp"
#include "qpsgraph/graph_io.hpp"
#include "qpsgraph/ideals.hpp"
#include "qpsgraph/ktheory.hpp"

using namespace qpsgraph;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("qpsgraph_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write_file(const std::string& name, const std::string& text) {
  const fs::path p = scratch_dir() / name;
  std::ofstream(p) << text;
  return p.string();
}

struct Run {
  int code = -1;
  std::string out;
};

Run run_cli(const std::string& args) {
  const fs::path out = scratch_dir() / "stdout.txt";
  const std::string cmd =
      std::string(QPSGRAPH_CLI_PATH) + " " + args + " > " + out.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  return r;
}

}  // namespace

TEST_CASE("cmd_ktheory") {
  const std::string f3 = write_file("f3.graph", serialize_graph(projective_graph(3)));
  const Report r = cmd_ktheory(f3);
  CHECK(r.exit_code == 0);
  CHECK(r.verdict == Verdict::Computed);
  CHECK(r.text == "K0 = Z^4, K1 = 0\n");
  CHECK(r.payload["k0"]["free_rank"] == 4);

  const std::string l5 = write_file("l5.graph", serialize_graph(sphere_graph(2)));
  CHECK(cmd_ktheory(l5).text == "K0 = Z, K1 = Z\n");

  const Report empty = cmd_ktheory(write_file("empty.graph", ""));
  CHECK(empty.exit_code == 2);
  CHECK_FALSE(empty.error.empty());
  CHECK(cmd_ktheory((scratch_dir() / "missing.graph").string()).exit_code == 2);
  CHECK(cmd_ktheory(write_file("bad.graph", "vertex a\nedge a b 1\n")).exit_code == 2);
}

TEST_CASE("cmd_ideals and cmd_quotient") {
  const std::string f2 = write_file("f2.graph", serialize_graph(projective_graph(2)));
  const Report ideals = cmd_ideals(f2);
  CHECK(ideals.exit_code == 0);
  CHECK(ideals.payload["size"] == 4);
  CHECK(ideals.payload["is_chain"] == true);

  const std::string f3 = write_file("f3.graph", serialize_graph(projective_graph(3)));
  const Report q = cmd_quotient(f3, {"w4"});
  CHECK(q.exit_code == 0);
  CHECK(q.warnings.empty());
  CHECK(q.text == serialize_graph(projective_graph(2)));

  const Report widened = cmd_quotient(f3, {"w3"});
  CHECK(widened.exit_code == 0);
  REQUIRE(widened.warnings.size() == 1);
  CHECK(widened.payload["used"] == nlohmann::json::array({"w3", "w4"}));
  CHECK(parse_graph(widened.text) == projective_graph(1));

  CHECK(cmd_quotient(f3, {"zz"}).exit_code == 2);
}

TEST_CASE("round trip: quotient output feeds ktheory") {
  const std::vector<std::pair<Graph, std::vector<std::string>>> cases = {
      {projective_graph(4), {"w5"}},
      {projective_graph(4), {"w2"}},
      {sphere_graph(3), {"v4"}},
      {build_graph({"x", "v", "h", "u"}, {{"x", "v", Multiplicity(2)},
                                          {"v", "h", Multiplicity::infinite()},
                                          {"v", "u", Multiplicity(1)}}),
       {"h"}},
  };
  int i = 0;
  for (const auto& [g, drop] : cases) {
    const std::string path = write_file("rt" + std::to_string(i++) + ".graph", serialize_graph(g));
    const Report q = cmd_quotient(path, drop);
    REQUIRE(q.exit_code == 0);
    const std::string out = write_file("rt_out.graph", q.text);
    const Report k = cmd_ktheory(out);
    const Graph in_memory = quotient_graph(g, saturate(g, subset_of(g, drop)));
    const KGroups expected = k_groups(in_memory);
    CHECK(k.text == "K0 = " + expected.k0.to_string() + ", K1 = " + expected.k1.to_string() + "\n");
  }
}

TEST_CASE("cmd_verify_splitting and cmd_verify_kk") {
  for (int n : {1, 3, 5}) {
    const Report s = cmd_verify_splitting(n);
    CHECK(s.exit_code == 0);
    CHECK(s.verdict == Verdict::Verified);
    const Report k = cmd_verify_kk(n);
    CHECK(k.exit_code == 0);
    CHECK(k.verdict == Verdict::Verified);
  }
  const Report traced = cmd_verify_kk(2, true);
  CHECK(traced.payload["right_trace"].size() == 2);
  CHECK(traced.text.find("[R4]") != std::string::npos);
  CHECK(cmd_verify_splitting(0).exit_code == 2);
  CHECK(cmd_verify_kk(0).exit_code == 2);
}

TEST_CASE("cmd_numerics") {
  const Report a = cmd_numerics(2, 0.5, 8, 3);
  CHECK(a.exit_code == 0);
  CHECK(a.payload["determinant"] == "1");
  for (const auto& row : a.payload["residuals"]) {
    if (row["gated"].get<bool>()) CHECK(row["max_residual"].get<double>() < 1e-10);
  }
  CHECK(cmd_numerics(1, 0.3, 6, 2).exit_code == 0);
  CHECK(cmd_numerics(1, 1.5, 6, 2).exit_code == 2);
  CHECK(cmd_numerics(1, 0.5, 3, 2).exit_code == 2);
  CHECK(cmd_numerics(1, 0.5, 6, 1).exit_code == 2);
  // An absurd tolerance makes the same run fail.
  CHECK(cmd_numerics(1, 0.5, 6, 2, 1e-40).exit_code == 1);
}

TEST_CASE("report json") {
  const Report r = cmd_verify_splitting(1);
  const nlohmann::json j = r.to_json();
  CHECK(j["schema"] == kReportSchema);
  CHECK(j["command"] == "verify-splitting");
  CHECK(j["verdict"] == "verified");
  CHECK(j["inputs"]["n"] == 1);
}

TEST_CASE("command-line binary") {
  const std::string f3 = write_file("cli_f3.graph", serialize_graph(projective_graph(3)));
  Run r = run_cli("ktheory " + f3);
  CHECK(r.code == 0);
  CHECK(r.out == "K0 = Z^4, K1 = 0\n");

  r = run_cli("--json ktheory " + f3);
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["payload"]["k0"]["text"] == "Z^4");

  CHECK(run_cli("ktheory " + write_file("cli_empty.graph", "")).code == 2);
  CHECK(run_cli("quotient " + f3 + " --drop w4").out == serialize_graph(projective_graph(2)));
  CHECK(run_cli("quotient " + f3 + " --drop w3").code == 0);
  CHECK(run_cli("ideals " + f3).code == 0);
  CHECK(run_cli("verify-splitting --n 2").code == 0);
  r = run_cli("verify-kk --n 2 --trace");
  CHECK(r.code == 0);
  CHECK(r.out.find("(q(2),s(2)) + (pi(2),j(2))  =>  id_CP(2)") != std::string::npos);
  CHECK(run_cli("numerics --n 1 --q 0.3 --trunc 6 --winding 2").code == 0);
  CHECK(run_cli("numerics --n 1 --q 1.5").code == 2);
  CHECK(run_cli("numerics --n 1 --tol 1e-40 --trunc 6 --winding 2").code == 1);
  CHECK(run_cli("no-such-command").code == 2);
  CHECK(run_cli("verify-kk").code == 2);
  CHECK(run_cli("verify-kk --n x").code == 2);
  CHECK(run_cli("--help").code == 0);

  // Same input, same output.
  CHECK(run_cli("--json verify-kk --n 3").out.size() > 0);
  const std::string once = run_cli("ideals " + f3).out;
  CHECK(run_cli("ideals " + f3).out == once);
}
