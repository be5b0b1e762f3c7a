#pragma once

// Command layer shared by the CLI and the Python module. Every command
// returns a Report; input problems never escape as exceptions.

#include <string>
#include <vector>

#include <json.hpp>

namespace qpsgraph {

inline constexpr const char* kReportSchema = "qpsgraph.report/1";
inline constexpr double kDefaultTolerance = 1e-10;

enum class Verdict { Verified, Failed, Computed };

std::string verdict_name(Verdict v);

enum ExitCode : int { kExitOk = 0, kExitFailed = 1, kExitInputError = 2 };

struct Report {
  std::string command;
  nlohmann::json inputs = nlohmann::json::object();
  Verdict verdict = Verdict::Computed;
  std::string text;
  nlohmann::json payload = nlohmann::json::object();
  std::vector<std::string> warnings;
  std::string error;  // set for input errors
  int exit_code = kExitOk;

  nlohmann::json to_json() const;
};

Report cmd_ktheory(const std::string& path);
Report cmd_ideals(const std::string& path);
// A drop set that is not hereditary and saturated is replaced by its
// closure, with a warning.
Report cmd_quotient(const std::string& path, const std::vector<std::string>& drop);
Report cmd_verify_splitting(int n, unsigned label_budget = 2);
Report cmd_verify_kk(int n, bool with_trace = false);
// Requires 0 < q < 1, N >= 4, M >= 2.
Report cmd_numerics(int n, double q, int N, int M, double tol = kDefaultTolerance);

}  // namespace qpsgraph
