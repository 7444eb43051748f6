#pragma once

#include "genopt/engine.hpp"
#include "genopt/problem.hpp"

#include <array>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace genopt {

/// Malformed or truncated input. `line` is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, int line, const std::string& message);
  const std::string& source() const { return source_; }
  int line() const { return line_; }

 private:
  std::string source_;
  int line_;
};

/// TSPLIB TSP/CVRP: EUC_2D, CEIL_2D, ATT and EXPLICIT (FULL_MATRIX,
/// UPPER_ROW, LOWER_ROW, UPPER_DIAG_ROW, LOWER_DIAG_ROW). For CVRP the depot
/// becomes node 0.
InstanceData parse_tsplib_text(std::string_view text, const std::string& source = "<tsplib>");
/// n, then the flow matrix, then the distance matrix.
InstanceData parse_qaplib_text(std::string_view text, const std::string& source = "<qaplib>");
/// Solomon VRPTW layout; node 0 is the depot. Distances are unrounded Euclidean.
InstanceData parse_solomon_text(std::string_view text, const std::string& source = "<solomon>");
/// "jobs machines" followed by one row of (machine, duration) pairs per job.
InstanceData parse_orlib_jsp_text(std::string_view text, const std::string& source = "<jsp>");
/// "n capacity" followed by n lines of "value weight".
InstanceData parse_knapsack_text(std::string_view text, const std::string& source = "<knapsack>");

/// An instance file together with what it says about itself.
struct LoadedInstance {
  std::string problem;  // empty when the file does not name one
  InstanceData data;
  std::optional<double> best_known;
  ProblemOptions options;
};

/// JSON instance document (see README for the keys).
LoadedInstance parse_json_instance(std::string_view text, const std::string& source = "<json>");

std::string read_file(const std::string& path);

/// Picks a parser from the extension and the problem name: .json always
/// JSON; otherwise tsp/cvrp -> TSPLIB, qap -> QAPLIB, vrptw -> Solomon,
/// jsp_* -> OR-Library, knapsack -> its text format, anything else JSON.
LoadedInstance load_instance(const std::string& path, const std::string& problem_hint);

/// TSPLIB nearest-integer Euclidean distance.
double tsplib_nint(double x);

struct ObjectiveValue {
  std::string name;
  std::string direction;
  double value = 0.0;
};

/// One (instance, seed) outcome in the shape written to result documents.
struct ResultRecord {
  std::string problem;
  std::string instance;
  std::uint64_t seed = 0;
  std::vector<ObjectiveValue> objectives;
  double penalty = 0.0;
  bool feasible = true;
  std::optional<double> gap_pct;
  std::optional<double> best_known;
  double best_phi = 0.0;
  int generations = 0;
  double elapsed_s = 0.0;
  double gens_per_sec = 0.0;
  std::vector<std::vector<int>> solution;
  std::vector<WeightEntry> final_weights;
  std::array<double, 3> k_weights{};
  ProblemProfile profile;
  ResolvedSettings settings;
  std::vector<std::string> warnings;
  std::string tool_version;

  friend bool operator==(const ResultRecord& a, const ResultRecord& b);
};

std::string tool_version();

ResultRecord make_record(const std::string& problem, const std::string& instance, const ProblemConfig& cfg,
                         const RunResult& result, std::optional<double> best_known);

/// Canonical JSON document: fixed key order, round-trip precision.
std::string emit_result(const ResultRecord& record);
/// Array form for sweeps.
std::string emit_results(const std::vector<ResultRecord>& records);
/// Throws ParseError on a document that does not follow the schema.
ResultRecord parse_result(std::string_view text);

/// Command-line entry point. Exit codes: 0 ok, 1 usage, 2 parse error,
/// 3 internal error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace genopt
