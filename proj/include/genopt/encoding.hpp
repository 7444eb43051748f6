#pragma once

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace genopt {

enum class EncodingKind { Permutation, Binary, Integer };

struct Encoding {
  EncodingKind kind = EncodingKind::Permutation;
  int lower_bound = 0;  // Integer only, inclusive
  int upper_bound = 0;  // Integer only, inclusive

  static Encoding permutation() { return {EncodingKind::Permutation, 0, 0}; }
  static Encoding binary() { return {EncodingKind::Binary, 0, 1}; }
  static Encoding integer(int lb, int ub);
};

enum class RowMode { SingleSeq, MultiFixed, MultiPartition };

using SolutionMatrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Row-organized solution: `data` is D1 x D2, only the first `dim2_sizes[r]`
/// cells of row r are active.
struct Solution {
  SolutionMatrix data;
  Eigen::VectorXi dim2_sizes;
  Eigen::VectorXd objectives;
  double penalty = 0.0;

  Solution() = default;
  Solution(int d1, int d2, int num_objectives);

  int rows() const { return static_cast<int>(data.rows()); }
  int capacity() const { return static_cast<int>(data.cols()); }
  int size(int r) const { return dim2_sizes[r]; }

  std::span<int> row(int r) { return {data.row(r).data(), static_cast<std::size_t>(dim2_sizes[r])}; }
  std::span<const int> row(int r) const {
    return {data.row(r).data(), static_cast<std::size_t>(dim2_sizes[r])};
  }

  bool feasible() const { return penalty <= 0.0; }

  /// Same active cells, row lengths, objectives and penalty.
  friend bool operator==(const Solution& a, const Solution& b);
};

enum class Direction { Minimize, Maximize };

struct ObjDef {
  std::string name;
  Direction direction = Direction::Minimize;
  double weight = 1.0;
};

struct WeightedMode {
  std::vector<double> weights;
};

struct LexicographicMode {
  std::vector<int> priority_order;
  std::vector<double> tolerances;
};

using ComparisonMode = std::variant<WeightedMode, LexicographicMode>;

struct ProblemConfig {
  Encoding encoding;
  int d1 = 1;
  int d2 = 1;
  int n = 1;
  RowMode row_mode = RowMode::SingleSeq;
  std::vector<ObjDef> obj_defs;
  ComparisonMode comparison = WeightedMode{{1.0}};
  /// Multiplier folding penalty into scalar fitness. Empty = resolved by the
  /// engine from the initial population.
  std::optional<double> penalty_weight;

  int num_objectives() const { return static_cast<int>(obj_defs.size()); }
};

/// Throws std::invalid_argument when the config breaks a type invariant.
void check_config(const ProblemConfig& cfg);

/// Weighted mode from the objective definitions' own weights.
WeightedMode default_weights(const std::vector<ObjDef>& defs);

struct Violation {
  int row = -1;
  int position = -1;
  std::string rule;
};

struct ValidityReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks the encoding/row-mode invariants of `sol` against `cfg`.
/// Throws std::invalid_argument on a dimension mismatch (structural error).
ValidityReport validate_solution(const Solution& sol, const ProblemConfig& cfg);

/// Fast boolean form of validate_solution; never throws.
bool is_valid(const Solution& sol, const ProblemConfig& cfg);

/// Direction-normalized weighted sum: Maximize objectives are negated so a
/// lower scalar is always better.
double scalarize(std::span<const double> objectives, const std::vector<ObjDef>& defs,
                 std::span<const double> weights);

inline double scalarize(const Eigen::VectorXd& objectives, const std::vector<ObjDef>& defs,
                        std::span<const double> weights) {
  return scalarize(std::span<const double>(objectives.data(), objectives.size()), defs, weights);
}

enum class Ordering { ABetter, BBetter, Equal };

/// Penalty-first total comparison; see README for the exact rules.
Ordering compare(const Solution& a, const Solution& b, const ProblemConfig& cfg);

inline bool better(const Solution& a, const Solution& b, const ProblemConfig& cfg) {
  return compare(a, b, cfg) == Ordering::ABetter;
}

/// Scalar fitness used for SA acceptance and logging: weighted scalarization
/// (Lexicographic: the top-priority objective) plus penalty_weight * penalty.
double fitness(const Solution& sol, const ProblemConfig& cfg, double penalty_weight);

/// Acceptance delta of `candidate` relative to `current`; negative = better.
double fitness_delta(const Solution& candidate, const Solution& current, const ProblemConfig& cfg,
                     double penalty_weight);

/// Strict weak ordering used when sorting populations. Agrees with compare()
/// for Weighted mode and for Lexicographic mode with zero tolerances.
bool rank_less(const Solution& a, const Solution& b, const ProblemConfig& cfg);

std::string to_string(EncodingKind k);
std::string to_string(RowMode m);
std::string to_string(Direction d);

}  // namespace genopt
