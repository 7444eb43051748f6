#pragma once

#include "genopt/encoding.hpp"
#include "genopt/rng.hpp"

#include <Eigen/Dense>

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace genopt {

/// The user-facing problem interface: a configuration, one function per
/// objective and one penalty function. Implementations must be pure and
/// are shared read-only by every evolver.
class ProblemDefinition {
 public:
  virtual ~ProblemDefinition() = default;

  virtual const ProblemConfig& config() const = 0;
  virtual double compute_objective(int index, const Solution& sol) const = 0;
  virtual double compute_penalty(const Solution& sol) const = 0;

  /// Square data matrices fed to the bidirectional row/column-sum initializer.
  virtual std::vector<Eigen::MatrixXd> init_matrices() const { return {}; }
  /// Problem-specific seeds injected into the oversample pool.
  virtual std::optional<std::vector<Solution>> init_candidates(Rng&) const { return std::nullopt; }
  /// Bytes of read-only instance data touched per evaluation.
  virtual std::size_t payload_bytes() const { return 0; }

  virtual std::string name() const = 0;
};

using ProblemPtr = std::shared_ptr<const ProblemDefinition>;

/// Fills `sol.objectives` and `sol.penalty`. Throws std::invalid_argument if
/// `sol` is not a structurally valid solution for the problem.
void evaluate(const ProblemDefinition& problem, Solution& sol);

/// Same as evaluate() without the validity check; for the engine hot path.
void evaluate_unchecked(const ProblemDefinition& problem, Solution& sol);

/// A blank solution sized for `cfg` (all rows active at their fixed length,
/// MultiPartition rows empty).
Solution make_solution(const ProblemConfig& cfg);

/// Draws a uniformly random structurally valid solution.
Solution random_solution(const ProblemConfig& cfg, Rng& rng);

/// Problem payload. Only the fields a given problem needs are populated.
/// Routing problems index nodes with the depot at 0 and customer c at c + 1.
struct InstanceData {
  std::string name;

  Eigen::MatrixXd distance;  // tsp, routing (depot + customers), qap locations
  Eigen::MatrixXd flow;      // qap
  Eigen::MatrixXd cost;      // assignment (n x n), schedule_binary (workers x shifts)
  Eigen::MatrixXd coords;    // optional node coordinates (rows x 2)

  std::vector<double> weights;  // knapsack / bin_packing item sizes, load_balancing job times
  std::vector<double> values;   // knapsack
  double capacity = 0.0;        // knapsack, bin size, vehicle capacity, max shifts per worker

  std::vector<double> demands;  // routing, per node (depot included)
  std::vector<double> ready;    // vrptw, per node
  std::vector<double> due;      // vrptw, per node
  std::vector<double> service;  // vrptw, per node
  std::vector<int> priorities;  // vrp_priority, per node; larger = more urgent
  int vehicles = 0;

  std::vector<std::pair<int, int>> edges;  // graph_coloring
  int num_vertices = 0;
  int num_colors = 0;
  int num_bins = 0;
  int num_machines = 0;

  Eigen::MatrixXi machines;   // jsp: machine of the k-th operation of job j
  Eigen::MatrixXi durations;  // jsp: duration of the k-th operation of job j

  std::vector<double> coverage;  // schedule_binary: staff required per shift
};

/// Options that change the objective set or the comparison rule of a
/// built-in problem.
struct ProblemOptions {
  /// Routing problems: add the number of nonempty routes as a second objective.
  bool vehicle_objective = false;
  std::optional<ComparisonMode> comparison;
};

/// Names accepted by builtin_problem().
const std::vector<std::string>& builtin_problem_names();

/// Builds one of the bundled problem definitions. Throws
/// std::invalid_argument for an unknown name or an incomplete instance.
ProblemPtr builtin_problem(const std::string& name, const InstanceData& instance,
                           const ProblemOptions& options = {});

}  // namespace genopt
