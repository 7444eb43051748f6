#pragma once

#include "genopt/problem.hpp"

#include <Eigen/Dense>

#include <span>

namespace genopt {

/// Cyclic tour length over the active part of `tour`.
template <typename Derived>
typename Derived::Scalar tour_length(const Eigen::MatrixBase<Derived>& dist, std::span<const int> tour) {
  using Scalar = typename Derived::Scalar;
  const auto n = tour.size();
  if (n < 2) return Scalar(0);
  Scalar len(0);
  for (std::size_t i = 0; i + 1 < n; ++i) len += dist(tour[i], tour[i + 1]);
  len += dist(tour[n - 1], tour[0]);
  return len;
}

class TspProblem final : public ProblemDefinition {
 public:
  explicit TspProblem(Eigen::MatrixXd distance);

  const ProblemConfig& config() const override { return cfg_; }
  double compute_objective(int, const Solution& sol) const override;
  double compute_penalty(const Solution&) const override { return 0.0; }
  std::vector<Eigen::MatrixXd> init_matrices() const override { return {dist_}; }
  std::size_t payload_bytes() const override;
  std::string name() const override { return "tsp"; }

  const Eigen::MatrixXd& distance() const { return dist_; }

 private:
  Eigen::MatrixXd dist_;
  ProblemConfig cfg_;
};

class QapProblem final : public ProblemDefinition {
 public:
  QapProblem(Eigen::MatrixXd flow, Eigen::MatrixXd distance);

  const ProblemConfig& config() const override { return cfg_; }
  double compute_objective(int, const Solution& sol) const override;
  double compute_penalty(const Solution&) const override { return 0.0; }
  std::vector<Eigen::MatrixXd> init_matrices() const override { return {flow_, dist_}; }
  std::size_t payload_bytes() const override;
  std::string name() const override { return "qap"; }

 private:
  Eigen::MatrixXd flow_;
  Eigen::MatrixXd dist_;
  ProblemConfig cfg_;
};

class AssignmentProblem final : public ProblemDefinition {
 public:
  explicit AssignmentProblem(Eigen::MatrixXd cost);

  const ProblemConfig& config() const override { return cfg_; }
  double compute_objective(int, const Solution& sol) const override;
  double compute_penalty(const Solution&) const override { return 0.0; }
  std::vector<Eigen::MatrixXd> init_matrices() const override { return {cost_}; }
  std::size_t payload_bytes() const override;
  std::string name() const override { return "assignment"; }

 private:
  Eigen::MatrixXd cost_;
  ProblemConfig cfg_;
};

enum class RoutingVariant { Cvrp, Vrptw, Priority, Nonlinear };

/// Per-route aggregates shared by the routing objectives and penalties.
struct RouteStats {
  double distance = 0.0;
  double load = 0.0;
  double lateness = 0.0;
  int priority_violations = 0;
};

/// Capacitated routing family. Row r is the visit order of vehicle r;
/// customer c (0-based) is node c + 1 of the distance matrix.
class RoutingProblem final : public ProblemDefinition {
 public:
  RoutingProblem(RoutingVariant variant, const InstanceData& instance, const ProblemOptions& options);

  const ProblemConfig& config() const override { return cfg_; }
  double compute_objective(int index, const Solution& sol) const override;
  double compute_penalty(const Solution& sol) const override;
  std::optional<std::vector<Solution>> init_candidates(Rng& rng) const override;
  std::size_t payload_bytes() const override;
  std::string name() const override;

  RouteStats route_stats(std::span<const int> route) const;
  /// Edge cost multiplier for the load-dependent variant: 1 + 0.3 (load/cap)^2.
  static double nonlinear_factor(double load, double capacity);

  const Eigen::MatrixXd& distance() const { return dist_; }
  double capacity() const { return capacity_; }
  RoutingVariant variant() const { return variant_; }

 private:
  Solution split_by_capacity(std::span<const int> order) const;

  RoutingVariant variant_;
  Eigen::MatrixXd dist_;
  Eigen::MatrixXd coords_;
  std::vector<double> demand_, ready_, due_, service_;
  std::vector<int> priority_;
  double capacity_;
  ProblemConfig cfg_;
};

class KnapsackProblem final : public ProblemDefinition {
 public:
  KnapsackProblem(std::vector<double> weights, std::vector<double> values, double capacity);

  const ProblemConfig& config() const override { return cfg_; }
  double compute_objective(int, const Solution& sol) const override;
  double compute_penalty(const Solution& sol) const override;
  std::optional<std::vector<Solution>> init_candidates(Rng& rng) const override;
  std::size_t payload_bytes() const override { return 16 * weights_.size(); }
  std::string name() const override { return "knapsack"; }

 private:
  std::vector<double> weights_, values_;
  double capacity_;
  ProblemConfig cfg_;
};

class GraphColoringProblem final : public ProblemDefinition {
 public:
  GraphColoringProblem(int vertices, int colors, std::vector<std::pair<int, int>> edges);

  const ProblemConfig& config() const override { return cfg_; }
  double compute_objective(int, const Solution& sol) const override;
  double compute_penalty(const Solution&) const override { return 0.0; }
  std::size_t payload_bytes() const override { return 8 * edges_.size(); }
  std::string name() const override { return "graph_coloring"; }

 private:
  std::vector<std::pair<int, int>> edges_;
  ProblemConfig cfg_;
};

class BinPackingProblem final : public ProblemDefinition {
 public:
  BinPackingProblem(std::vector<double> sizes, double capacity, int bins);

  const ProblemConfig& config() const override { return cfg_; }
  double compute_objective(int, const Solution& sol) const override;
  double compute_penalty(const Solution& sol) const override;
  std::size_t payload_bytes() const override { return 8 * sizes_.size(); }
  std::string name() const override { return "bin_packing"; }

 private:
  std::vector<double> bin_loads(const Solution& sol) const;

  std::vector<double> sizes_;
  double capacity_;
  int bins_;
  ProblemConfig cfg_;
};

class LoadBalancingProblem final : public ProblemDefinition {
 public:
  LoadBalancingProblem(std::vector<double> durations, int machines);

  const ProblemConfig& config() const override { return cfg_; }
  double compute_objective(int, const Solution& sol) const override;
  double compute_penalty(const Solution&) const override { return 0.0; }
  std::size_t payload_bytes() const override { return 8 * durations_.size(); }
  std::string name() const override { return "load_balancing"; }

 private:
  std::vector<double> durations_;
  int machines_;
  ProblemConfig cfg_;
};

/// Job-shop instance: `machines(j, k)` and `durations(j, k)` describe the
/// k-th operation of job j.
struct JobShop {
  Eigen::MatrixXi machines;
  Eigen::MatrixXi durations;
  int jobs() const { return static_cast<int>(machines.rows()); }
  int machine_count() const { return static_cast<int>(machines.cols()); }
};

/// Integer-priority job shop. Operation o = j * M + k; a serial generator
/// repeatedly dispatches the ready operation with the lowest priority
/// (ties: lowest operation index) at its earliest start.
class JspIntProblem final : public ProblemDefinition {
 public:
  explicit JspIntProblem(JobShop shop);

  const ProblemConfig& config() const override { return cfg_; }
  double compute_objective(int, const Solution& sol) const override;
  double compute_penalty(const Solution&) const override { return 0.0; }
  std::size_t payload_bytes() const override;
  std::string name() const override { return "jsp_int"; }

  int makespan(std::span<const int> priorities) const;

 private:
  JobShop shop_;
  ProblemConfig cfg_;
};

/// Multi-sequence job shop: row m is the job order on machine m. Cyclic
/// orders are resolved by forcing the earliest-listed pending job; each
/// forced dispatch adds 1 to the penalty.
class JspPermProblem final : public ProblemDefinition {
 public:
  explicit JspPermProblem(JobShop shop);

  const ProblemConfig& config() const override { return cfg_; }
  double compute_objective(int, const Solution& sol) const override;
  double compute_penalty(const Solution& sol) const override;
  std::size_t payload_bytes() const override;
  std::string name() const override { return "jsp_perm"; }

  struct Decoded {
    int makespan = 0;
    int forced = 0;
  };
  Decoded decode(const Solution& sol) const;

 private:
  JobShop shop_;
  ProblemConfig cfg_;
};

/// Worker x shift binary staffing: minimize assignment cost; penalty is the
/// per-shift coverage shortfall plus shifts beyond each worker's limit.
class ScheduleBinaryProblem final : public ProblemDefinition {
 public:
  ScheduleBinaryProblem(Eigen::MatrixXd cost, std::vector<double> coverage, double max_shifts);

  const ProblemConfig& config() const override { return cfg_; }
  double compute_objective(int, const Solution& sol) const override;
  double compute_penalty(const Solution& sol) const override;
  std::vector<Eigen::MatrixXd> init_matrices() const override { return {}; }
  std::size_t payload_bytes() const override;
  std::string name() const override { return "schedule_binary"; }

 private:
  Eigen::MatrixXd cost_;
  std::vector<double> coverage_;
  double max_shifts_;
  ProblemConfig cfg_;
};

}  // namespace genopt
