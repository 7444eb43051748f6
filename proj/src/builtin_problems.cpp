#include "genopt/problems.hpp"

#include <stdexcept>

namespace genopt {

namespace {

[[noreturn]] void malformed(const std::string& problem, const std::string& what) {
  throw std::invalid_argument("malformed instance for " + problem + ": " + what);
}

void check_distance(const std::string& problem, const Eigen::MatrixXd& d) {
  if (d.rows() == 0 || d.rows() != d.cols()) malformed(problem, "distance matrix must be square and nonempty");
  if ((d.array() < 0).any()) malformed(problem, "distance matrix has negative entries");
  if (d.diagonal().cwiseAbs().maxCoeff() != 0) malformed(problem, "distance matrix diagonal must be zero");
}

}  // namespace

const std::vector<std::string>& builtin_problem_names() {
  static const std::vector<std::string> names = {
      "tsp",        "cvrp",     "vrptw",   "knapsack",        "qap",          "assignment",    "graph_coloring",
      "bin_packing", "load_balancing", "jsp_int", "jsp_perm", "schedule_binary", "vrp_priority", "vrp_nonlinear"};
  return names;
}

ProblemPtr builtin_problem(const std::string& name, const InstanceData& in, const ProblemOptions& options) {
  auto routing = [&](RoutingVariant v) {
    check_distance(name, in.distance);
    return std::make_shared<RoutingProblem>(v, in, options);
  };
  auto shop = [&]() {
    if (in.machines.size() == 0) malformed(name, "missing machines/durations");
    return JobShop{in.machines, in.durations};
  };

  try {
    if (name == "tsp") {
      check_distance(name, in.distance);
      return std::make_shared<TspProblem>(in.distance);
    }
    if (name == "cvrp") return routing(RoutingVariant::Cvrp);
    if (name == "vrptw") return routing(RoutingVariant::Vrptw);
    if (name == "vrp_priority") return routing(RoutingVariant::Priority);
    if (name == "vrp_nonlinear") return routing(RoutingVariant::Nonlinear);
    if (name == "knapsack") return std::make_shared<KnapsackProblem>(in.weights, in.values, in.capacity);
    if (name == "qap") {
      check_distance(name, in.distance);
      return std::make_shared<QapProblem>(in.flow, in.distance);
    }
    if (name == "assignment") return std::make_shared<AssignmentProblem>(in.cost);
    if (name == "graph_coloring") {
      const int v = in.num_vertices > 0 ? in.num_vertices : 0;
      return std::make_shared<GraphColoringProblem>(v, in.num_colors, in.edges);
    }
    if (name == "bin_packing") {
      const int bins = in.num_bins > 0 ? in.num_bins : static_cast<int>(in.weights.size());
      return std::make_shared<BinPackingProblem>(in.weights, in.capacity, bins);
    }
    if (name == "load_balancing") return std::make_shared<LoadBalancingProblem>(in.weights, in.num_machines);
    if (name == "jsp_int") return std::make_shared<JspIntProblem>(shop());
    if (name == "jsp_perm") return std::make_shared<JspPermProblem>(shop());
    if (name == "schedule_binary") return std::make_shared<ScheduleBinaryProblem>(in.cost, in.coverage, in.capacity);
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    if (msg.rfind("malformed instance", 0) == 0) throw;
    malformed(name, msg);
  }
  throw std::invalid_argument("unknown problem: " + name);
}

}  // namespace genopt
