#pragma once

#include "genopt/bench_io.hpp"
#include "genopt/problems.hpp"
#include "oracles.hpp"

#include <string>

namespace testing_support {

inline std::string data_path(const std::string& name) { return std::string(GENOPT_TEST_DATA) + "/" + name; }

inline genopt::LoadedInstance desk(const std::string& name) {
  return genopt::parse_json_instance(genopt::read_file(data_path("desk/" + name + ".json")), name);
}

inline genopt::ProblemPtr desk_problem(const std::string& name) {
  const auto li = desk(name);
  return genopt::builtin_problem(li.problem, li.data, li.options);
}

inline oracle::Matrix to_rows(const Eigen::MatrixXd& m) {
  oracle::Matrix out(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) out[r].push_back(m(r, c));
  return out;
}

inline std::vector<std::vector<int>> to_rows(const Eigen::MatrixXi& m) {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) out[r].push_back(m(r, c));
  return out;
}

/// Exhaustive optimum of a desk instance, from the oracles only.
inline double desk_optimum(const std::string& name) {
  const auto li = desk(name);
  const auto& d = li.data;
  if (li.problem == "tsp") return oracle::tsp(to_rows(d.distance));
  if (li.problem == "knapsack") return oracle::knapsack(d.weights, d.values, d.capacity);
  if (li.problem == "assignment") return oracle::assignment(to_rows(d.cost));
  if (li.problem == "schedule_binary") return oracle::schedule_binary(to_rows(d.cost), d.coverage, d.capacity);
  if (li.problem == "load_balancing") return oracle::load_balancing(d.weights, d.num_machines);
  if (li.problem == "bin_packing") return oracle::bin_packing(d.weights, d.capacity, d.num_bins);
  if (li.problem == "qap") return oracle::qap(to_rows(d.flow), to_rows(d.distance));
  if (li.problem == "graph_coloring") return oracle::graph_coloring(d.num_vertices, d.num_colors, d.edges);
  if (li.problem == "jsp_int" || li.problem == "jsp_perm")
    return oracle::job_shop(to_rows(d.machines), to_rows(d.durations));
  if (li.problem == "cvrp") return oracle::cvrp(to_rows(d.distance), d.demands, d.capacity, d.vehicles).best();
  if (li.problem == "vrptw")
    return oracle::vrptw(to_rows(d.distance), d.demands, d.ready, d.due, d.service, d.capacity, d.vehicles).best();
  throw std::invalid_argument("no oracle for " + li.problem);
}

inline const std::vector<std::string>& desk_names() {
  static const std::vector<std::string> names = {"tsp5",     "knapsack6",    "assign4", "schedule3x4",
                                                 "cvrp10",   "loadbal8",     "graphcolor10", "binpack8",
                                                 "qap5",     "vrptw8",       "jsp3x3_int",   "jsp3x3_perm"};
  return names;
}

}  // namespace testing_support
