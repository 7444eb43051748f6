#pragma once

// Exhaustive reference solvers. They work on plain vectors and share no code
// with the library, so they can check it.

#include <utility>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<double>>;

double tsp(const Matrix& d);
double qap(const Matrix& flow, const Matrix& dist);
double assignment(const Matrix& cost);
double knapsack(const std::vector<double>& w, const std::vector<double>& v, double cap);
double schedule_binary(const Matrix& cost, const std::vector<double>& coverage, double max_shifts);
double load_balancing(const std::vector<double>& durations, int machines);
double bin_packing(const std::vector<double>& sizes, double cap, int bins);
double graph_coloring(int vertices, int colors, const std::vector<std::pair<int, int>>& edges);
/// Minimum makespan over all acyclic machine orderings.
double job_shop(const std::vector<std::vector<int>>& machines, const std::vector<std::vector<int>>& durations);

/// Node 0 is the depot. best_by_routes[k] = minimum total distance with
/// exactly k nonempty routes (infinity if impossible), k in [0, vehicles].
struct RoutingFront {
  std::vector<double> best_by_routes;
  double best() const;
};
RoutingFront cvrp(const Matrix& d, const std::vector<double>& demand, double cap, int vehicles);
/// Time windows with waiting; a route is feasible when no arrival (depot
/// return included) is after its due time.
RoutingFront vrptw(const Matrix& d, const std::vector<double>& demand, const std::vector<double>& ready,
                   const std::vector<double>& due, const std::vector<double>& service, double cap, int vehicles);

}  // namespace oracle
