#include "genopt/problems.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace genopt {

namespace {

ProblemConfig single_vector(int n, Encoding encoding, std::string objective, Direction dir = Direction::Minimize) {
  ProblemConfig cfg;
  cfg.encoding = encoding;
  cfg.d1 = 1;
  cfg.d2 = n;
  cfg.n = n;
  cfg.row_mode = RowMode::SingleSeq;
  cfg.obj_defs = {{std::move(objective), dir, 1.0}};
  return cfg;
}

}  // namespace

KnapsackProblem::KnapsackProblem(std::vector<double> weights, std::vector<double> values, double capacity)
    : weights_(std::move(weights)), values_(std::move(values)), capacity_(capacity) {
  if (weights_.empty() || weights_.size() != values_.size())
    throw std::invalid_argument("knapsack: weights and values must be nonempty and equally long");
  if (capacity_ < 0) throw std::invalid_argument("knapsack: negative capacity");
  cfg_ = single_vector(static_cast<int>(weights_.size()), Encoding::binary(), "total_value", Direction::Maximize);
}

double KnapsackProblem::compute_objective(int, const Solution& sol) const {
  const auto x = sol.row(0);
  double v = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) v += values_[i] * x[i];
  return v;
}

double KnapsackProblem::compute_penalty(const Solution& sol) const {
  const auto x = sol.row(0);
  double w = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) w += weights_[i] * x[i];
  return std::max(0.0, w - capacity_);
}

std::optional<std::vector<Solution>> KnapsackProblem::init_candidates(Rng&) const {
  // Greedy fill by value density.
  std::vector<int> order(weights_.size());
  std::iota(order.begin(), order.end(), 0);
  std::ranges::stable_sort(order, [&](int a, int b) { return values_[a] * weights_[b] > values_[b] * weights_[a]; });
  Solution s = make_solution(cfg_);
  double used = 0.0;
  for (int i : order) {
    const bool take = used + weights_[i] <= capacity_;
    s.data(0, i) = take ? 1 : 0;
    if (take) used += weights_[i];
  }
  return std::vector<Solution>{s};
}

GraphColoringProblem::GraphColoringProblem(int vertices, int colors, std::vector<std::pair<int, int>> edges)
    : edges_(std::move(edges)) {
  if (vertices < 1 || colors < 1) throw std::invalid_argument("graph_coloring: vertices and colors must be positive");
  for (auto [a, b] : edges_)
    if (a < 0 || b < 0 || a >= vertices || b >= vertices)
      throw std::invalid_argument("graph_coloring: edge endpoint out of range");
  cfg_ = single_vector(vertices, Encoding::integer(0, colors - 1), "conflicts");
}

double GraphColoringProblem::compute_objective(int, const Solution& sol) const {
  const auto c = sol.row(0);
  int conflicts = 0;
  for (auto [a, b] : edges_) conflicts += c[a] == c[b] ? 1 : 0;
  return conflicts;
}

BinPackingProblem::BinPackingProblem(std::vector<double> sizes, double capacity, int bins)
    : sizes_(std::move(sizes)), capacity_(capacity), bins_(bins) {
  if (sizes_.empty() || bins_ < 1 || !(capacity_ > 0))
    throw std::invalid_argument("bin_packing: need items, a positive capacity and at least one bin");
  cfg_ = single_vector(static_cast<int>(sizes_.size()), Encoding::integer(0, bins_ - 1), "bins_used");
}

std::vector<double> BinPackingProblem::bin_loads(const Solution& sol) const {
  std::vector<double> loads(static_cast<std::size_t>(bins_), 0.0);
  const auto x = sol.row(0);
  for (std::size_t i = 0; i < x.size(); ++i) loads[x[i]] += sizes_[i];
  return loads;
}

double BinPackingProblem::compute_objective(int, const Solution& sol) const {
  const auto loads = bin_loads(sol);
  return static_cast<double>(std::ranges::count_if(loads, [](double l) { return l > 0; }));
}

double BinPackingProblem::compute_penalty(const Solution& sol) const {
  double over = 0.0;
  for (double l : bin_loads(sol)) over += std::max(0.0, l - capacity_);
  return over;
}

LoadBalancingProblem::LoadBalancingProblem(std::vector<double> durations, int machines)
    : durations_(std::move(durations)), machines_(machines) {
  if (durations_.empty() || machines_ < 1)
    throw std::invalid_argument("load_balancing: need jobs and at least one machine");
  cfg_ = single_vector(static_cast<int>(durations_.size()), Encoding::integer(0, machines_ - 1), "makespan");
}

double LoadBalancingProblem::compute_objective(int, const Solution& sol) const {
  std::vector<double> load(static_cast<std::size_t>(machines_), 0.0);
  const auto x = sol.row(0);
  for (std::size_t i = 0; i < x.size(); ++i) load[x[i]] += durations_[i];
  return *std::ranges::max_element(load);
}

}  // namespace genopt
