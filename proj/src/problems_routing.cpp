#include "genopt/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace genopt {

namespace {

std::vector<int> argsort(const std::vector<double>& keys) {
  std::vector<int> idx(keys.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::ranges::stable_sort(idx, [&](int a, int b) { return keys[a] < keys[b]; });
  return idx;
}

}  // namespace

RoutingProblem::RoutingProblem(RoutingVariant variant, const InstanceData& inst, const ProblemOptions& options)
    : variant_(variant), dist_(inst.distance), coords_(inst.coords), capacity_(inst.capacity) {
  const auto nodes = dist_.rows();
  if (nodes < 2 || dist_.cols() != nodes)
    throw std::invalid_argument("routing: distance matrix must be square with depot + customers");
  const int n = static_cast<int>(nodes) - 1;
  if (inst.demands.size() != static_cast<std::size_t>(nodes))
    throw std::invalid_argument("routing: demands must have one entry per node (depot first)");
  if (!(capacity_ > 0)) throw std::invalid_argument("routing: capacity must be positive");
  if (inst.vehicles < 1) throw std::invalid_argument("routing: vehicles must be >= 1");
  demand_ = inst.demands;
  if (variant_ == RoutingVariant::Vrptw) {
    if (inst.ready.size() != demand_.size() || inst.due.size() != demand_.size() ||
        inst.service.size() != demand_.size())
      throw std::invalid_argument("vrptw: ready, due and service need one entry per node");
    ready_ = inst.ready;
    due_ = inst.due;
    service_ = inst.service;
  }
  if (variant_ == RoutingVariant::Priority) {
    if (inst.priorities.size() != demand_.size())
      throw std::invalid_argument("vrp_priority: priorities need one entry per node");
    priority_ = inst.priorities;
  }

  cfg_.encoding = Encoding::permutation();
  cfg_.d1 = inst.vehicles;
  cfg_.d2 = n;
  cfg_.n = n;
  cfg_.row_mode = inst.vehicles == 1 ? RowMode::SingleSeq : RowMode::MultiPartition;
  cfg_.obj_defs = {{variant_ == RoutingVariant::Nonlinear ? "transport_cost" : "distance", Direction::Minimize, 1.0}};
  if (options.vehicle_objective) cfg_.obj_defs.push_back({"vehicles", Direction::Minimize, 1.0});
  if (options.comparison) {
    cfg_.comparison = *options.comparison;
  } else {
    WeightedMode w{{1.0}};
    if (options.vehicle_objective) w.weights.push_back(0.0);
    cfg_.comparison = w;
  }
}

double RoutingProblem::nonlinear_factor(double load, double capacity) {
  const double r = load / capacity;
  return 1.0 + 0.3 * r * r;
}

RouteStats RoutingProblem::route_stats(std::span<const int> route) const {
  RouteStats st;
  if (route.empty()) return st;
  const bool timed = variant_ == RoutingVariant::Vrptw;
  const bool nonlinear = variant_ == RoutingVariant::Nonlinear;
  int prev = 0;
  double t = timed ? ready_[0] : 0.0;
  for (int c : route) {
    const int node = c + 1;
    const double edge = dist_(prev, node);
    st.distance += nonlinear ? edge * nonlinear_factor(st.load, capacity_) : edge;
    if (timed) {
      const double arrival = t + edge;
      st.lateness += std::max(0.0, arrival - due_[node]);
      t = std::max(arrival, ready_[node]) + service_[node];
    }
    st.load += demand_[node];
    prev = node;
  }
  const double back = dist_(prev, 0);
  st.distance += nonlinear ? back * nonlinear_factor(st.load, capacity_) : back;
  if (timed) st.lateness += std::max(0.0, t + back - due_[0]);
  if (variant_ == RoutingVariant::Priority) {
    for (std::size_t p = 0; p < route.size(); ++p)
      for (std::size_t q = p + 1; q < route.size(); ++q)
        if (priority_[route[p] + 1] < priority_[route[q] + 1]) ++st.priority_violations;
  }
  return st;
}

double RoutingProblem::compute_objective(int index, const Solution& sol) const {
  if (index == 1) {
    int used = 0;
    for (int r = 0; r < sol.rows(); ++r) used += sol.size(r) > 0 ? 1 : 0;
    return used;
  }
  double total = 0.0;
  for (int r = 0; r < sol.rows(); ++r) total += route_stats(sol.row(r)).distance;
  return total;
}

double RoutingProblem::compute_penalty(const Solution& sol) const {
  double pen = 0.0;
  for (int r = 0; r < sol.rows(); ++r) {
    const auto st = route_stats(sol.row(r));
    pen += std::max(0.0, st.load - capacity_) + st.lateness + st.priority_violations;
  }
  return pen;
}

Solution RoutingProblem::split_by_capacity(std::span<const int> order) const {
  Solution s = make_solution(cfg_);
  s.dim2_sizes.setZero();
  int r = 0;
  double load = 0.0;
  for (int c : order) {
    const double d = demand_[c + 1];
    if (s.dim2_sizes[r] > 0 && load + d > capacity_ && r + 1 < cfg_.d1) {
      ++r;
      load = 0.0;
    }
    s.data(r, s.dim2_sizes[r]++) = c;
    load += d;
  }
  return s;
}

std::optional<std::vector<Solution>> RoutingProblem::init_candidates(Rng&) const {
  const int n = cfg_.n;
  std::vector<std::vector<int>> orders;
  std::vector<double> key(static_cast<std::size_t>(n));
  if (coords_.rows() == n + 1 && coords_.cols() >= 2) {
    for (int c = 0; c < n; ++c)
      key[c] = std::atan2(coords_(c + 1, 1) - coords_(0, 1), coords_(c + 1, 0) - coords_(0, 0));
    orders.push_back(argsort(key));
  }
  for (int c = 0; c < n; ++c) key[c] = dist_(0, c + 1);
  orders.push_back(argsort(key));
  if (variant_ == RoutingVariant::Vrptw) {
    for (int c = 0; c < n; ++c) key[c] = due_[c + 1];
    orders.push_back(argsort(key));
  }
  if (variant_ == RoutingVariant::Priority) {
    for (int c = 0; c < n; ++c) key[c] = -priority_[c + 1];
    orders.push_back(argsort(key));
  }
  std::vector<Solution> out;
  for (const auto& o : orders) out.push_back(split_by_capacity(o));
  return out;
}

std::size_t RoutingProblem::payload_bytes() const {
  return sizeof(double) * (dist_.size() + demand_.size() + ready_.size() + due_.size() + service_.size());
}

std::string RoutingProblem::name() const {
  switch (variant_) {
    case RoutingVariant::Cvrp: return "cvrp";
    case RoutingVariant::Vrptw: return "vrptw";
    case RoutingVariant::Priority: return "vrp_priority";
    case RoutingVariant::Nonlinear: return "vrp_nonlinear";
  }
  return "routing";
}

}  // namespace genopt
