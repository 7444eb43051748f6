#include "genopt/problems.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

using namespace genopt;
using namespace testing_support;

namespace {

Eigen::MatrixXd four_city() {
  Eigen::MatrixXd d(4, 4);
  d << 0, 1, 2, 3, 1, 0, 4, 5, 2, 4, 0, 6, 3, 5, 6, 0;
  return d;
}

Solution perm(const ProblemDefinition& p, std::vector<int> order) {
  Solution s = make_solution(p.config());
  for (std::size_t i = 0; i < order.size(); ++i) s.data(0, static_cast<int>(i)) = order[i];
  return s;
}

double brute_min(const ProblemDefinition& p, int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  double best = 1e300;
  do {
    Solution s = perm(p, v);
    evaluate(p, s);
    best = std::min(best, s.objectives[0]);
  } while (std::next_permutation(v.begin(), v.end()));
  return best;
}

}  // namespace

TEST(Tsp, FourCityExample) {
  TspProblem p(four_city());
  Solution s = perm(p, {0, 1, 2, 3});
  evaluate(p, s);
  EXPECT_DOUBLE_EQ(s.objectives[0], 14);
  EXPECT_DOUBLE_EQ(s.penalty, 0);
  EXPECT_DOUBLE_EQ(brute_min(p, 4), oracle::tsp(to_rows(four_city())));
}

TEST(Tsp, EvaluationRefusesInvalid) {
  TspProblem p(four_city());
  Solution s = perm(p, {0, 0, 2, 3});
  EXPECT_THROW(evaluate(p, s), std::invalid_argument);
}

TEST(Tsp, PureEvaluation) {
  Rng rng(4);
  TspProblem p(four_city());
  for (int i = 0; i < 20; ++i) {
    Solution s = random_solution(p.config(), rng);
    Solution t = s;
    evaluate(p, s);
    evaluate(p, t);
    EXPECT_TRUE(s == t);
  }
}

TEST(Knapsack, Example) {
  KnapsackProblem p({2, 3, 4}, {3, 4, 5}, 5);
  Solution s = make_solution(p.config());
  s.data.setOnes();
  evaluate(p, s);
  EXPECT_DOUBLE_EQ(s.objectives[0], 12);
  EXPECT_DOUBLE_EQ(s.penalty, 4);
  EXPECT_EQ(p.config().obj_defs[0].direction, Direction::Maximize);
}

TEST(Routing, NonlinearEdge) { EXPECT_DOUBLE_EQ(10 * RoutingProblem::nonlinear_factor(5, 10), 10.75); }

TEST(Routing, NonlinearRouteUsesLoadBeforeEachEdge) {
  InstanceData in;
  in.distance = Eigen::MatrixXd::Constant(3, 3, 10.0);
  in.distance.diagonal().setZero();
  in.demands = {0, 5, 5};
  in.capacity = 10;
  in.vehicles = 1;
  RoutingProblem p(RoutingVariant::Nonlinear, in, {});
  const auto st = p.route_stats(std::vector<int>{0, 1});
  // Legs carry loads 0, 5 and 10 of capacity 10.
  EXPECT_DOUBLE_EQ(st.distance, 10 * 1.0 + 10 * 1.075 + 10 * 1.3);
  EXPECT_EQ(p.config().obj_defs[0].name, "transport_cost");
}

TEST(Routing, CvrpPenaltyAndDepotLegs) {
  InstanceData in;
  in.distance.resize(3, 3);
  in.distance << 0, 2, 3, 2, 0, 4, 3, 4, 0;
  in.demands = {0, 6, 6};
  in.capacity = 10;
  in.vehicles = 2;
  RoutingProblem p(RoutingVariant::Cvrp, in, {});
  EXPECT_EQ(p.config().row_mode, RowMode::MultiPartition);
  Solution one = make_solution(p.config());
  one.data(0, 0) = 0;
  one.data(0, 1) = 1;
  one.dim2_sizes << 2, 0;
  evaluate(p, one);
  EXPECT_DOUBLE_EQ(one.objectives[0], 2 + 4 + 3);
  EXPECT_DOUBLE_EQ(one.penalty, 2);
  Solution two = make_solution(p.config());
  two.data(0, 0) = 0;
  two.data(1, 0) = 1;
  two.dim2_sizes << 1, 1;
  evaluate(p, two);
  EXPECT_DOUBLE_EQ(two.objectives[0], 4 + 6);
  EXPECT_DOUBLE_EQ(two.penalty, 0);
}

TEST(Routing, VehicleObjective) {
  InstanceData in;
  in.distance.resize(3, 3);
  in.distance << 0, 2, 3, 2, 0, 4, 3, 4, 0;
  in.demands = {0, 1, 1};
  in.capacity = 10;
  in.vehicles = 2;
  ProblemOptions opt;
  opt.vehicle_objective = true;
  RoutingProblem p(RoutingVariant::Cvrp, in, opt);
  ASSERT_EQ(p.config().num_objectives(), 2);
  Solution s = make_solution(p.config());
  s.data(1, 0) = 1;
  s.data(1, 1) = 0;
  s.dim2_sizes << 0, 2;
  evaluate(p, s);
  EXPECT_DOUBLE_EQ(s.objectives[1], 1);
}

TEST(Routing, TimeWindowLateness) {
  InstanceData in;
  in.distance.resize(3, 3);
  in.distance << 0, 5, 5, 5, 0, 5, 5, 5, 0;
  in.demands = {0, 1, 1};
  in.ready = {0, 8, 0};
  in.due = {100, 10, 12};
  in.service = {0, 1, 0};
  in.capacity = 10;
  in.vehicles = 1;
  auto p = builtin_problem("vrptw", in);
  Solution s = make_solution(p->config());
  s.data(0, 0) = 0;
  s.data(0, 1) = 1;
  evaluate(*p, s);
  // Arrive at 5, wait to 8, serve to 9, arrive at the second customer at 14: 2 late.
  EXPECT_DOUBLE_EQ(s.penalty, 2);
}

TEST(Routing, PriorityViolations) {
  InstanceData in;
  in.distance = Eigen::MatrixXd::Ones(4, 4);
  in.distance.diagonal().setZero();
  in.demands = {0, 1, 1, 1};
  in.priorities = {0, 1, 3, 2};
  in.capacity = 10;
  in.vehicles = 1;
  auto p = builtin_problem("vrp_priority", in);
  Solution s = make_solution(p->config());
  s.data.row(0) << 0, 1, 2;  // priorities 1, 3, 2: (1,3) and (1,2) inverted
  evaluate(*p, s);
  EXPECT_DOUBLE_EQ(s.penalty, 2);
}

TEST(GraphColoring, MonochromaticEdge) {
  GraphColoringProblem p(2, 2, {{0, 1}});
  Solution s = make_solution(p.config());
  s.data.setZero();
  evaluate(p, s);
  EXPECT_DOUBLE_EQ(s.objectives[0], 1);
}

TEST(Qap, ThreeFacilityMatchesOracle) {
  Eigen::MatrixXd f(3, 3), d(3, 3);
  f << 0, 5, 2, 5, 0, 3, 2, 3, 0;
  d << 0, 8, 15, 8, 0, 13, 15, 13, 0;
  QapProblem p(f, d);
  EXPECT_DOUBLE_EQ(brute_min(p, 3), oracle::qap(to_rows(f), to_rows(d)));
}

TEST(Assignment, MatchesOracle) {
  Eigen::MatrixXd c(4, 4);
  c << 9, 2, 7, 8, 6, 4, 3, 7, 5, 8, 1, 8, 7, 6, 9, 4;
  AssignmentProblem p(c);
  EXPECT_DOUBLE_EQ(brute_min(p, 4), oracle::assignment(to_rows(c)));
  EXPECT_DOUBLE_EQ(brute_min(p, 4), 13);
}

TEST(BinPacking, BinsAndOverflow) {
  BinPackingProblem p({4, 4, 3}, 6, 3);
  Solution s = make_solution(p.config());
  s.data.row(0) << 0, 0, 2;
  evaluate(p, s);
  EXPECT_DOUBLE_EQ(s.objectives[0], 2);
  EXPECT_DOUBLE_EQ(s.penalty, 2);
}

TEST(LoadBalancing, Makespan) {
  LoadBalancingProblem p({3, 3, 2, 2, 2}, 2);
  Solution s = make_solution(p.config());
  s.data.row(0) << 0, 0, 1, 1, 1;
  evaluate(p, s);
  EXPECT_DOUBLE_EQ(s.objectives[0], 6);
}

TEST(JobShop, SingleOperation) {
  JobShop shop;
  shop.machines = Eigen::MatrixXi::Zero(1, 1);
  shop.durations = Eigen::MatrixXi::Constant(1, 1, 7);
  JspIntProblem a(shop);
  JspPermProblem b(shop);
  Solution sa = make_solution(a.config()), sb = make_solution(b.config());
  sa.data.setZero();
  sb.data.setZero();
  evaluate(a, sa);
  evaluate(b, sb);
  EXPECT_DOUBLE_EQ(sa.objectives[0], 7);
  EXPECT_DOUBLE_EQ(sb.objectives[0], 7);
}

// Both decoders reach exactly the oracle optimum on the desk shop, and never beat it.
TEST(JobShop, DecodersBoundedByOracle) {
  const double opt = desk_optimum("jsp3x3_perm");
  const auto p = desk_problem("jsp3x3_perm");
  std::vector<int> jobs = {0, 1, 2};
  double best = 1e300;
  std::vector<std::vector<int>> perms;
  do perms.push_back(jobs);
  while (std::next_permutation(jobs.begin(), jobs.end()));
  for (const auto& a : perms)
    for (const auto& b : perms)
      for (const auto& c : perms) {
        Solution s = make_solution(p->config());
        for (int j = 0; j < 3; ++j) {
          s.data(0, j) = a[j];
          s.data(1, j) = b[j];
          s.data(2, j) = c[j];
        }
        evaluate(*p, s);
        if (s.penalty == 0) {
          EXPECT_GE(s.objectives[0], opt);
          best = std::min(best, s.objectives[0]);
        }
      }
  EXPECT_DOUBLE_EQ(best, opt);
}

TEST(ScheduleBinary, CoverageShortfall) {
  Eigen::MatrixXd cost(2, 2);
  cost << 1, 2, 3, 4;
  ScheduleBinaryProblem p(cost, {2, 1}, 1);
  Solution s = make_solution(p.config());
  s.data << 1, 1, 0, 0;
  evaluate(p, s);
  EXPECT_DOUBLE_EQ(s.objectives[0], 3);
  // Shift 0 is one short, worker 0 is one over.
  EXPECT_DOUBLE_EQ(s.penalty, 2);
}

TEST(Builtins, UnknownAndMalformed) {
  InstanceData in;
  EXPECT_THROW(builtin_problem("nope", in), std::invalid_argument);
  try {
    builtin_problem("tsp", in);
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_EQ(std::string(e.what()).rfind("malformed instance", 0), 0u);
  }
  for (const auto& name : desk_names()) EXPECT_NO_THROW(desk_problem(name)) << name;
}
