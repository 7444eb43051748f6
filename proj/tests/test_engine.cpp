#include "genopt/engine.hpp"
#include "genopt/problems.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>

using namespace genopt;
using namespace testing_support;

namespace {

constexpr std::size_t KB = 1024, MB = 1024 * 1024;

Solution point(double a, double b) {
  Solution s(1, 1, 2);
  s.objectives << a, b;
  return s;
}

ProblemConfig bi_cfg() {
  ProblemConfig c;
  c.obj_defs = {{"a", Direction::Minimize, 1}, {"b", Direction::Minimize, 1}};
  c.comparison = WeightedMode{{1, 1}};
  return c;
}

ProblemConfig single_cfg() {
  ProblemConfig c;
  c.obj_defs = {{"a", Direction::Minimize, 1}};
  return c;
}

Solution scalar(double v, double pen = 0) {
  Solution s(1, 1, 1);
  s.objectives[0] = v;
  s.penalty = pen;
  return s;
}

EngineConfig small_run(int gens = 200) {
  EngineConfig c;
  c.population = 8;
  c.max_generations = gens;
  c.team_size = 32;
  return c;
}

// Problem with one slot whose every operator result is scripted by a custom op.
class Line final : public ProblemDefinition {
 public:
  Line() {
    cfg_.encoding = Encoding::integer(0, 100);
    cfg_.obj_defs = {{"x", Direction::Minimize, 1}};
  }
  const ProblemConfig& config() const override { return cfg_; }
  double compute_objective(int, const Solution& s) const override { return s.data(0, 0); }
  double compute_penalty(const Solution&) const override { return 0; }
  std::string name() const override { return "line"; }

 private:
  ProblemConfig cfg_;
};

SequenceRegistry scripted(CustomApply f) {
  SequenceRegistry reg;
  SequenceEntry e;
  e.id = 100;
  e.name = "scripted";
  e.family = OperatorFamily::Custom;
  e.weight = 1;
  e.apply = std::move(f);
  reg.add(e);
  return reg;
}

EvolverState state_at(const Line& p, int x, double temperature) {
  EvolverState ev;
  ev.current = make_solution(p.config());
  ev.current.data(0, 0) = x;
  evaluate(p, ev.current);
  ev.temperature = temperature;
  return ev;
}

}  // namespace

TEST(Heuristic, CandidatesExample) {
  Eigen::MatrixXd m(3, 3);
  m << 0, 1, 9, 1, 0, 2, 9, 2, 0;
  const auto c = heuristic_candidates(m);
  ASSERT_EQ(c.size(), 4u);
  EXPECT_EQ(c[0], (std::vector<int>{1, 0, 2}));
  EXPECT_EQ(c[1], (std::vector<int>{2, 0, 1}));
  EXPECT_EQ(c[0], c[2]);  // symmetric: row and column sums agree
  EXPECT_EQ(c[1], c[3]);
  Eigen::MatrixXd rect(2, 3);
  EXPECT_THROW(heuristic_candidates(rect), std::invalid_argument);
}

TEST(Nsga, FrontsOfExample) {
  const std::vector<Eigen::VectorXd> pts = {point(1, 2).objectives, point(2, 1).objectives, point(3, 3).objectives};
  const auto fronts = fast_nondominated_sort(pts, bi_cfg().obj_defs);
  ASSERT_EQ(fronts.size(), 2u);
  auto f0 = fronts[0];
  std::sort(f0.begin(), f0.end());
  EXPECT_EQ(f0, (std::vector<int>{0, 1}));
  EXPECT_EQ(fronts[1], (std::vector<int>{2}));
  const auto one = fast_nondominated_sort({point(4, 4).objectives}, bi_cfg().obj_defs);
  EXPECT_EQ(one.size(), 1u);
}

TEST(Nsga, CrowdingBoundariesInfinite) {
  const std::vector<Eigen::VectorXd> pts = {point(0, 4).objectives, point(1, 3).objectives, point(2, 1).objectives,
                                            point(4, 0).objectives};
  const auto cd = crowding_distance(pts, {0, 1, 2, 3});
  EXPECT_TRUE(std::isinf(cd[0]));
  EXPECT_TRUE(std::isinf(cd[3]));
  EXPECT_GT(cd[1], 0);
  EXPECT_GT(cd[2], 0);
}

TEST(SelectBest, BiObjectiveKeepsFront) {
  const auto kept = select_best({point(1, 2), point(2, 1), point(3, 3)}, 2, bi_cfg());
  ASSERT_EQ(kept.size(), 2u);
  for (const auto& s : kept) EXPECT_LT(s.objectives.sum(), 6);
}

TEST(SelectBest, SingleObjectiveSmallest) {
  const auto kept = select_best({scalar(5), scalar(1), scalar(0, 1), scalar(3)}, 2, single_cfg());
  ASSERT_EQ(kept.size(), 2u);
  EXPECT_EQ(kept[0].objectives[0], 1);
  EXPECT_EQ(kept[1].objectives[0], 3);
}

TEST(Init, OversampledPoolKeepsP) {
  const auto p = desk_problem("tsp5");
  Rng rng(1);
  const auto pop = initialize_population(*p, 8, 4, rng);
  ASSERT_EQ(pop.size(), 8u);
  for (std::size_t i = 1; i < pop.size(); ++i) EXPECT_FALSE(better(pop[i], pop[i - 1], p->config()));
  for (const auto& s : pop) EXPECT_TRUE(is_valid(s, p->config()));
}

TEST(Init, HeuristicSolutionsPerMatrix) {
  const auto tsp = desk_problem("tsp5");
  EXPECT_EQ(heuristic_solutions(*tsp).size(), 4u);
  EXPECT_EQ(heuristic_solutions(*desk_problem("qap5")).size(), 8u);
  EXPECT_TRUE(heuristic_solutions(*desk_problem("cvrp10")).empty());
  EXPECT_TRUE(heuristic_solutions(*desk_problem("knapsack6")).empty());
}

TEST(PopulationSize, Fixtures) {
  EXPECT_EQ(adaptive_population_size(108, 40 * MB, 763 * KB, 96 * KB), 32);
  EXPECT_EQ(adaptive_population_size(80, 40 * MB, 1 * KB, 96 * KB), 128);
  // cache/W = 100 >= P_SM/2 = 32
  EXPECT_EQ(adaptive_population_size(40, 100 * 200 * KB, 200 * KB, 96 * KB), 64);
  // Working set under the fast budget: P_SM regardless of cache.
  EXPECT_EQ(adaptive_population_size(108, 1 * KB, 90 * KB, 96 * KB), 128);
  // Tiny cache still yields two.
  EXPECT_EQ(adaptive_population_size(108, 1 * KB, 763 * KB, 96 * KB), 2);
  EXPECT_EQ(adaptive_population_size(1, 40 * MB, 1 * KB, 96 * KB), 2);
  EXPECT_THROW(adaptive_population_size(0, 1, 1, 1), std::invalid_argument);
}

TEST(PopulationSize, EnvironmentOverrides) {
  setenv("GENOPT_CACHE_BUDGET", "40M", 1);
  setenv("GENOPT_PAR", "108", 1);
  EXPECT_EQ(detect_cache_budget(), 40 * MB);
  EXPECT_EQ(detect_concurrency(), 108);
  setenv("GENOPT_CACHE_BUDGET", "512K", 1);
  EXPECT_EQ(detect_cache_budget(), 512 * KB);
  setenv("GENOPT_PAR", "abc", 1);
  EXPECT_THROW(detect_concurrency(), std::invalid_argument);
  setenv("GENOPT_CACHE_BUDGET", "12Q", 1);
  EXPECT_THROW(detect_cache_budget(), std::invalid_argument);
  unsetenv("GENOPT_CACHE_BUDGET");
  unsetenv("GENOPT_PAR");
  EXPECT_GT(detect_cache_budget(), 0u);
  EXPECT_GE(detect_concurrency(), 1);
}

TEST(Migration, RingMovesBestForward) {
  const auto cfg = single_cfg();
  std::vector<std::vector<Solution>> isl = {{scalar(1), scalar(9), scalar(5)},
                                            {scalar(2), scalar(8), scalar(7)},
                                            {scalar(3), scalar(4), scalar(6)}};
  Rng rng(1);
  island_migrate(isl, IslandConfig{3, Migration::Ring, 1, 10}, 0, rng, cfg);
  // Island i+1 replaces its worst with island i's best.
  EXPECT_EQ(isl[1][1].objectives[0], 1);
  EXPECT_EQ(isl[2][2].objectives[0], 2);
  EXPECT_EQ(isl[0][1].objectives[0], 3);
  // Own bests survive.
  EXPECT_EQ(isl[0][0].objectives[0], 1);
  EXPECT_EQ(isl[1][0].objectives[0], 2);
  EXPECT_EQ(isl[2][0].objectives[0], 3);
}

TEST(Migration, GlobalTopNPreservesIslandBest) {
  const auto cfg = single_cfg();
  Rng rng(3);
  for (int it = 0; it < 100; ++it) {
    std::vector<std::vector<Solution>> isl(4);
    for (auto& v : isl)
      for (int j = 0; j < 4; ++j) v.push_back(scalar(rng.index(1000)));
    std::vector<double> best_before;
    for (auto& v : isl) {
      double b = 1e9;
      for (auto& s : v) b = std::min(b, s.objectives[0]);
      best_before.push_back(b);
    }
    double global = *std::min_element(best_before.begin(), best_before.end());
    island_migrate(isl, IslandConfig{4, Migration::GlobalTopN, 2, 10}, it, rng, cfg);
    for (std::size_t k = 0; k < isl.size(); ++k) {
      double b = 1e9;
      bool has_global = false;
      for (auto& s : isl[k]) {
        b = std::min(b, s.objectives[0]);
        has_global |= s.objectives[0] == global;
      }
      EXPECT_LE(b, best_before[k]);
      EXPECT_TRUE(has_global);
    }
  }
}

TEST(Migration, NamesRoundTrip) {
  for (auto m : {Migration::Ring, Migration::GlobalTopN, Migration::Hybrid})
    EXPECT_EQ(migration_from_string(to_string(m)), m);
  EXPECT_THROW(migration_from_string("star"), std::invalid_argument);
}

TEST(Elite, ReplacesWorstEvenIfDuplicate) {
  const auto cfg = single_cfg();
  std::vector<Solution> pop = {scalar(1), scalar(9), scalar(5)};
  EXPECT_EQ(elite_inject(pop, scalar(1), 10, 20, cfg), 1);
  EXPECT_EQ(pop[1].objectives[0], 1);
  EXPECT_EQ(pop[0].objectives[0], 1);
  const auto before = pop;
  EXPECT_EQ(elite_inject(pop, scalar(0), 10, 15, cfg), -1);
  EXPECT_EQ(elite_inject(pop, scalar(0), 10, 0, cfg), -1);
  for (std::size_t i = 0; i < pop.size(); ++i) EXPECT_TRUE(pop[i] == before[i]);
}

TEST(Evolve, StrictImprovementAlwaysAccepted) {
  Line p;
  auto reg = scripted([](Solution& s, Rng&, const ProblemDefinition&) { s.data(0, 0) -= 1; });
  KStepWeights k;
  k.w = {1, 0, 0};
  for (int i = 0; i < 20; ++i) {
    auto ev = state_at(p, 50, 1e-9);
    GenerationContext ctx{static_cast<std::uint64_t>(i), 0, 4, 1, 1e-9, 0.5};
    const auto out = evolve_generation(ev, p, reg, k, {ev.current}, ctx);
    EXPECT_TRUE(out.accepted);
    EXPECT_TRUE(out.improved);
    EXPECT_EQ(out.delta, -1);
    EXPECT_EQ(ev.current.data(0, 0), 49);
    EXPECT_EQ(ev.stats.improvement(0), 1u);  // credit to the winning lane only
    EXPECT_EQ(ev.stats.usage(0), 4u);
  }
}

TEST(Evolve, ColdTemperatureRejectsWorse) {
  Line p;
  auto reg = scripted([](Solution& s, Rng&, const ProblemDefinition&) { s.data(0, 0) += 1; });
  KStepWeights k;
  k.w = {1, 0, 0};
  for (int i = 0; i < 50; ++i) {
    auto ev = state_at(p, 50, 1e-12);
    GenerationContext ctx{static_cast<std::uint64_t>(i), 0, 4, 1, 1e-12, 0.5};
    const auto out = evolve_generation(ev, p, reg, k, {ev.current}, ctx);
    EXPECT_FALSE(out.accepted);
    EXPECT_EQ(ev.current.data(0, 0), 50);
  }
}

TEST(Evolve, HotTemperatureAcceptsWorseSometimes) {
  Line p;
  auto reg = scripted([](Solution& s, Rng&, const ProblemDefinition&) { s.data(0, 0) += 1; });
  KStepWeights k;
  k.w = {1, 0, 0};
  int accepted = 0;
  for (int i = 0; i < 200; ++i) {
    auto ev = state_at(p, 50, 1.0);
    GenerationContext ctx{static_cast<std::uint64_t>(i), 0, 4, 1, 1.0, 0.5};
    accepted += evolve_generation(ev, p, reg, k, {ev.current}, ctx).accepted ? 1 : 0;
  }
  // exp(-1) ~ 0.37
  EXPECT_GT(accepted, 40);
  EXPECT_LT(accepted, 110);
}

TEST(Evolve, TiesGoToLowestLane) {
  Line p;
  // Lanes draw different values in [0, 3); lanes 1 and up all tie at 0 often.
  auto reg = scripted([](Solution& s, Rng& rng, const ProblemDefinition&) { s.data(0, 0) = rng.index(3); });
  KStepWeights k;
  k.w = {1, 0, 0};
  for (int i = 0; i < 30; ++i) {
    auto ev = state_at(p, 50, 1.0);
    GenerationContext ctx{static_cast<std::uint64_t>(i), 3, 4, 1, 1.0, 0.5};
    auto again = ev;
    const auto out = evolve_generation(ev, p, reg, k, {ev.current}, ctx);
    const auto out2 = evolve_generation(again, p, reg, k, {again.current}, ctx);
    EXPECT_EQ(out.best_lane, out2.best_lane);
    EXPECT_TRUE(ev.current == again.current);
    // Reconstruct each lane's draw to find the first minimum independently.
    int want = -1, best = 1000;
    for (int t = 0; t < 4; ++t) {
      Rng rng(derive_seed({static_cast<std::uint64_t>(i), 0, 3, static_cast<std::uint64_t>(t)}));
      sample_k(k, rng);
      sample_slot(reg, rng);
      const int v = rng.index(3);
      if (v < best) {
        best = v;
        want = t;
      }
    }
    EXPECT_EQ(out.best_lane, want);
  }
}

TEST(Evolve, TemperatureSchedule) {
  Line p;
  auto reg = scripted([](Solution&, Rng&, const ProblemDefinition&) {});
  KStepWeights k;
  auto ev = state_at(p, 5, 2.0);
  for (int g = 0; g < 10; ++g) {
    GenerationContext ctx{1, g, 2, 1, 2.0, 0.9};
    evolve_generation(ev, p, reg, k, {ev.current}, ctx);
    EXPECT_NEAR(ev.temperature, 2.0 * std::pow(0.9, g + 1), 1e-12);
  }
}

TEST(Run, DeterministicRepeat) {
  const auto p = desk_problem("cvrp10");
  const auto a = run(*p, small_run());
  const auto b = run(*p, small_run());
  EXPECT_TRUE(a.best == b.best);
  EXPECT_EQ(a.best_phi, b.best_phi);
  ASSERT_EQ(a.final_weights.size(), b.final_weights.size());
  for (std::size_t i = 0; i < a.final_weights.size(); ++i) EXPECT_EQ(a.final_weights[i].weight, b.final_weights[i].weight);
}

TEST(Run, WorkersDoNotChangeResults) {
  const auto p = desk_problem("qap5");
  auto c = small_run();
  c.workers = 1;
  const auto a = run(*p, c);
  c.workers = 4;
  const auto b = run(*p, c);
  EXPECT_TRUE(a.best == b.best);
}

TEST(Run, TraceMonotoneAndTemperature) {
  const auto p = desk_problem("tsp5");
  const auto r = run(*p, small_run(300));
  ASSERT_EQ(r.trace.size(), 301u);
  for (std::size_t i = 1; i < r.trace.size(); ++i) {
    EXPECT_LE(r.trace[i].best_phi, r.trace[i - 1].best_phi);
    EXPECT_NEAR(r.trace[i].temperature, r.settings.initial_temperature * std::pow(0.999, r.trace[i].generation),
                1e-12);
  }
}

TEST(Run, ReplicasReturnBetterOfSingles) {
  const auto p = desk_problem("vrptw8");
  auto c = small_run(50);
  c.replicas = 2;
  const auto both = run(*p, c);
  c.replicas = 1;
  const auto r0 = run(*p, c);
  c.seed += 1;
  const auto r1 = run(*p, c);
  const auto& want = better(r1.best, r0.best, p->config()) ? r1 : r0;
  EXPECT_TRUE(both.best == want.best);
  EXPECT_EQ(both.replica, &want == &r1 ? 1 : 0);
}

TEST(Run, GapZeroAtBestKnown) {
  const auto p = desk_problem("tsp5");
  const auto r = run(*p, small_run(), 18.0);
  ASSERT_TRUE(r.gap_pct.has_value());
  EXPECT_DOUBLE_EQ(*r.gap_pct, 0.0);
  const auto k = run(*desk_problem("knapsack6"), small_run(), 30.0);
  EXPECT_FALSE(k.gap_pct.has_value());
}

TEST(Run, AdaptivePopulationFromEnvironment) {
  setenv("GENOPT_CACHE_BUDGET", "40M", 1);
  setenv("GENOPT_PAR", "3", 1);
  auto c = small_run(5);
  c.population.reset();
  const auto r = run(*desk_problem("tsp5"), c);
  EXPECT_EQ(r.settings.population, 4);
  EXPECT_EQ(r.settings.concurrency_hint, 3);
  unsetenv("GENOPT_CACHE_BUDGET");
  unsetenv("GENOPT_PAR");
}

TEST(Run, IslandsAndElite) {
  const auto p = desk_problem("cvrp10");
  auto c = small_run(400);
  c.islands = IslandConfig{4, Migration::Hybrid, 2, 25};
  c.elite_injection_interval = 30;
  const auto a = run(*p, c);
  const auto b = run(*p, c);
  EXPECT_TRUE(a.best == b.best);
  EXPECT_TRUE(is_valid(a.best, p->config()));
}

TEST(Run, TimeLimitStopsEarly) {
  const auto p = desk_problem("tsp5");
  auto c = small_run(100000000);
  c.time_limit_seconds = 0.2;
  const auto r = run(*p, c);
  EXPECT_LT(r.generations_completed, 100000000);
  EXPECT_LT(r.elapsed_seconds, 5.0);
}

TEST(Run, ConfigChecks) {
  auto c = small_run();
  c.team_size = 0;
  EXPECT_THROW(run(*desk_problem("tsp5"), c), std::invalid_argument);
  c = small_run();
  c.population = 2;
  c.islands.count = 4;
  EXPECT_THROW(run(*desk_problem("tsp5"), c), std::invalid_argument);
}
