#pragma once

#include "genopt/aos.hpp"
#include "genopt/operators.hpp"
#include "genopt/problem.hpp"
#include "genopt/profile.hpp"
#include "genopt/rng.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace genopt {

enum class Migration { Ring, GlobalTopN, Hybrid };

struct IslandConfig {
  int count = 1;
  Migration migration = Migration::Ring;
  int top_n = 1;  // GlobalTopN broadcast size
  int interval = 100;
};

struct EngineConfig {
  std::optional<int> population;  // empty = adaptive sizing
  int team_size = 128;
  int max_generations = 2000;
  std::optional<double> time_limit_seconds;
  std::uint64_t seed = 42;
  std::optional<double> initial_temperature;
  double cooling_alpha = 0.999;
  int oversample_factor = 4;
  IslandConfig islands;
  int elite_injection_interval = 50;
  int replicas = 1;
  std::optional<std::size_t> cache_budget_bytes;  // empty = detect
  std::optional<int> concurrency_hint;            // empty = detect
  std::size_t fast_budget_bytes = 96 * 1024;
  std::optional<std::size_t> working_set_bytes;   // empty = estimate
  int batch_generations = 1;
  /// Worker threads for the evolver pool; 0 = all hardware threads. Never
  /// changes results.
  int workers = 0;
  AosConfig aos;
  bool record_trace = true;
  std::vector<CustomOperator> custom_operators;

  /// Throws std::invalid_argument on an inconsistent configuration.
  void check() const;
};

struct EvolverState {
  int index = 0;
  int island_id = 0;
  Solution current;
  double temperature = 1.0;
  AosStats stats;
};

/// Shared, read-only inputs of one generation.
struct GenerationContext {
  std::uint64_t seed = 0;
  int generation = 0;
  int team_size = 128;
  double penalty_weight = 1.0;
  double initial_temperature = 1.0;
  double cooling_alpha = 0.999;
};

struct GenerationOutcome {
  int best_lane = -1;
  double delta = 0.0;
  bool accepted = false;
  bool improved = false;
};

/// One generation of one evolver: T lanes, argmin-delta selection (lowest lane
/// on ties), annealing acceptance, AOS bookkeeping and cooling.
GenerationOutcome evolve_generation(EvolverState& ev, const ProblemDefinition& problem,
                                    const SequenceRegistry& registry, const KStepWeights& k_weights,
                                    const std::vector<Solution>& snapshot, const GenerationContext& ctx);

/// Ascending and descending argsorts of the row sums and column sums of `m`.
template <typename Derived>
std::vector<std::vector<int>> heuristic_candidates(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("heuristic_candidates: matrix must be square");
  const Eigen::VectorXd rows = m.template cast<double>().rowwise().sum();
  const Eigen::VectorXd cols = m.template cast<double>().colwise().sum().transpose();
  auto argsort = [](const Eigen::VectorXd& key, bool ascending) {
    std::vector<int> idx(static_cast<std::size_t>(key.size()));
    std::iota(idx.begin(), idx.end(), 0);
    std::ranges::stable_sort(idx, [&](int a, int b) { return ascending ? key[a] < key[b] : key[a] > key[b]; });
    return idx;
  };
  return {argsort(rows, true), argsort(rows, false), argsort(cols, true), argsort(cols, false)};
}

/// Pareto fronts of `points` (indices), best front first; each front is
/// ordered by crowding distance, largest first.
std::vector<std::vector<int>> fast_nondominated_sort(const std::vector<Eigen::VectorXd>& points,
                                                     const std::vector<ObjDef>& defs);

/// Crowding distances of the points named by `front`.
std::vector<double> crowding_distance(const std::vector<Eigen::VectorXd>& points, const std::vector<int>& front);

/// Power of two >= 2 derived from the concurrency hint and the cache rule.
int adaptive_population_size(int concurrency_hint, std::size_t cache_budget_bytes, std::size_t working_set_bytes,
                             std::size_t fast_budget_bytes);

/// Solutions built from the heuristic candidates of the problem's matrices.
std::vector<Solution> heuristic_solutions(const ProblemDefinition& problem);

/// Oversampled initial population: K*P random solutions plus heuristic and
/// problem-provided seeds, evaluated, best P kept.
std::vector<Solution> initialize_population(const ProblemDefinition& problem, int population, int oversample,
                                            Rng& rng);

/// Best `count` of `pool` (single objective: ranking; several objectives:
/// feasible fronts by crowding, then infeasible by penalty).
std::vector<Solution> select_best(std::vector<Solution> pool, int count, const ProblemConfig& cfg);

/// One migration event; `event` counts earlier events (Hybrid alternates on it).
void island_migrate(std::vector<std::vector<Solution>>& islands, const IslandConfig& cfg, int event, Rng& rng,
                    const ProblemConfig& pcfg);

/// Overwrites the worst member with `global_best` when `generation` is a
/// positive multiple of `interval`. Returns the replaced index or -1.
int elite_inject(std::vector<Solution>& population, const Solution& global_best, int interval, int generation,
                 const ProblemConfig& cfg);

/// GENOPT_CACHE_BUDGET, else the last-level cache size, else 8 MiB.
std::size_t detect_cache_budget();
/// GENOPT_PAR, else the hardware thread count.
int detect_concurrency();
/// Instance payload plus one solution matrix of 4-byte cells.
std::size_t estimate_working_set(const ProblemDefinition& problem);

struct TracePoint {
  int generation = 0;
  double best_phi = 0.0;
  double temperature = 0.0;
};

struct WeightEntry {
  SequenceId id = 0;
  std::string name;
  double weight = 0.0;
};

/// Values the engine resolved from "auto" settings, echoed in results.
struct ResolvedSettings {
  int population = 0;
  int team_size = 0;
  int max_generations = 0;
  std::optional<double> time_limit_seconds;
  std::uint64_t seed = 0;
  double initial_temperature = 0.0;
  double cooling_alpha = 0.0;
  double penalty_weight = 0.0;
  int oversample_factor = 0;
  IslandConfig islands;
  int elite_injection_interval = 0;
  int replicas = 1;
  std::size_t cache_budget_bytes = 0;
  int concurrency_hint = 0;
  std::size_t working_set_bytes = 0;
  std::size_t fast_budget_bytes = 0;
  int batch_generations = 1;
  AosConfig aos;
};

struct RunResult {
  Solution best;
  double best_phi = 0.0;
  std::optional<double> gap_pct;
  int generations_completed = 0;
  double elapsed_seconds = 0.0;
  double gens_per_sec = 0.0;
  std::vector<WeightEntry> final_weights;
  KStepWeights final_k_weights;
  ProblemProfile profile;
  ResolvedSettings settings;
  std::vector<TracePoint> trace;
  std::vector<std::string> warnings;
  int replica = 0;  // index of the winning replica

  bool feasible() const { return best.feasible(); }
};

/// Full pipeline; with replicas > 1 the pipeline runs once per seed
/// seed + r and the comparison-best replica is returned.
RunResult run(const ProblemDefinition& problem, const EngineConfig& cfg, std::optional<double> best_known = {});

std::string to_string(Migration m);
Migration migration_from_string(const std::string& s);

}  // namespace genopt
