#include "genopt/engine.hpp"

#include <tbb/parallel_for.h>
#include <tbb/task_arena.h>

#include <array>
#include <chrono>
#include <cmath>
#include <limits>

namespace genopt {

void EngineConfig::check() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("engine config: " + what); };
  if (team_size < 1) fail("team_size must be >= 1");
  if (max_generations < 0) fail("max_generations must be >= 0");
  if (time_limit_seconds && !(*time_limit_seconds > 0)) fail("time_limit must be positive");
  if (initial_temperature && !(*initial_temperature > 0)) fail("initial temperature must be positive");
  if (!(cooling_alpha > 0 && cooling_alpha <= 1)) fail("cooling_alpha must be in (0, 1]");
  if (oversample_factor < 1) fail("oversample factor must be >= 1");
  if (islands.count < 1) fail("island count must be >= 1");
  if (islands.interval < 1) fail("migration interval must be >= 1");
  if (islands.top_n < 1) fail("top_n must be >= 1");
  if (elite_injection_interval < 1) fail("elite injection interval must be >= 1");
  if (replicas < 1) fail("replicas must be >= 1");
  if (batch_generations < 1) fail("batch_generations must be >= 1");
  if (workers < 0) fail("workers must be >= 0");
  if (population && *population < 1) fail("population must be >= 1");
  if (population && *population < islands.count) fail("population must be >= island count");
  if (concurrency_hint && *concurrency_hint < 1) fail("concurrency hint must be >= 1");
  if (cache_budget_bytes && *cache_budget_bytes == 0) fail("cache budget must be positive");
  aos.check();
}

GenerationOutcome evolve_generation(EvolverState& ev, const ProblemDefinition& problem,
                                    const SequenceRegistry& registry, const KStepWeights& k_weights,
                                    const std::vector<Solution>& snapshot, const GenerationContext& ctx) {
  const auto& cfg = problem.config();
  const auto& entries = registry.entries();
  if (ev.stats.slots() != registry.size()) ev.stats = AosStats(registry.size());

  struct Lane {
    int k = 0;
    std::array<std::size_t, 3> slots{};
  };
  std::vector<Lane> lanes(static_cast<std::size_t>(ctx.team_size));
  const auto idx = static_cast<std::uint64_t>(ev.index);
  const auto gen = static_cast<std::uint64_t>(ctx.generation);

  Solution cand, best_cand;
  double best_delta = std::numeric_limits<double>::infinity();
  int best_lane = -1;
  for (int t = 0; t < ctx.team_size; ++t) {
    Rng rng(derive_seed({ctx.seed, idx, gen, static_cast<std::uint64_t>(t)}));
    Lane& lane = lanes[t];
    lane.k = sample_k(k_weights, rng);
    cand = ev.current;
    for (int j = 0; j < lane.k; ++j) {
      const std::size_t slot = sample_slot(registry, rng);
      lane.slots[j] = slot;
      OperatorContext oc{&problem, nullptr, ctx.penalty_weight};
      if (entries[slot].family == OperatorFamily::Crossover && snapshot.size() > 1) {
        // Uniform over the other members.
        int m = rng.index(static_cast<int>(snapshot.size()) - 1);
        if (m >= ev.index) ++m;
        oc.mate = &snapshot[m];
      }
      apply_entry(entries[slot], cand, rng, oc, cfg);
    }
    evaluate_unchecked(problem, cand);
    const double d = fitness_delta(cand, ev.current, cfg, ctx.penalty_weight);
    if (d < best_delta) {
      best_delta = d;
      best_lane = t;
      std::swap(best_cand, cand);
    }
  }

  GenerationOutcome out;
  out.best_lane = best_lane;
  out.delta = best_delta;
  if (best_lane >= 0) {
    // Lane index T is reserved for the acceptance draw.
    Rng accept_rng(derive_seed({ctx.seed, idx, gen, static_cast<std::uint64_t>(ctx.team_size)}));
    const double draw = accept_rng.uniform01();
    out.accepted = best_delta < 0 || draw < std::exp(-best_delta / ev.temperature);
    out.improved = out.accepted && best_delta < 0;
    if (out.accepted) ev.current = std::move(best_cand);
  }
  for (int t = 0; t < ctx.team_size; ++t) {
    const bool credited = t == best_lane && out.improved;
    for (int j = 0; j < lanes[t].k; ++j) ev.stats.record_slot(lanes[t].slots[j], credited);
    ev.stats.record_k(lanes[t].k, credited);
  }
  ev.temperature = ctx.initial_temperature * std::pow(ctx.cooling_alpha, ctx.generation + 1);
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double auto_penalty_weight(const std::vector<Solution>& pop) {
  double sum = 0.0;
  for (const auto& s : pop) sum += s.objectives.size() > 0 ? std::abs(s.objectives[0]) : 0.0;
  const double mean = pop.empty() ? 0.0 : sum / static_cast<double>(pop.size());
  return std::max(1.0, 1000.0 * mean);
}

RunResult run_single(const ProblemDefinition& problem, const EngineConfig& cfg, std::optional<double> best_known,
                     std::uint64_t seed) {
  const auto start = Clock::now();
  const auto& pcfg = problem.config();
  check_config(pcfg);

  RunResult res;
  auto registry = SequenceRegistry::for_config(pcfg, cfg.aos.weight_floor, cfg.aos.weight_cap);
  res.profile = classify(pcfg);
  apply_preset(registry, res.profile);

  if (!cfg.custom_operators.empty()) {
    Rng probe_rng(derive_seed({seed, 0x9e11ULL}));
    Solution probe = random_solution(pcfg, probe_rng);
    evaluate(problem, probe);
    for (const auto& op : cfg.custom_operators) {
      auto outcome = register_custom(registry, op, probe, problem, seed);
      if (!outcome.registered) res.warnings.push_back(outcome.warning);
    }
  }

  auto& st = res.settings;
  st.team_size = cfg.team_size;
  st.max_generations = cfg.max_generations;
  st.time_limit_seconds = cfg.time_limit_seconds;
  st.seed = seed;
  st.cooling_alpha = cfg.cooling_alpha;
  st.oversample_factor = cfg.oversample_factor;
  st.islands = cfg.islands;
  st.elite_injection_interval = cfg.elite_injection_interval;
  st.replicas = cfg.replicas;
  st.fast_budget_bytes = cfg.fast_budget_bytes;
  st.batch_generations = cfg.batch_generations;
  st.aos = cfg.aos;
  st.working_set_bytes = cfg.working_set_bytes.value_or(estimate_working_set(problem));
  st.cache_budget_bytes = cfg.cache_budget_bytes.value_or(0);
  st.concurrency_hint = cfg.concurrency_hint.value_or(0);
  if (cfg.population) {
    st.population = *cfg.population;
  } else {
    if (!cfg.cache_budget_bytes) st.cache_budget_bytes = detect_cache_budget();
    if (!cfg.concurrency_hint) st.concurrency_hint = detect_concurrency();
    st.population = adaptive_population_size(st.concurrency_hint, st.cache_budget_bytes,
                                              std::max<std::size_t>(st.working_set_bytes, 1), cfg.fast_budget_bytes);
    st.population = std::max(st.population, cfg.islands.count);
  }
  const int P = st.population;

  Rng init_rng(derive_seed({seed, 0x1a17ULL}));
  auto pop = initialize_population(problem, P, cfg.oversample_factor, init_rng);
  st.penalty_weight = pcfg.penalty_weight.value_or(auto_penalty_weight(pop));
  const double pw = st.penalty_weight;

  Solution best = pop[0];
  for (const auto& s : pop)
    if (better(s, best, pcfg)) best = s;
  st.initial_temperature = cfg.initial_temperature.value_or(std::max(1e-6, 0.05 * std::abs(fitness(best, pcfg, pw))));
  const double T0 = st.initial_temperature;

  std::vector<EvolverState> evolvers(static_cast<std::size_t>(P));
  for (int i = 0; i < P; ++i) {
    auto& ev = evolvers[i];
    ev.index = i;
    ev.island_id = static_cast<int>(static_cast<long long>(i) * cfg.islands.count / P);
    ev.current = std::move(pop[i]);
    ev.temperature = T0;
    ev.stats = AosStats(registry.size());
  }

  KStepWeights k_weights;
  AosStats aggregated(registry.size());
  int batches = 0, no_improve = 0, migration_events = 0;
  bool improved_since_barrier = false;

  tbb::task_arena arena(cfg.workers > 0 ? cfg.workers : tbb::task_arena::automatic);
  std::vector<Solution> snapshot(static_cast<std::size_t>(P));
  std::vector<GenerationOutcome> outcomes(static_cast<std::size_t>(P));
  if (cfg.record_trace) res.trace.push_back({0, fitness(best, pcfg, pw), T0});

  int g = 0;
  for (; g < cfg.max_generations; ++g) {
    if (cfg.time_limit_seconds && seconds_since(start) >= *cfg.time_limit_seconds) break;
    for (int i = 0; i < P; ++i) snapshot[i] = evolvers[i].current;
    const GenerationContext ctx{seed, g, cfg.team_size, pw, T0, cfg.cooling_alpha};
    arena.execute([&] {
      tbb::parallel_for(0, P, [&](int i) {
        outcomes[i] = evolve_generation(evolvers[i], problem, registry, k_weights, snapshot, ctx);
      });
    });
    for (int i = 0; i < P; ++i) {
      if (outcomes[i].accepted && better(evolvers[i].current, best, pcfg)) {
        best = evolvers[i].current;
        improved_since_barrier = true;
      }
    }
    const int done = g + 1;

    if (done % cfg.batch_generations == 0 && ++batches % cfg.aos.update_interval == 0) {
      aggregated.reset();
      for (auto& ev : evolvers) {
        aggregated += ev.stats;
        ev.stats.reset();
      }
      update_weights(registry, aggregated, cfg.aos);
      update_k_weights(k_weights, aggregated, cfg.aos);
      no_improve = improved_since_barrier ? 0 : no_improve + 1;
      improved_since_barrier = false;
      stagnation_check_and_reset(no_improve, k_weights, cfg.aos);
    }

    if (cfg.islands.count > 1 && done % cfg.islands.interval == 0) {
      std::vector<std::vector<Solution>> islands(static_cast<std::size_t>(cfg.islands.count));
      std::vector<std::vector<int>> members(islands.size());
      for (auto& ev : evolvers) {
        islands[ev.island_id].push_back(ev.current);
        members[ev.island_id].push_back(ev.index);
      }
      Rng mig_rng(derive_seed({seed, 0x3161ULL, static_cast<std::uint64_t>(migration_events)}));
      island_migrate(islands, cfg.islands, migration_events++, mig_rng, pcfg);
      for (std::size_t k = 0; k < islands.size(); ++k)
        for (std::size_t j = 0; j < islands[k].size(); ++j) evolvers[members[k][j]].current = std::move(islands[k][j]);
    }

    if (done % cfg.elite_injection_interval == 0) {
      std::vector<Solution> currents;
      currents.reserve(evolvers.size());
      for (const auto& ev : evolvers) currents.push_back(ev.current);
      const int replaced = elite_inject(currents, best, cfg.elite_injection_interval, done, pcfg);
      if (replaced >= 0) evolvers[replaced].current = best;
    }

    if (cfg.record_trace) res.trace.push_back({done, fitness(best, pcfg, pw), T0 * std::pow(cfg.cooling_alpha, done)});
  }

  res.best = std::move(best);
  res.best_phi = fitness(res.best, pcfg, pw);
  res.generations_completed = g;
  res.elapsed_seconds = seconds_since(start);
  res.gens_per_sec = res.elapsed_seconds > 0 ? g / res.elapsed_seconds : 0.0;
  for (const auto& e : registry.entries()) res.final_weights.push_back({e.id, e.name, e.weight});
  res.final_k_weights = k_weights;
  if (best_known && pcfg.num_objectives() == 1 && pcfg.obj_defs[0].direction == Direction::Minimize &&
      *best_known != 0)
    res.gap_pct = (res.best.objectives[0] - *best_known) / std::abs(*best_known) * 100.0;
  return res;
}

}  // namespace

RunResult run(const ProblemDefinition& problem, const EngineConfig& cfg, std::optional<double> best_known) {
  cfg.check();
  const auto start = Clock::now();
  RunResult winner = run_single(problem, cfg, best_known, cfg.seed);
  for (int r = 1; r < cfg.replicas; ++r) {
    RunResult next = run_single(problem, cfg, best_known, cfg.seed + static_cast<std::uint64_t>(r));
    next.replica = r;
    if (better(next.best, winner.best, problem.config())) winner = std::move(next);
  }
  if (cfg.replicas > 1) {
    winner.elapsed_seconds = seconds_since(start);
    winner.settings.seed = cfg.seed;
  }
  return winner;
}

}  // namespace genopt
