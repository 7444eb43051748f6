#include "genopt/engine.hpp"

#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

namespace genopt {

namespace {

Eigen::VectorXd normalized(const Eigen::VectorXd& p, const std::vector<ObjDef>& defs) {
  Eigen::VectorXd out = p;
  for (Eigen::Index i = 0; i < out.size(); ++i)
    if (static_cast<std::size_t>(i) < defs.size() && defs[i].direction == Direction::Maximize) out[i] = -out[i];
  return out;
}

bool dominates(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return (a.array() <= b.array()).all() && (a.array() < b.array()).any();
}

std::size_t argbest(const std::vector<Solution>& pop, const ProblemConfig& cfg) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < pop.size(); ++i)
    if (rank_less(pop[i], pop[best], cfg)) best = i;
  return best;
}

/// Worst member other than `skip`; the later index wins ties.
std::size_t argworst(const std::vector<Solution>& pop, const ProblemConfig& cfg, std::size_t skip) {
  std::size_t worst = pop.size();
  for (std::size_t i = 0; i < pop.size(); ++i) {
    if (i == skip) continue;
    if (worst == pop.size() || !rank_less(pop[i], pop[worst], cfg)) worst = i;
  }
  return worst;
}

std::size_t parse_bytes(const std::string& text, const char* var) {
  std::size_t pos = 0;
  unsigned long long value = 0;
  try {
    value = std::stoull(text, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string(var) + ": not a byte count: '" + text + "'");
  }
  std::string suffix = text.substr(pos);
  if (suffix == "K" || suffix == "KB" || suffix == "k") value <<= 10;
  else if (suffix == "M" || suffix == "MB") value <<= 20;
  else if (suffix == "G" || suffix == "GB") value <<= 30;
  else if (!suffix.empty() && suffix != "B") throw std::invalid_argument(std::string(var) + ": bad suffix '" + suffix + "'");
  if (value == 0) throw std::invalid_argument(std::string(var) + " must be positive");
  return static_cast<std::size_t>(value);
}

}  // namespace

std::vector<double> crowding_distance(const std::vector<Eigen::VectorXd>& points, const std::vector<int>& front) {
  const std::size_t n = front.size();
  std::vector<double> dist(n, 0.0);
  if (n == 0) return dist;
  const Eigen::Index m = points[front[0]].size();
  std::vector<std::size_t> order(n);
  for (Eigen::Index k = 0; k < m; ++k) {
    std::iota(order.begin(), order.end(), 0);
    std::ranges::stable_sort(order, [&](std::size_t a, std::size_t b) { return points[front[a]][k] < points[front[b]][k]; });
    const double lo = points[front[order.front()]][k];
    const double hi = points[front[order.back()]][k];
    dist[order.front()] = dist[order.back()] = std::numeric_limits<double>::infinity();
    if (hi <= lo) continue;
    for (std::size_t i = 1; i + 1 < n; ++i)
      dist[order[i]] += (points[front[order[i + 1]]][k] - points[front[order[i - 1]]][k]) / (hi - lo);
  }
  return dist;
}

std::vector<std::vector<int>> fast_nondominated_sort(const std::vector<Eigen::VectorXd>& raw,
                                                     const std::vector<ObjDef>& defs) {
  const int n = static_cast<int>(raw.size());
  std::vector<Eigen::VectorXd> pts;
  pts.reserve(raw.size());
  for (const auto& p : raw) pts.push_back(normalized(p, defs));

  std::vector<std::vector<int>> dominated(n);
  std::vector<int> count(n, 0);
  std::vector<std::vector<int>> fronts(1);
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      if (p == q) continue;
      if (dominates(pts[p], pts[q])) dominated[p].push_back(q);
      else if (dominates(pts[q], pts[p])) ++count[p];
    }
    if (count[p] == 0) fronts[0].push_back(p);
  }
  for (std::size_t f = 0; f < fronts.size() && !fronts[f].empty(); ++f) {
    std::vector<int> next;
    for (int p : fronts[f])
      for (int q : dominated[p])
        if (--count[q] == 0) next.push_back(q);
    std::ranges::sort(next);
    if (!next.empty()) fronts.push_back(std::move(next));
  }
  if (fronts.back().empty()) fronts.pop_back();

  for (auto& front : fronts) {
    const auto cd = crowding_distance(pts, front);
    std::vector<std::size_t> order(front.size());
    std::iota(order.begin(), order.end(), 0);
    std::ranges::stable_sort(order, [&](std::size_t a, std::size_t b) { return cd[a] > cd[b]; });
    std::vector<int> sorted;
    for (auto i : order) sorted.push_back(front[i]);
    front = std::move(sorted);
  }
  return fronts;
}

int adaptive_population_size(int concurrency_hint, std::size_t cache_budget_bytes, std::size_t working_set_bytes,
                             std::size_t fast_budget_bytes) {
  if (concurrency_hint < 1 || cache_budget_bytes == 0 || working_set_bytes == 0)
    throw std::invalid_argument("adaptive_population_size: inputs must be positive");
  int p_sm = 1;
  while (p_sm < concurrency_hint) p_sm <<= 1;
  p_sm = std::max(p_sm, 2);
  if (working_set_bytes <= fast_budget_bytes) return p_sm;
  const double ratio = static_cast<double>(cache_budget_bytes) / static_cast<double>(working_set_bytes);
  if (ratio >= p_sm / 2.0) return p_sm;
  int p = 2;
  while (p * 2 <= ratio) p <<= 1;
  return p;
}

std::vector<Solution> heuristic_solutions(const ProblemDefinition& problem) {
  const auto& cfg = problem.config();
  std::vector<Solution> out;
  if (cfg.encoding.kind != EncodingKind::Permutation || cfg.row_mode == RowMode::MultiPartition) return out;
  for (const auto& m : problem.init_matrices()) {
    if (m.rows() != cfg.n || m.cols() != cfg.n) continue;
    for (const auto& perm : heuristic_candidates(m)) {
      Solution s = make_solution(cfg);
      for (int r = 0; r < s.rows(); ++r) std::ranges::copy(perm, s.row(r).begin());
      out.push_back(std::move(s));
    }
  }
  return out;
}

std::vector<Solution> select_best(std::vector<Solution> pool, int count, const ProblemConfig& cfg) {
  count = std::min<int>(count, static_cast<int>(pool.size()));
  std::vector<Solution> out;
  out.reserve(static_cast<std::size_t>(count));
  if (cfg.num_objectives() <= 1) {
    std::ranges::stable_sort(pool, [&](const Solution& a, const Solution& b) { return rank_less(a, b, cfg); });
    for (int i = 0; i < count; ++i) out.push_back(std::move(pool[i]));
    return out;
  }
  std::vector<int> feasible, infeasible;
  for (int i = 0; i < static_cast<int>(pool.size()); ++i) (pool[i].feasible() ? feasible : infeasible).push_back(i);
  std::vector<Eigen::VectorXd> pts;
  for (int i : feasible) pts.push_back(pool[i].objectives);
  for (const auto& front : fast_nondominated_sort(pts, cfg.obj_defs)) {
    for (int local : front) {
      if (static_cast<int>(out.size()) == count) return out;
      out.push_back(pool[feasible[local]]);
    }
  }
  std::ranges::stable_sort(infeasible, [&](int a, int b) { return rank_less(pool[a], pool[b], cfg); });
  for (int i : infeasible) {
    if (static_cast<int>(out.size()) == count) break;
    out.push_back(pool[i]);
  }
  return out;
}

std::vector<Solution> initialize_population(const ProblemDefinition& problem, int population, int oversample,
                                            Rng& rng) {
  if (population < 1 || oversample < 1) throw std::invalid_argument("initialize_population: P and K must be >= 1");
  const auto& cfg = problem.config();
  std::vector<Solution> pool;
  const int randoms = population * oversample;
  pool.reserve(static_cast<std::size_t>(randoms) + 16);
  for (int i = 0; i < randoms; ++i) pool.push_back(random_solution(cfg, rng));
  for (auto& s : heuristic_solutions(problem)) pool.push_back(std::move(s));
  if (auto seeds = problem.init_candidates(rng)) {
    for (auto& s : *seeds)
      if (is_valid(s, cfg)) pool.push_back(std::move(s));
  }
  for (auto& s : pool) evaluate_unchecked(problem, s);
  return select_best(std::move(pool), population, cfg);
}

void island_migrate(std::vector<std::vector<Solution>>& islands, const IslandConfig& cfg, int event, Rng& rng,
                    const ProblemConfig& pcfg) {
  const std::size_t k = islands.size();
  if (k < 2) return;
  const bool ring = cfg.migration == Migration::Ring || (cfg.migration == Migration::Hybrid && event % 2 == 0);
  if (ring) {
    std::vector<Solution> migrants;
    for (const auto& isl : islands) migrants.push_back(isl[argbest(isl, pcfg)]);
    for (std::size_t i = 0; i < k; ++i) {
      auto& target = islands[(i + 1) % k];
      const std::size_t own_best = argbest(target, pcfg);
      if (target.size() == 1) {
        if (rank_less(migrants[i], target[0], pcfg)) target[0] = migrants[i];
        continue;
      }
      target[argworst(target, pcfg, own_best)] = migrants[i];
    }
    return;
  }
  std::vector<Solution> all;
  for (const auto& isl : islands) all.insert(all.end(), isl.begin(), isl.end());
  std::ranges::stable_sort(all, [&](const Solution& a, const Solution& b) { return rank_less(a, b, pcfg); });
  const std::size_t n = std::min<std::size_t>(static_cast<std::size_t>(std::max(cfg.top_n, 1)), all.size());
  for (auto& isl : islands) {
    const std::size_t own_best = argbest(isl, pcfg);
    std::vector<std::size_t> slots;
    for (std::size_t i = 0; i < isl.size(); ++i)
      if (i != own_best) slots.push_back(i);
    for (std::size_t j = 0; j < n && !slots.empty(); ++j) {
      const std::size_t pick = rng.index(static_cast<int>(slots.size()));
      isl[slots[pick]] = all[j];
      slots.erase(slots.begin() + static_cast<std::ptrdiff_t>(pick));
    }
  }
}

int elite_inject(std::vector<Solution>& population, const Solution& global_best, int interval, int generation,
                 const ProblemConfig& cfg) {
  if (population.empty() || interval < 1 || generation <= 0 || generation % interval != 0) return -1;
  const std::size_t worst = argworst(population, cfg, population.size());
  population[worst] = global_best;
  return static_cast<int>(worst);
}

std::size_t detect_cache_budget() {
  if (const char* env = std::getenv("GENOPT_CACHE_BUDGET"); env && *env) return parse_bytes(env, "GENOPT_CACHE_BUDGET");
#ifdef _SC_LEVEL3_CACHE_SIZE
  if (long l3 = sysconf(_SC_LEVEL3_CACHE_SIZE); l3 > 0) return static_cast<std::size_t>(l3);
#endif
#ifdef _SC_LEVEL2_CACHE_SIZE
  if (long l2 = sysconf(_SC_LEVEL2_CACHE_SIZE); l2 > 0) return static_cast<std::size_t>(l2);
#endif
  return std::size_t{8} << 20;
}

int detect_concurrency() {
  if (const char* env = std::getenv("GENOPT_PAR"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1 || v > (1 << 20))
      throw std::invalid_argument(std::string("GENOPT_PAR: expected a positive integer, got '") + env + "'");
    return static_cast<int>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::size_t estimate_working_set(const ProblemDefinition& problem) {
  const auto& cfg = problem.config();
  return problem.payload_bytes() + static_cast<std::size_t>(cfg.d1) * static_cast<std::size_t>(cfg.d2) * 4;
}

std::string to_string(Migration m) {
  switch (m) {
    case Migration::Ring: return "ring";
    case Migration::GlobalTopN: return "global_top_n";
    case Migration::Hybrid: return "hybrid";
  }
  return "?";
}

Migration migration_from_string(const std::string& s) {
  if (s == "ring") return Migration::Ring;
  if (s == "global_top_n" || s == "topn" || s == "global") return Migration::GlobalTopN;
  if (s == "hybrid") return Migration::Hybrid;
  throw std::invalid_argument("unknown migration strategy: " + s);
}

}  // namespace genopt
