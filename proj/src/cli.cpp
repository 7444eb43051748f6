#include "genopt/bench_io.hpp"
#include "genopt/custom_ops.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace genopt {

namespace {

struct EngineFlags {
  int generations = 2000;
  std::optional<double> time_limit;
  std::optional<int> pop;
  int team_size = 128;
  int islands = 1;
  std::string migration = "ring";
  int migration_interval = 100;
  int elite_interval = 50;
  int replicas = 1;
  int oversample = 4;
  int workers = 0;
  std::optional<std::string> cache_budget;
  std::optional<std::string> fast_budget;
  std::optional<double> temperature;
  double cooling = 0.999;
  std::string custom_ops;
  bool vehicle_objective = false;
  bool no_timing = false;
};

void add_engine_flags(CLI::App& cmd, EngineFlags& f) {
  cmd.add_option("--generations", f.generations, "generation budget")->check(CLI::NonNegativeNumber);
  cmd.add_option("--time-limit", f.time_limit, "wall-clock limit in seconds")->check(CLI::PositiveNumber);
  cmd.add_option("--pop", f.pop, "population size (default: adaptive)")->check(CLI::PositiveNumber);
  cmd.add_option("--team-size", f.team_size, "candidate lanes per evolver")->check(CLI::PositiveNumber);
  cmd.add_option("--islands", f.islands, "island count")->check(CLI::PositiveNumber);
  cmd.add_option("--migration", f.migration, "ring | global_top_n | hybrid");
  cmd.add_option("--migration-interval", f.migration_interval)->check(CLI::PositiveNumber);
  cmd.add_option("--elite-interval", f.elite_interval)->check(CLI::PositiveNumber);
  cmd.add_option("--replicas", f.replicas, "independent replicas, best returned")->check(CLI::PositiveNumber);
  cmd.add_option("--oversample", f.oversample)->check(CLI::PositiveNumber);
  cmd.add_option("--workers", f.workers, "worker threads (0 = all)")->check(CLI::NonNegativeNumber);
  cmd.add_option("--cache-budget", f.cache_budget, "cache budget in bytes (K/M/G suffix allowed)");
  cmd.add_option("--fast-budget", f.fast_budget, "fast-path working-set threshold in bytes");
  cmd.add_option("--temperature", f.temperature, "initial temperature (default: auto)")->check(CLI::PositiveNumber);
  cmd.add_option("--cooling", f.cooling);
  cmd.add_option("--custom-ops", f.custom_ops, "named operator set: tsp-delta | broken-demo");
  cmd.add_flag("--vehicle-objective", f.vehicle_objective, "routing: add the vehicle count objective");
  cmd.add_flag("--no-timing", f.no_timing, "write zero timing fields (byte-stable documents)");
}

std::size_t parse_size(const std::string& text, const char* flag) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &pos);
  } catch (const std::exception&) {
    throw CLI::ValidationError(flag, "not a byte count: " + text);
  }
  const std::string suffix = text.substr(pos);
  if (suffix == "K" || suffix == "KB") v <<= 10;
  else if (suffix == "M" || suffix == "MB") v <<= 20;
  else if (suffix == "G" || suffix == "GB") v <<= 30;
  else if (!suffix.empty()) throw CLI::ValidationError(flag, "bad suffix: " + suffix);
  if (v == 0) throw CLI::ValidationError(flag, "must be positive");
  return static_cast<std::size_t>(v);
}

EngineConfig engine_config(const EngineFlags& f, std::uint64_t seed) {
  EngineConfig cfg;
  cfg.seed = seed;
  cfg.max_generations = f.generations;
  cfg.time_limit_seconds = f.time_limit;
  cfg.population = f.pop;
  cfg.team_size = f.team_size;
  cfg.islands.count = f.islands;
  cfg.islands.migration = migration_from_string(f.migration);
  cfg.islands.interval = f.migration_interval;
  cfg.elite_injection_interval = f.elite_interval;
  cfg.replicas = f.replicas;
  cfg.oversample_factor = f.oversample;
  cfg.workers = f.workers;
  if (f.cache_budget) cfg.cache_budget_bytes = parse_size(*f.cache_budget, "--cache-budget");
  if (f.fast_budget) cfg.fast_budget_bytes = parse_size(*f.fast_budget, "--fast-budget");
  cfg.initial_temperature = f.temperature;
  cfg.cooling_alpha = f.cooling;
  if (!f.custom_ops.empty()) cfg.custom_operators = custom_operator_set(f.custom_ops);
  return cfg;
}

struct Prepared {
  LoadedInstance instance;
  ProblemPtr problem;
};

/// Distinguishes bad invocation from bad data.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Prepared prepare(const std::string& problem_flag, const std::string& path, bool vehicle_objective) {
  Prepared p;
  p.instance = load_instance(path, problem_flag);
  if (!problem_flag.empty() && !p.instance.problem.empty() && p.instance.problem != problem_flag)
    throw UsageError("--problem " + problem_flag + " does not match the instance's problem '" + p.instance.problem + "'");
  const std::string name = problem_flag.empty() ? p.instance.problem : problem_flag;
  if (name.empty()) throw UsageError("no problem given: pass --problem or a 'problem' key in the instance");
  const auto& names = builtin_problem_names();
  if (std::ranges::find(names, name) == names.end()) throw UsageError("unknown problem: " + name);
  p.instance.problem = name;
  ProblemOptions opts = p.instance.options;
  opts.vehicle_objective = opts.vehicle_objective || vehicle_objective;
  p.problem = builtin_problem(name, p.instance.data, opts);
  return p;
}

ResultRecord solve_once(const Prepared& p, const std::string& path, const EngineFlags& f, std::uint64_t seed,
                        std::optional<double> best_known) {
  const auto cfg = engine_config(f, seed);
  const auto result = run(*p.problem, cfg, best_known);
  auto rec = make_record(p.instance.problem, path, p.problem->config(), result, best_known);
  if (f.no_timing) {
    rec.elapsed_s = 0.0;
    rec.gens_per_sec = 0.0;
  }
  return rec;
}

void write_output(const std::string& doc, const std::string& json_path, std::ostream& out) {
  if (json_path.empty()) {
    out << doc;
    return;
  }
  std::ofstream file(json_path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + json_path);
  file << doc;
}

std::string fmt(double v, int prec = 2) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(prec) << v;
  return s.str();
}

void gap_table(const std::vector<ResultRecord>& recs, const std::vector<std::string>& instances, std::ostream& err) {
  err << std::left << std::setw(28) << "instance" << std::right << std::setw(8) << "seeds" << std::setw(14) << "best"
      << std::setw(14) << "mean" << std::setw(10) << "gap%" << std::setw(10) << "feas" << "\n";
  for (const auto& inst : instances) {
    double best = 0, sum = 0, gap_sum = 0;
    int n = 0, gaps = 0, feas = 0;
    for (const auto& r : recs) {
      if (r.instance != inst) continue;
      const double v = r.objectives.empty() ? 0.0 : r.objectives[0].value;
      best = n == 0 ? v : (r.objectives[0].direction == "maximize" ? std::max(best, v) : std::min(best, v));
      sum += v;
      ++n;
      feas += r.feasible ? 1 : 0;
      if (r.gap_pct) {
        gap_sum += *r.gap_pct;
        ++gaps;
      }
    }
    err << std::left << std::setw(28) << inst << std::right << std::setw(8) << n << std::setw(14) << fmt(best)
        << std::setw(14) << fmt(n ? sum / n : 0) << std::setw(10) << (gaps ? fmt(gap_sum / gaps) : "-")
        << std::setw(10) << (std::to_string(feas) + "/" + std::to_string(n)) << "\n";
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"genopt: adaptive parallel metaheuristic solver"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tool_version());

  EngineFlags f;
  std::string problem, json_path;
  std::string instance;
  std::vector<std::string> instances;
  std::uint64_t seed = 42;
  std::vector<std::uint64_t> seeds = {42, 123, 456, 789, 2024};
  std::optional<double> best_known;
  std::vector<double> best_knowns;

  auto* solve = app.add_subcommand("solve", "run one problem instance with one seed");
  solve->add_option("--problem", problem, "problem name (see list-problems)");
  solve->add_option("--instance", instance, "instance file")->required();
  solve->add_option("--seed", seed);
  solve->add_option("--best-known", best_known);
  solve->add_option("--json", json_path, "write the result document here instead of stdout");
  add_engine_flags(*solve, f);

  auto* bench = app.add_subcommand("bench", "instances x seeds sweep with a gap table on stderr");
  bench->add_option("--problem", problem);
  bench->add_option("--instance", instances, "instance files")->required();
  bench->add_option("--seeds", seeds, "seed list")->delimiter(',');
  bench->add_option("--best-known", best_knowns, "one reference value per instance")->delimiter(',');
  bench->add_option("--json", json_path);
  add_engine_flags(*bench, f);

  auto* list = app.add_subcommand("list-problems", "print the built-in problem names");

  auto* validate = app.add_subcommand("validate", "parse an instance without solving");
  validate->add_option("--problem", problem);
  validate->add_option("--instance", instance)->required();

  std::vector<std::string> argv_store;
  argv_store.push_back("genopt");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << tool_version() << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    if (const auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front())
      err << sub->help();
    return 1;
  }

  try {
    if (list->parsed()) {
      for (const auto& n : builtin_problem_names()) out << n << "\n";
      return 0;
    }
    if (validate->parsed()) {
      const auto p = prepare(problem, instance, false);
      const auto& cfg = p.problem->config();
      out << "ok " << p.instance.problem << " " << instance << " n=" << cfg.n << " d1=" << cfg.d1 << " d2=" << cfg.d2
          << "\n";
      return 0;
    }
    if (solve->parsed()) {
      const auto p = prepare(problem, instance, f.vehicle_objective);
      const auto bk = best_known ? best_known : p.instance.best_known;
      const auto rec = solve_once(p, instance, f, seed, bk);
      for (const auto& w : rec.warnings) err << "warning: " << w << "\n";
      write_output(emit_result(rec), json_path, out);
      return 0;
    }
    if (bench->parsed()) {
      if (seeds.empty()) throw UsageError("--seeds needs at least one seed");
      if (!best_knowns.empty() && best_knowns.size() != instances.size())
        throw UsageError("--best-known needs one value per instance");
      std::vector<ResultRecord> recs;
      for (std::size_t i = 0; i < instances.size(); ++i) {
        const auto p = prepare(problem, instances[i], f.vehicle_objective);
        const auto bk = best_knowns.empty() ? p.instance.best_known : std::optional<double>(best_knowns[i]);
        for (auto s : seeds) recs.push_back(solve_once(p, instances[i], f, s, bk));
      }
      gap_table(recs, instances, err);
      write_output(emit_results(recs), json_path, out);
      return 0;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    err << "error: " << msg << "\n";
    // Bad instance contents count as input errors; other argument problems as usage.
    return msg.rfind("malformed instance", 0) == 0 ? 2 : 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 1;
}

}  // namespace genopt
