#include "genopt/bench_io.hpp"

#include <nlohmann/json.hpp>

#ifndef GENOPT_VERSION
#define GENOPT_VERSION "0.0.0"
#endif

namespace genopt {

namespace {

using ojson = nlohmann::ordered_json;

constexpr int kFormatVersion = 1;

ojson opt(const std::optional<double>& v) { return v ? ojson(*v) : ojson(nullptr); }

std::optional<double> opt_get(const ojson& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return j[key].get<double>();
}

EncodingKind encoding_from(const std::string& s) {
  if (s == "permutation") return EncodingKind::Permutation;
  if (s == "binary") return EncodingKind::Binary;
  if (s == "integer") return EncodingKind::Integer;
  throw std::invalid_argument("unknown encoding " + s);
}

RowMode row_mode_from(const std::string& s) {
  if (s == "single_seq") return RowMode::SingleSeq;
  if (s == "multi_fixed") return RowMode::MultiFixed;
  if (s == "multi_partition") return RowMode::MultiPartition;
  throw std::invalid_argument("unknown row mode " + s);
}

Scale scale_from(const std::string& s) {
  if (s == "small") return Scale::Small;
  if (s == "medium") return Scale::Medium;
  if (s == "large") return Scale::Large;
  throw std::invalid_argument("unknown scale " + s);
}

ojson to_json(const ResultRecord& r) {
  ojson j;
  j["format_version"] = kFormatVersion;
  j["tool_version"] = r.tool_version;
  j["problem"] = r.problem;
  j["instance"] = r.instance;
  j["seed"] = r.seed;
  ojson objs = ojson::array();
  for (const auto& o : r.objectives) objs.push_back({{"name", o.name}, {"direction", o.direction}, {"value", o.value}});
  j["objectives"] = objs;
  j["penalty"] = r.penalty;
  j["feasible"] = r.feasible;
  j["gap_pct"] = opt(r.gap_pct);
  j["best_known"] = opt(r.best_known);
  j["best_phi"] = r.best_phi;
  j["generations"] = r.generations;
  j["elapsed_s"] = r.elapsed_s;
  j["gens_per_sec"] = r.gens_per_sec;
  j["solution"] = r.solution;
  ojson weights = ojson::array();
  for (const auto& w : r.final_weights) weights.push_back({{"id", w.id}, {"name", w.name}, {"weight", w.weight}});
  j["final_weights"] = weights;
  j["k_weights"] = r.k_weights;

  const auto& p = r.profile;
  j["profile"] = {{"encoding", to_string(p.encoding.kind)},
                  {"lower_bound", p.encoding.lower_bound},
                  {"upper_bound", p.encoding.upper_bound},
                  {"scale", to_string(p.scale)},
                  {"structure", to_string(p.structure)},
                  {"p_cross", p.p_cross},
                  {"preset",
                   {{"three_opt", p.preset.three_opt_w},
                    {"or_opt", p.preset.or_opt_w},
                    {"lns", p.preset.lns_w},
                    {"lns_cap", p.preset.lns_cap}}}};

  const auto& s = r.settings;
  j["config"] = {{"population", s.population},
                 {"team_size", s.team_size},
                 {"max_generations", s.max_generations},
                 {"time_limit_s", opt(s.time_limit_seconds)},
                 {"seed", s.seed},
                 {"initial_temperature", s.initial_temperature},
                 {"cooling_alpha", s.cooling_alpha},
                 {"penalty_weight", s.penalty_weight},
                 {"oversample_factor", s.oversample_factor},
                 {"islands",
                  {{"count", s.islands.count},
                   {"migration", to_string(s.islands.migration)},
                   {"top_n", s.islands.top_n},
                   {"interval", s.islands.interval}}},
                 {"elite_injection_interval", s.elite_injection_interval},
                 {"replicas", s.replicas},
                 {"cache_budget_bytes", s.cache_budget_bytes},
                 {"concurrency_hint", s.concurrency_hint},
                 {"working_set_bytes", s.working_set_bytes},
                 {"fast_budget_bytes", s.fast_budget_bytes},
                 {"batch_generations", s.batch_generations},
                 {"aos",
                  {{"update_interval", s.aos.update_interval},
                   {"ema_alpha", s.aos.ema_alpha},
                   {"weight_floor", s.aos.weight_floor},
                   {"weight_cap", s.aos.weight_cap},
                   {"epsilon", s.aos.epsilon},
                   {"stagnation_threshold", s.aos.stagnation_threshold}}}};
  j["warnings"] = r.warnings;
  return j;
}

ResultRecord from_json(const ojson& j) {
  ResultRecord r;
  if (j.at("format_version").get<int>() != kFormatVersion) throw std::invalid_argument("unsupported format_version");
  r.tool_version = j.at("tool_version").get<std::string>();
  r.problem = j.at("problem").get<std::string>();
  r.instance = j.at("instance").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& o : j.at("objectives"))
    r.objectives.push_back({o.at("name").get<std::string>(), o.at("direction").get<std::string>(), o.at("value").get<double>()});
  r.penalty = j.at("penalty").get<double>();
  r.feasible = j.at("feasible").get<bool>();
  r.gap_pct = opt_get(j, "gap_pct");
  r.best_known = opt_get(j, "best_known");
  r.best_phi = j.at("best_phi").get<double>();
  r.generations = j.at("generations").get<int>();
  r.elapsed_s = j.at("elapsed_s").get<double>();
  r.gens_per_sec = j.at("gens_per_sec").get<double>();
  r.solution = j.at("solution").get<std::vector<std::vector<int>>>();
  for (const auto& w : j.at("final_weights"))
    r.final_weights.push_back({w.at("id").get<int>(), w.at("name").get<std::string>(), w.at("weight").get<double>()});
  r.k_weights = j.at("k_weights").get<std::array<double, 3>>();

  const auto& p = j.at("profile");
  r.profile.encoding.kind = encoding_from(p.at("encoding").get<std::string>());
  r.profile.encoding.lower_bound = p.at("lower_bound").get<int>();
  r.profile.encoding.upper_bound = p.at("upper_bound").get<int>();
  r.profile.scale = scale_from(p.at("scale").get<std::string>());
  r.profile.structure = row_mode_from(p.at("structure").get<std::string>());
  r.profile.p_cross = p.at("p_cross").get<double>();
  const auto& pr = p.at("preset");
  r.profile.preset = {pr.at("three_opt").get<double>(), pr.at("or_opt").get<double>(), pr.at("lns").get<double>(),
                      pr.at("lns_cap").get<double>()};

  const auto& c = j.at("config");
  auto& s = r.settings;
  s.population = c.at("population").get<int>();
  s.team_size = c.at("team_size").get<int>();
  s.max_generations = c.at("max_generations").get<int>();
  s.time_limit_seconds = opt_get(c, "time_limit_s");
  s.seed = c.at("seed").get<std::uint64_t>();
  s.initial_temperature = c.at("initial_temperature").get<double>();
  s.cooling_alpha = c.at("cooling_alpha").get<double>();
  s.penalty_weight = c.at("penalty_weight").get<double>();
  s.oversample_factor = c.at("oversample_factor").get<int>();
  const auto& isl = c.at("islands");
  s.islands = {isl.at("count").get<int>(), migration_from_string(isl.at("migration").get<std::string>()),
               isl.at("top_n").get<int>(), isl.at("interval").get<int>()};
  s.elite_injection_interval = c.at("elite_injection_interval").get<int>();
  s.replicas = c.at("replicas").get<int>();
  s.cache_budget_bytes = c.at("cache_budget_bytes").get<std::size_t>();
  s.concurrency_hint = c.at("concurrency_hint").get<int>();
  s.working_set_bytes = c.at("working_set_bytes").get<std::size_t>();
  s.fast_budget_bytes = c.at("fast_budget_bytes").get<std::size_t>();
  s.batch_generations = c.at("batch_generations").get<int>();
  const auto& a = c.at("aos");
  s.aos.update_interval = a.at("update_interval").get<int>();
  s.aos.ema_alpha = a.at("ema_alpha").get<double>();
  s.aos.weight_floor = a.at("weight_floor").get<double>();
  s.aos.weight_cap = a.at("weight_cap").get<double>();
  s.aos.epsilon = a.at("epsilon").get<double>();
  s.aos.stagnation_threshold = a.at("stagnation_threshold").get<int>();
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  return r;
}

}  // namespace

std::string tool_version() { return GENOPT_VERSION; }

ResultRecord make_record(const std::string& problem, const std::string& instance, const ProblemConfig& cfg,
                         const RunResult& result, std::optional<double> best_known) {
  ResultRecord r;
  r.tool_version = tool_version();
  r.problem = problem;
  r.instance = instance;
  r.seed = result.settings.seed;
  for (int i = 0; i < cfg.num_objectives(); ++i)
    r.objectives.push_back({cfg.obj_defs[i].name, to_string(cfg.obj_defs[i].direction), result.best.objectives[i]});
  r.penalty = result.best.penalty;
  r.feasible = result.feasible();
  r.gap_pct = result.gap_pct;
  r.best_known = best_known;
  r.best_phi = result.best_phi;
  r.generations = result.generations_completed;
  r.elapsed_s = result.elapsed_seconds;
  r.gens_per_sec = result.gens_per_sec;
  for (int row = 0; row < result.best.rows(); ++row) {
    const auto cells = result.best.row(row);
    r.solution.emplace_back(cells.begin(), cells.end());
  }
  r.final_weights = result.final_weights;
  r.k_weights = result.final_k_weights.w;
  r.profile = result.profile;
  r.settings = result.settings;
  r.warnings = result.warnings;
  return r;
}

std::string emit_result(const ResultRecord& record) { return to_json(record).dump(2) + "\n"; }

std::string emit_results(const std::vector<ResultRecord>& records) {
  ojson arr = ojson::array();
  for (const auto& r : records) arr.push_back(to_json(r));
  return arr.dump(2) + "\n";
}

ResultRecord parse_result(std::string_view text) {
  ojson j;
  try {
    j = ojson::parse(text.begin(), text.end());
  } catch (const ojson::parse_error& e) {
    throw ParseError("<result>", 0, std::string("invalid JSON: ") + e.what());
  }
  try {
    return from_json(j);
  } catch (const std::exception& e) {
    throw ParseError("<result>", 0, std::string("result document does not match the schema: ") + e.what());
  }
}

bool operator==(const ResultRecord& a, const ResultRecord& b) { return emit_result(a) == emit_result(b); }

}  // namespace genopt
