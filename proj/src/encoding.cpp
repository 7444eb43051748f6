#include "genopt/encoding.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace genopt {

Encoding Encoding::integer(int lb, int ub) {
  if (lb > ub) throw std::invalid_argument("integer encoding requires lower_bound <= upper_bound");
  return {EncodingKind::Integer, lb, ub};
}

Solution::Solution(int d1, int d2, int num_objectives)
    : data(SolutionMatrix::Zero(d1, d2)),
      dim2_sizes(Eigen::VectorXi::Zero(d1)),
      objectives(Eigen::VectorXd::Zero(num_objectives)) {}

bool operator==(const Solution& a, const Solution& b) {
  if (a.data.rows() != b.data.rows() || a.data.cols() != b.data.cols()) return false;
  if (a.dim2_sizes != b.dim2_sizes) return false;
  for (int r = 0; r < a.rows(); ++r) {
    if (!std::ranges::equal(a.row(r), b.row(r))) return false;
  }
  return a.objectives.size() == b.objectives.size() && a.objectives == b.objectives &&
         a.penalty == b.penalty;
}

WeightedMode default_weights(const std::vector<ObjDef>& defs) {
  WeightedMode w;
  for (const auto& d : defs) w.weights.push_back(d.weight);
  return w;
}

void check_config(const ProblemConfig& cfg) {
  auto fail = [](const std::string& m) { throw std::invalid_argument("problem config: " + m); };
  if (cfg.d1 < 1 || cfg.d2 < 1 || cfg.n < 1) fail("d1, d2 and n must be positive");
  if (cfg.encoding.kind == EncodingKind::Integer && cfg.encoding.lower_bound > cfg.encoding.upper_bound)
    fail("integer lower_bound > upper_bound");
  if (cfg.row_mode == RowMode::SingleSeq && cfg.d1 != 1) fail("SingleSeq requires d1 = 1");
  if (cfg.row_mode == RowMode::SingleSeq && cfg.n > cfg.d2) fail("n exceeds d2");
  if (cfg.row_mode == RowMode::MultiPartition && cfg.n > cfg.d1 * cfg.d2) fail("n exceeds d1 * d2");
  if (cfg.obj_defs.empty()) fail("at least one objective required");
  for (const auto& d : cfg.obj_defs)
    if (!(d.weight > 0)) fail("objective weight must be positive: " + d.name);
  if (cfg.penalty_weight && !(*cfg.penalty_weight > 0)) fail("penalty_weight must be positive");

  const auto m = cfg.obj_defs.size();
  if (const auto* w = std::get_if<WeightedMode>(&cfg.comparison)) {
    if (w->weights.size() != m) fail("weights length must equal number of objectives");
    bool any = false;
    for (double x : w->weights) {
      if (x < 0) fail("weights must be nonnegative");
      any = any || x > 0;
    }
    if (!any) fail("weights must not all be zero");
  } else {
    const auto& lex = std::get<LexicographicMode>(cfg.comparison);
    if (lex.priority_order.size() != m || lex.tolerances.size() != m)
      fail("lexicographic priority_order and tolerances must cover every objective");
    std::vector<int> sorted = lex.priority_order;
    std::ranges::sort(sorted);
    for (std::size_t i = 0; i < m; ++i)
      if (sorted[i] != static_cast<int>(i)) fail("priority_order must be a permutation of objective indices");
    for (double t : lex.tolerances)
      if (t < 0) fail("tolerances must be nonnegative");
  }
}

namespace {

void check_structure(const Solution& sol, const ProblemConfig& cfg) {
  if (sol.data.rows() != cfg.d1 || sol.data.cols() != cfg.d2 || sol.dim2_sizes.size() != cfg.d1)
    throw std::invalid_argument("solution dimensions do not match problem config (" +
                                std::to_string(sol.data.rows()) + "x" + std::to_string(sol.data.cols()) +
                                " vs " + std::to_string(cfg.d1) + "x" + std::to_string(cfg.d2) + ")");
}

// Collects violations; `stop_early` turns it into a cheap predicate.
template <typename Sink>
void check_cells(const Solution& sol, const ProblemConfig& cfg, Sink&& sink) {
  const auto kind = cfg.encoding.kind;
  for (int r = 0; r < cfg.d1; ++r) {
    const int len = sol.dim2_sizes[r];
    if (len < 0 || len > cfg.d2) {
      if (sink(r, -1, "row length " + std::to_string(len) + " outside [0, d2]")) return;
      continue;
    }
    const bool fixed_len = cfg.row_mode != RowMode::MultiPartition;
    const int want = kind == EncodingKind::Permutation || cfg.row_mode == RowMode::SingleSeq ? cfg.n : cfg.d2;
    if (fixed_len && len != want) {
      if (sink(r, -1, "row length " + std::to_string(len) + " != " + std::to_string(want))) return;
    }
  }

  if (kind == EncodingKind::Permutation) {
    auto check_cover = [&](int first_row, int last_row) -> bool {
      std::vector<int> seen(static_cast<std::size_t>(cfg.n), -1);
      for (int r = first_row; r <= last_row; ++r) {
        const int len = std::clamp(sol.dim2_sizes[r], 0, cfg.d2);
        for (int p = 0; p < len; ++p) {
          const int v = sol.data(r, p);
          if (v < 0 || v >= cfg.n) {
            if (sink(r, p, "element " + std::to_string(v) + " out of range [0, n)")) return true;
          } else if (seen[v] >= 0) {
            if (sink(r, p, "duplicate element " + std::to_string(v))) return true;
          } else {
            seen[v] = r;
          }
        }
      }
      for (int v = 0; v < cfg.n; ++v)
        if (seen[v] < 0 && sink(first_row == last_row ? first_row : -1, -1, "missing element " + std::to_string(v)))
          return true;
      return false;
    };
    if (cfg.row_mode == RowMode::MultiPartition) {
      check_cover(0, cfg.d1 - 1);
    } else {
      for (int r = 0; r < cfg.d1; ++r)
        if (check_cover(r, r)) return;
    }
    return;
  }

  const int lo = kind == EncodingKind::Binary ? 0 : cfg.encoding.lower_bound;
  const int hi = kind == EncodingKind::Binary ? 1 : cfg.encoding.upper_bound;
  for (int r = 0; r < cfg.d1; ++r) {
    const int len = std::clamp(sol.dim2_sizes[r], 0, cfg.d2);
    for (int p = 0; p < len; ++p) {
      const int v = sol.data(r, p);
      if ((v < lo || v > hi) &&
          sink(r, p, "value " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]"))
        return;
    }
  }
}

}  // namespace

ValidityReport validate_solution(const Solution& sol, const ProblemConfig& cfg) {
  check_structure(sol, cfg);
  ValidityReport report;
  check_cells(sol, cfg, [&](int r, int p, std::string rule) {
    report.violations.push_back({r, p, std::move(rule)});
    return false;
  });
  return report;
}

bool is_valid(const Solution& sol, const ProblemConfig& cfg) {
  if (sol.data.rows() != cfg.d1 || sol.data.cols() != cfg.d2 || sol.dim2_sizes.size() != cfg.d1) return false;
  bool ok = true;
  check_cells(sol, cfg, [&](int, int, const std::string&) {
    ok = false;
    return true;
  });
  return ok;
}

double scalarize(std::span<const double> objectives, const std::vector<ObjDef>& defs,
                 std::span<const double> weights) {
  if (objectives.size() != defs.size() || weights.size() != defs.size())
    throw std::invalid_argument("scalarize: objectives, definitions and weights must have equal length");
  double s = 0.0;
  for (std::size_t i = 0; i < defs.size(); ++i) {
    const double v = defs[i].direction == Direction::Maximize ? -objectives[i] : objectives[i];
    s += weights[i] * v;
  }
  return s;
}

namespace {

double signed_obj(const Solution& s, const ProblemConfig& cfg, int i) {
  const double v = s.objectives[i];
  return cfg.obj_defs[i].direction == Direction::Maximize ? -v : v;
}

std::span<const double> obj_span(const Solution& s) {
  return {s.objectives.data(), static_cast<std::size_t>(s.objectives.size())};
}

double weighted_value(const Solution& s, const ProblemConfig& cfg, const WeightedMode& w) {
  return scalarize(obj_span(s), cfg.obj_defs, w.weights);
}

// Signed difference (a - b) on the first priority objective outside tolerance; 0 if all tied.
double lex_delta(const Solution& a, const Solution& b, const ProblemConfig& cfg, const LexicographicMode& lex,
                 bool use_tolerance) {
  for (int idx : lex.priority_order) {
    const double tol = use_tolerance ? lex.tolerances[idx] : 0.0;
    if (std::abs(a.objectives[idx] - b.objectives[idx]) <= tol) continue;
    return signed_obj(a, cfg, idx) - signed_obj(b, cfg, idx);
  }
  return 0.0;
}

Ordering from_delta(double d) {
  if (d < 0) return Ordering::ABetter;
  if (d > 0) return Ordering::BBetter;
  return Ordering::Equal;
}

Ordering mode_compare(const Solution& a, const Solution& b, const ProblemConfig& cfg, bool use_tolerance) {
  if (const auto* w = std::get_if<WeightedMode>(&cfg.comparison))
    return from_delta(weighted_value(a, cfg, *w) - weighted_value(b, cfg, *w));
  return from_delta(lex_delta(a, b, cfg, std::get<LexicographicMode>(cfg.comparison), use_tolerance));
}

}  // namespace

Ordering compare(const Solution& a, const Solution& b, const ProblemConfig& cfg) {
  const bool fa = a.feasible();
  const bool fb = b.feasible();
  if (fa != fb) return fa ? Ordering::ABetter : Ordering::BBetter;
  if (!fa) {
    if (a.penalty < b.penalty) return Ordering::ABetter;
    if (a.penalty > b.penalty) return Ordering::BBetter;
  }
  return mode_compare(a, b, cfg, true);
}

bool rank_less(const Solution& a, const Solution& b, const ProblemConfig& cfg) {
  const bool fa = a.feasible();
  const bool fb = b.feasible();
  if (fa != fb) return fa;
  if (!fa && a.penalty != b.penalty) return a.penalty < b.penalty;
  return mode_compare(a, b, cfg, false) == Ordering::ABetter;
}

double fitness(const Solution& sol, const ProblemConfig& cfg, double penalty_weight) {
  double base;
  if (const auto* w = std::get_if<WeightedMode>(&cfg.comparison))
    base = weighted_value(sol, cfg, *w);
  else
    base = signed_obj(sol, cfg, std::get<LexicographicMode>(cfg.comparison).priority_order.front());
  return base + penalty_weight * sol.penalty;
}

double fitness_delta(const Solution& candidate, const Solution& current, const ProblemConfig& cfg,
                     double penalty_weight) {
  const double pen = penalty_weight * (candidate.penalty - current.penalty);
  if (const auto* w = std::get_if<WeightedMode>(&cfg.comparison))
    return weighted_value(candidate, cfg, *w) - weighted_value(current, cfg, *w) + pen;
  return lex_delta(candidate, current, cfg, std::get<LexicographicMode>(cfg.comparison), true) + pen;
}

std::string to_string(EncodingKind k) {
  switch (k) {
    case EncodingKind::Permutation: return "permutation";
    case EncodingKind::Binary: return "binary";
    case EncodingKind::Integer: return "integer";
  }
  return "?";
}

std::string to_string(RowMode m) {
  switch (m) {
    case RowMode::SingleSeq: return "single_seq";
    case RowMode::MultiFixed: return "multi_fixed";
    case RowMode::MultiPartition: return "multi_partition";
  }
  return "?";
}

std::string to_string(Direction d) { return d == Direction::Minimize ? "minimize" : "maximize"; }

}  // namespace genopt
