#include "genopt/problem.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace genopt {

void evaluate_unchecked(const ProblemDefinition& problem, Solution& sol) {
  const auto& cfg = problem.config();
  const int m = cfg.num_objectives();
  if (sol.objectives.size() != m) sol.objectives.resize(m);
  for (int i = 0; i < m; ++i) sol.objectives[i] = problem.compute_objective(i, sol);
  sol.penalty = problem.compute_penalty(sol);
}

void evaluate(const ProblemDefinition& problem, Solution& sol) {
  const auto report = validate_solution(sol, problem.config());
  if (!report.ok()) {
    const auto& v = report.violations.front();
    throw std::invalid_argument("evaluation refused: row " + std::to_string(v.row) + ", position " +
                                std::to_string(v.position) + ": " + v.rule);
  }
  evaluate_unchecked(problem, sol);
}

Solution make_solution(const ProblemConfig& cfg) {
  Solution s(cfg.d1, cfg.d2, cfg.num_objectives());
  for (int r = 0; r < cfg.d1; ++r) {
    if (cfg.row_mode == RowMode::MultiPartition) {
      s.dim2_sizes[r] = 0;
    } else if (cfg.encoding.kind == EncodingKind::Permutation || cfg.row_mode == RowMode::SingleSeq) {
      s.dim2_sizes[r] = cfg.n;
    } else {
      s.dim2_sizes[r] = cfg.d2;
    }
  }
  return s;
}

Solution random_solution(const ProblemConfig& cfg, Rng& rng) {
  Solution s = make_solution(cfg);
  switch (cfg.encoding.kind) {
    case EncodingKind::Permutation:
      if (cfg.row_mode == RowMode::MultiPartition) {
        std::vector<int> perm(static_cast<std::size_t>(cfg.n));
        std::iota(perm.begin(), perm.end(), 0);
        shuffle(perm.begin(), perm.end(), rng);
        for (int v : perm) {
          int r = rng.index(cfg.d1);
          while (s.dim2_sizes[r] >= cfg.d2) r = (r + 1) % cfg.d1;
          s.data(r, s.dim2_sizes[r]++) = v;
        }
      } else {
        for (int r = 0; r < cfg.d1; ++r) {
          auto row = s.row(r);
          std::iota(row.begin(), row.end(), 0);
          shuffle(row.begin(), row.end(), rng);
        }
      }
      break;
    case EncodingKind::Binary:
      for (int r = 0; r < cfg.d1; ++r)
        for (int& v : s.row(r)) v = rng.coin() ? 1 : 0;
      break;
    case EncodingKind::Integer:
      for (int r = 0; r < cfg.d1; ++r)
        for (int& v : s.row(r))
          v = static_cast<int>(rng.uniform_int(cfg.encoding.lower_bound, cfg.encoding.upper_bound));
      break;
  }
  return s;
}

}  // namespace genopt
