#include "genopt/custom_ops.hpp"

#include "genopt/problems.hpp"

#include <stdexcept>

namespace genopt {

namespace {

constexpr int kSamples = 8;

const Eigen::MatrixXd& tsp_distance(const ProblemDefinition& problem) {
  const auto* tsp = dynamic_cast<const TspProblem*>(&problem);
  if (tsp == nullptr) throw std::invalid_argument("tsp delta operator used on " + problem.name());
  return tsp->distance();
}

void sampled_two_opt(Solution& sol, Rng& rng, const ProblemDefinition& problem) {
  const auto& d = tsp_distance(problem);
  auto tour = sol.row(0);
  const int n = static_cast<int>(tour.size());
  if (n < 4) return;
  double best = 0.0;
  int bi = -1, bj = -1;
  for (int s = 0; s < kSamples; ++s) {
    int i = rng.index(n), j = rng.index(n);
    if (i > j) std::swap(i, j);
    if (j - i < 2 || (i == 0 && j == n - 1)) continue;
    // Reverse tour[i+1..j]: edges (i,i+1),(j,j+1) become (i,j),(i+1,j+1).
    const int a = tour[i], b = tour[i + 1], c = tour[j], e = tour[(j + 1) % n];
    const double delta = d(a, c) + d(b, e) - d(a, b) - d(c, e);
    if (delta < best) {
      best = delta;
      bi = i;
      bj = j;
    }
  }
  if (bi >= 0) moves::reverse_segment(tour, bi + 1, bj);
}

// Relocates tour[start, start+len) to sit between tour[p] and tour[p+1].
double relocation_delta(const Eigen::MatrixXd& d, std::span<const int> t, int start, int len, int p) {
  const int n = static_cast<int>(t.size());
  const int prev = t[(start - 1 + n) % n], first = t[start], last = t[start + len - 1], next = t[(start + len) % n];
  const int u = t[p], v = t[(p + 1) % n];
  const double removed = d(prev, first) + d(last, next) + d(u, v);
  const double added = d(prev, next) + d(u, first) + d(last, v);
  return added - removed;
}

void relocate(Solution& sol, Rng& rng, const ProblemDefinition& problem, int max_len) {
  const auto& d = tsp_distance(problem);
  auto tour = sol.row(0);
  const int n = static_cast<int>(tour.size());
  if (n < max_len + 3) return;
  double best = 0.0;
  int bs = -1, bl = 0, bp = -1;
  for (int s = 0; s < kSamples; ++s) {
    const int len = static_cast<int>(rng.uniform_int(1, max_len));
    const int start = static_cast<int>(rng.uniform_int(1, n - len - 1));  // keeps the segment off the wrap
    const int p = rng.index(n);
    if (p >= start - 1 && p < start + len) continue;
    const double delta = relocation_delta(d, tour, start, len, p);
    if (delta < best) {
      best = delta;
      bs = start;
      bl = len;
      bp = p;
    }
  }
  if (bs < 0) return;
  // Target index in the shortened sequence.
  const int to = bp < bs ? bp + 1 : bp + 1 - bl;
  moves::move_segment(tour, bs, bl, to);
}

}  // namespace

std::vector<CustomOperator> tsp_delta_operators() {
  return {
      {100, "tsp_two_opt_delta", 1.0, sampled_two_opt},
      {101, "tsp_or_opt_delta", 1.0, [](Solution& s, Rng& r, const ProblemDefinition& p) { relocate(s, r, p, 3); }},
      {102, "tsp_node_insert_delta", 1.0, [](Solution& s, Rng& r, const ProblemDefinition& p) { relocate(s, r, p, 1); }},
  };
}

CustomOperator duplicating_operator(SequenceId id) {
  return {id, "duplicate_element", 1.0, [](Solution& sol, Rng& rng, const ProblemDefinition&) {
            auto row = sol.row(0);
            if (row.size() < 2) return;
            row[1] = row[0];
            (void)rng;
          }};
}

std::vector<CustomOperator> custom_operator_set(const std::string& name) {
  if (name == "tsp-delta") return tsp_delta_operators();
  if (name == "broken-demo") return {duplicating_operator()};
  throw std::invalid_argument("unknown operator set: " + name);
}

}  // namespace genopt
