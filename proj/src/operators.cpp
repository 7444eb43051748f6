#include "genopt/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace genopt {

// ---------------------------------------------------------------------------
// Move primitives

namespace moves {

void swap_cells(std::span<int> row, int i, int j) { std::swap(row[i], row[j]); }

void reverse_segment(std::span<int> row, int i, int j) {
  if (i > j) std::swap(i, j);
  std::reverse(row.begin() + i, row.begin() + j + 1);
}

void insert_element(std::span<int> row, int from, int to) {
  if (from < to)
    std::rotate(row.begin() + from, row.begin() + from + 1, row.begin() + to + 1);
  else if (from > to)
    std::rotate(row.begin() + to, row.begin() + from, row.begin() + from + 1);
}

void move_segment(std::span<int> row, int start, int len, int to) {
  // `to` indexes the sequence with the segment removed.
  if (to == start) return;
  if (to < start)
    std::rotate(row.begin() + to, row.begin() + start, row.begin() + start + len);
  else
    std::rotate(row.begin() + start, row.begin() + start + len, row.begin() + to + len);
}

void three_opt(std::span<int> row, int a, int b, int c, int variant) {
  std::vector<int> seg_b(row.begin() + a, row.begin() + b);
  std::vector<int> seg_c(row.begin() + b, row.begin() + c);
  switch (variant) {
    case 0: break;
    case 1:
      std::ranges::reverse(seg_b);
      std::ranges::reverse(seg_c);
      std::swap(seg_b, seg_c);
      break;
    case 2: std::ranges::reverse(seg_c); break;
    case 3: std::ranges::reverse(seg_b); break;
    default: throw std::invalid_argument("three_opt: variant must be in [0, 3]");
  }
  // variant 1 swapped the buffers, so C-then-B order still yields B' C'.
  auto out = std::copy(seg_c.begin(), seg_c.end(), row.begin() + a);
  std::copy(seg_b.begin(), seg_b.end(), out);
}

std::vector<int> order_crossover(std::span<const int> p1, std::span<const int> p2, int c1, int c2) {
  const int n = static_cast<int>(p1.size());
  if (static_cast<int>(p2.size()) != n) throw std::invalid_argument("order_crossover: parent lengths differ");
  if (c1 > c2) std::swap(c1, c2);
  std::vector<int> child(p1.begin(), p1.end());
  if (n == 0) return child;
  std::vector<int> kept(p1.begin() + c1, p1.begin() + c2 + 1);
  std::ranges::sort(kept);
  int write = (c2 + 1) % n;
  for (int k = 0; k < n; ++k) {
    const int gene = p2[(c2 + 1 + k) % n];
    if (std::ranges::binary_search(kept, gene)) continue;
    child[write] = gene;
    write = (write + 1) % n;
  }
  return child;
}

}  // namespace moves

// ---------------------------------------------------------------------------
// Registry

namespace {

struct BuiltinInfo {
  SequenceId id;
  const char* name;
  OperatorFamily family;
};

constexpr BuiltinInfo kBuiltins[] = {
    {seq::Swap, "swap", OperatorFamily::Element},
    {seq::Insert, "insert", OperatorFamily::Element},
    {seq::Reverse, "reverse", OperatorFamily::Element},
    {seq::OrOpt, "or_opt", OperatorFamily::OrOpt},
    {seq::ThreeOpt, "three_opt", OperatorFamily::ThreeOpt},
    {seq::Flip, "flip", OperatorFamily::Element},
    {seq::SegFlip, "seg_flip", OperatorFamily::Segment},
    {seq::RandomReset, "random_reset", OperatorFamily::Element},
    {seq::SegReset, "seg_reset", OperatorFamily::Segment},
    {seq::RowSwap, "row_swap", OperatorFamily::Row},
    {seq::RowSplit, "row_split", OperatorFamily::Row},
    {seq::RowMerge, "row_merge", OperatorFamily::Row},
    {seq::OxCrossover, "ox_crossover", OperatorFamily::Crossover},
    {seq::UniformCrossover, "uniform_crossover", OperatorFamily::Crossover},
    {seq::LnsSegmentShuffle, "lns_segment_shuffle", OperatorFamily::Lns},
    {seq::LnsScatterShuffle, "lns_scatter_shuffle", OperatorFamily::Lns},
    {seq::LnsGuidedRebuild, "lns_guided_rebuild", OperatorFamily::Lns},
};

const BuiltinInfo* info_of(SequenceId id) {
  for (const auto& s : kBuiltins)
    if (s.id == id) return &s;
  return nullptr;
}

}  // namespace

bool builtin_applicable(SequenceId id, const ProblemConfig& cfg) {
  const auto kind = cfg.encoding.kind;
  const bool perm = kind == EncodingKind::Permutation;
  switch (id) {
    case seq::Swap:
    case seq::Insert:
    case seq::Reverse:
    case seq::OrOpt:
    case seq::ThreeOpt:
    case seq::OxCrossover: return perm;
    case seq::Flip:
    case seq::SegFlip: return kind == EncodingKind::Binary;
    case seq::RandomReset:
    case seq::SegReset: return kind == EncodingKind::Integer;
    case seq::UniformCrossover: return !perm;
    case seq::RowSwap: return cfg.d1 >= 2;
    case seq::RowSplit:
    case seq::RowMerge: return cfg.row_mode == RowMode::MultiPartition && cfg.d1 >= 2;
    case seq::LnsSegmentShuffle:
    case seq::LnsScatterShuffle:
    case seq::LnsGuidedRebuild: return true;
    default: return false;
  }
}

std::string builtin_name(SequenceId id) {
  const auto* s = info_of(id);
  return s ? s->name : "unknown";
}

OperatorFamily builtin_family(SequenceId id) {
  const auto* s = info_of(id);
  if (!s) throw std::invalid_argument("not a built-in sequence id: " + std::to_string(id));
  return s->family;
}

SequenceRegistry SequenceRegistry::for_config(const ProblemConfig& cfg, double weight_floor, double weight_cap) {
  SequenceRegistry reg;
  reg.floor_ = weight_floor;
  reg.cap_ = weight_cap;
  for (const auto& s : kBuiltins) {
    if (!builtin_applicable(s.id, cfg)) continue;
    SequenceEntry e;
    e.id = s.id;
    e.name = s.name;
    e.family = s.family;
    e.prior = 1.0;
    e.floor = weight_floor;
    e.cap = weight_cap;
    reg.entries_.push_back(std::move(e));
  }
  reg.normalize_priors();
  return reg;
}

std::optional<std::size_t> SequenceRegistry::find(SequenceId id) const {
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i].id == id) return i;
  return std::nullopt;
}

bool SequenceRegistry::has_family(OperatorFamily f) const {
  return std::ranges::any_of(entries_, [f](const SequenceEntry& e) { return e.family == f; });
}

void SequenceRegistry::normalize_priors() {
  double total = 0.0;
  for (const auto& e : entries_) total += e.prior;
  for (auto& e : entries_) e.weight = total > 0 ? e.prior / total : 0.0;
}

void SequenceRegistry::normalize_weights() {
  double total = 0.0;
  for (const auto& e : entries_) total += e.weight;
  if (total <= 0) return;
  for (auto& e : entries_) e.weight /= total;
}

int lns_scope(int n) {
  const double raw = std::min(0.1 * n, 30.0);
  return std::max(2, static_cast<int>(std::ceil(raw - 1e-12)));
}

// ---------------------------------------------------------------------------
// Random operators

namespace {

int* buffer(Solution& s, int r) { return s.data.row(r).data(); }

void erase_at(Solution& s, int r, int p) {
  int* b = buffer(s, r);
  std::copy(b + p + 1, b + s.dim2_sizes[r], b + p);
  --s.dim2_sizes[r];
}

void insert_at(Solution& s, int r, int p, int v) {
  int* b = buffer(s, r);
  const int len = s.dim2_sizes[r];
  std::copy_backward(b + p, b + len, b + len + 1);
  b[p] = v;
  ++s.dim2_sizes[r];
}

/// Uniformly random row with at least `min_size` active cells, or -1.
int pick_row(const Solution& s, Rng& rng, int min_size) {
  int count = 0;
  for (int r = 0; r < s.rows(); ++r) count += s.dim2_sizes[r] >= min_size ? 1 : 0;
  if (count == 0) return -1;
  int k = rng.index(count);
  for (int r = 0; r < s.rows(); ++r) {
    if (s.dim2_sizes[r] < min_size) continue;
    if (k-- == 0) return r;
  }
  return -1;
}

/// Uniformly random row with room for `extra` more cells.
int pick_row_with_space(const Solution& s, Rng& rng, int extra) {
  int count = 0;
  for (int r = 0; r < s.rows(); ++r) count += s.dim2_sizes[r] + extra <= s.capacity() ? 1 : 0;
  if (count == 0) return -1;
  int k = rng.index(count);
  for (int r = 0; r < s.rows(); ++r) {
    if (s.dim2_sizes[r] + extra > s.capacity()) continue;
    if (k-- == 0) return r;
  }
  return -1;
}

int total_active(const Solution& s) { return s.dim2_sizes.sum(); }

std::pair<int, int> cell_at(const Solution& s, int flat) {
  for (int r = 0; r < s.rows(); ++r) {
    if (flat < s.dim2_sizes[r]) return {r, flat};
    flat -= s.dim2_sizes[r];
  }
  return {-1, -1};
}

int segment_length(int size, Rng& rng) {
  const int lo = std::min(2, size);
  const int hi = std::max(lo, size / 2);
  return static_cast<int>(rng.uniform_int(lo, hi));
}

/// Two distinct positions in [0, size).
std::pair<int, int> two_positions(int size, Rng& rng) {
  const int i = rng.index(size);
  int j = rng.index(size - 1);
  if (j >= i) ++j;
  return {i, j};
}

void op_swap(Solution& s, Rng& rng, const ProblemConfig& cfg) {
  if (cfg.row_mode == RowMode::MultiPartition) {
    const int total = total_active(s);
    if (total < 2) return;
    auto [i, j] = two_positions(total, rng);
    auto [ri, pi] = cell_at(s, i);
    auto [rj, pj] = cell_at(s, j);
    std::swap(s.data(ri, pi), s.data(rj, pj));
    return;
  }
  const int r = pick_row(s, rng, 2);
  if (r < 0) return;
  auto [i, j] = two_positions(s.size(r), rng);
  moves::swap_cells(s.row(r), i, j);
}

void op_insert(Solution& s, Rng& rng, const ProblemConfig& cfg) {
  if (cfg.row_mode == RowMode::MultiPartition) {
    const int total = total_active(s);
    if (total < 1) return;
    auto [r, p] = cell_at(s, rng.index(total));
    const int v = s.data(r, p);
    erase_at(s, r, p);
    const int t = pick_row_with_space(s, rng, 1);
    insert_at(s, t, rng.index(s.size(t) + 1), v);
    return;
  }
  const int r = pick_row(s, rng, 2);
  if (r < 0) return;
  auto [i, j] = two_positions(s.size(r), rng);
  moves::insert_element(s.row(r), i, j);
}

void op_reverse(Solution& s, Rng& rng) {
  const int r = pick_row(s, rng, 2);
  if (r < 0) return;
  auto [i, j] = two_positions(s.size(r), rng);
  moves::reverse_segment(s.row(r), i, j);
}

void op_or_opt(Solution& s, Rng& rng, const ProblemConfig& cfg) {
  const int r = pick_row(s, rng, 3);
  if (r < 0) return;
  const int size = s.size(r);
  const int len = static_cast<int>(rng.uniform_int(2, std::min(3, size - 1)));
  const int start = rng.index(size - len + 1);
  if (cfg.row_mode == RowMode::MultiPartition && rng.coin()) {
    std::vector<int> seg(buffer(s, r) + start, buffer(s, r) + start + len);
    for (int k = 0; k < len; ++k) erase_at(s, r, start);
    const int t = pick_row_with_space(s, rng, len);
    int at = rng.index(s.size(t) + 1);
    for (int v : seg) insert_at(s, t, at++, v);
    return;
  }
  int to = rng.index(size - len);
  if (to >= start) ++to;  // any position other than the original one
  moves::move_segment(s.row(r), start, len, to);
}

void op_three_opt(Solution& s, Rng& rng) {
  const int r = pick_row(s, rng, 3);
  if (r < 0) return;
  const int size = s.size(r);
  const int a = rng.index(size - 1);                                   // [0, size-2]
  const int b = static_cast<int>(rng.uniform_int(a + 1, size - 1));   // B nonempty
  const int c = static_cast<int>(rng.uniform_int(b + 1, size));       // C nonempty
  moves::three_opt(s.row(r), a, b, c, rng.index(4));
}

void op_flip(Solution& s, Rng& rng) {
  const int total = total_active(s);
  if (total < 1) return;
  auto [r, p] = cell_at(s, rng.index(total));
  s.data(r, p) ^= 1;
}

void op_seg_flip(Solution& s, Rng& rng) {
  const int r = pick_row(s, rng, 1);
  if (r < 0) return;
  const int len = segment_length(s.size(r), rng);
  const int start = rng.index(s.size(r) - len + 1);
  for (int p = start; p < start + len; ++p) s.data(r, p) ^= 1;
}

int random_value(const ProblemConfig& cfg, Rng& rng) {
  return static_cast<int>(rng.uniform_int(cfg.encoding.lower_bound, cfg.encoding.upper_bound));
}

void op_random_reset(Solution& s, Rng& rng, const ProblemConfig& cfg) {
  const int total = total_active(s);
  if (total < 1) return;
  auto [r, p] = cell_at(s, rng.index(total));
  s.data(r, p) = random_value(cfg, rng);
}

void op_seg_reset(Solution& s, Rng& rng, const ProblemConfig& cfg) {
  const int r = pick_row(s, rng, 1);
  if (r < 0) return;
  const int len = segment_length(s.size(r), rng);
  const int start = rng.index(s.size(r) - len + 1);
  for (int p = start; p < start + len; ++p) s.data(r, p) = random_value(cfg, rng);
}

void op_row_swap(Solution& s, Rng& rng) {
  if (s.rows() < 2) return;
  auto [a, b] = two_positions(s.rows(), rng);
  s.data.row(a).swap(s.data.row(b));
  std::swap(s.dim2_sizes[a], s.dim2_sizes[b]);
}

void op_row_split(Solution& s, Rng& rng) {
  const int src = pick_row(s, rng, 2);
  if (src < 0) return;
  int empties = 0;
  for (int r = 0; r < s.rows(); ++r) empties += s.size(r) == 0 ? 1 : 0;
  if (empties == 0) return;
  int k = rng.index(empties), dst = -1;
  for (int r = 0; r < s.rows() && dst < 0; ++r)
    if (s.size(r) == 0 && k-- == 0) dst = r;
  const int cut = static_cast<int>(rng.uniform_int(1, s.size(src) - 1));
  const int tail = s.size(src) - cut;
  std::copy(buffer(s, src) + cut, buffer(s, src) + s.size(src), buffer(s, dst));
  s.dim2_sizes[dst] = tail;
  s.dim2_sizes[src] = cut;
}

void op_row_merge(Solution& s, Rng& rng) {
  const int a = pick_row(s, rng, 1);
  if (a < 0) return;
  int others = 0;
  for (int r = 0; r < s.rows(); ++r) others += (r != a && s.size(r) > 0) ? 1 : 0;
  if (others == 0) return;
  int k = rng.index(others), b = -1;
  for (int r = 0; r < s.rows() && b < 0; ++r)
    if (r != a && s.size(r) > 0 && k-- == 0) b = r;
  if (s.size(a) + s.size(b) > s.capacity()) return;
  std::copy(buffer(s, b), buffer(s, b) + s.size(b), buffer(s, a) + s.size(a));
  s.dim2_sizes[a] += s.dim2_sizes[b];
  s.dim2_sizes[b] = 0;
}

std::vector<int> flatten(const Solution& s) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(total_active(s)));
  for (int r = 0; r < s.rows(); ++r) {
    const auto row = s.row(r);
    out.insert(out.end(), row.begin(), row.end());
  }
  return out;
}

void op_ox(Solution& s, Rng& rng, const ProblemConfig& cfg, const Solution* mate) {
  if (mate == nullptr || mate == &s) return;
  if (cfg.row_mode == RowMode::MultiPartition) {
    const auto p1 = flatten(s);
    const auto p2 = flatten(*mate);
    if (p1.size() < 2 || p1.size() != p2.size()) return;
    const int n = static_cast<int>(p1.size());
    const auto child = moves::order_crossover(p1, p2, rng.index(n), rng.index(n));
    int k = 0;
    for (int r = 0; r < s.rows(); ++r)
      for (int& v : s.row(r)) v = child[k++];
    return;
  }
  for (int r = 0; r < s.rows(); ++r) {
    const int n = s.size(r);
    if (n < 2 || mate->size(r) != n) continue;
    const auto child = moves::order_crossover(s.row(r), mate->row(r), rng.index(n), rng.index(n));
    std::ranges::copy(child, s.row(r).begin());
  }
}

void op_uniform(Solution& s, Rng& rng, const Solution* mate) {
  if (mate == nullptr || mate == &s) return;
  for (int r = 0; r < s.rows(); ++r) {
    if (mate->size(r) != s.size(r)) continue;
    for (int p = 0; p < s.size(r); ++p)
      if (rng.coin()) s.data(r, p) = mate->data(r, p);
  }
}

void op_segment_shuffle(Solution& s, Rng& rng, const ProblemConfig& cfg) {
  const int r = pick_row(s, rng, 2);
  if (r < 0) return;
  const int len = std::min(lns_scope(cfg.n), s.size(r));
  const int start = rng.index(s.size(r) - len + 1);
  auto row = s.row(r);
  shuffle(row.begin() + start, row.begin() + start + len, rng);
}

/// `count` distinct flat cell indices drawn from [0, total).
std::vector<int> distinct_cells(int total, int count, Rng& rng) {
  std::vector<int> idx(static_cast<std::size_t>(total));
  std::iota(idx.begin(), idx.end(), 0);
  count = std::min(count, total);
  for (int i = 0; i < count; ++i) std::swap(idx[i], idx[i + rng.index(total - i)]);
  idx.resize(static_cast<std::size_t>(count));
  return idx;
}

void op_scatter_shuffle(Solution& s, Rng& rng, const ProblemConfig& cfg) {
  const bool within_row = cfg.encoding.kind == EncodingKind::Permutation && cfg.row_mode == RowMode::MultiFixed;
  const int k = lns_scope(cfg.n);
  if (within_row) {
    const int r = pick_row(s, rng, 2);
    if (r < 0) return;
    const auto cells = distinct_cells(s.size(r), k, rng);
    std::vector<int> vals;
    for (int p : cells) vals.push_back(s.data(r, p));
    shuffle(vals.begin(), vals.end(), rng);
    for (std::size_t i = 0; i < cells.size(); ++i) s.data(r, cells[i]) = vals[i];
    return;
  }
  const int total = total_active(s);
  if (total < 2) return;
  const auto cells = distinct_cells(total, k, rng);
  std::vector<std::pair<int, int>> pos;
  std::vector<int> vals;
  for (int f : cells) {
    pos.push_back(cell_at(s, f));
    vals.push_back(s.data(pos.back().first, pos.back().second));
  }
  shuffle(vals.begin(), vals.end(), rng);
  for (std::size_t i = 0; i < pos.size(); ++i) s.data(pos[i].first, pos[i].second) = vals[i];
}

double score(const ProblemDefinition& problem, Solution& s, const ProblemConfig& cfg, double pw) {
  evaluate_unchecked(problem, s);
  return fitness(s, cfg, pw);
}

void op_guided_rebuild(Solution& s, Rng& rng, const ProblemConfig& cfg, const OperatorContext& ctx) {
  if (ctx.problem == nullptr) throw std::invalid_argument("lns_guided_rebuild needs a problem handle");
  const auto& problem = *ctx.problem;
  const int k = lns_scope(cfg.n);
  const int total = total_active(s);
  if (total < 1) return;

  if (cfg.encoding.kind != EncodingKind::Permutation) {
    const auto cells = distinct_cells(total, k, rng);
    const bool binary = cfg.encoding.kind == EncodingKind::Binary;
    const int lo = binary ? 0 : cfg.encoding.lower_bound;
    const int hi = binary ? 1 : cfg.encoding.upper_bound;
    const bool enumerate = static_cast<long long>(hi) - lo + 1 <= 16;
    for (int f : cells) {
      auto [r, p] = cell_at(s, f);
      int best_v = s.data(r, p);
      double best = score(problem, s, cfg, ctx.penalty_weight);
      auto consider = [&](int v) {
        s.data(r, p) = v;
        const double sc = score(problem, s, cfg, ctx.penalty_weight);
        if (sc < best) {
          best = sc;
          best_v = v;
        }
      };
      if (enumerate)
        for (int v = lo; v <= hi; ++v) consider(v);
      else
        for (int t = 0; t < 16; ++t) consider(static_cast<int>(rng.uniform_int(lo, hi)));
      s.data(r, p) = best_v;
    }
    return;
  }

  // Pick the elements first, then relocate them one at a time so every
  // trial evaluation sees a complete solution.
  std::vector<int> elements;
  for (int f : distinct_cells(total, k, rng)) {
    auto [r, p] = cell_at(s, f);
    elements.push_back(s.data(r, p));
  }
  const bool partition = cfg.row_mode == RowMode::MultiPartition;
  for (int e : elements) {
    int r = -1, p = -1;
    for (int rr = 0; rr < s.rows() && r < 0; ++rr) {
      const auto row = s.row(rr);
      auto it = std::ranges::find(row, e);
      if (it != row.end()) {
        r = rr;
        p = static_cast<int>(it - row.begin());
      }
    }
    erase_at(s, r, p);
    int best_r = r, best_p = p;
    double best = std::numeric_limits<double>::infinity();
    const int r_lo = partition ? 0 : r;
    const int r_hi = partition ? s.rows() - 1 : r;
    for (int t = r_lo; t <= r_hi; ++t) {
      if (s.size(t) >= s.capacity()) continue;
      for (int q = 0; q <= s.size(t); ++q) {
        insert_at(s, t, q, e);
        const double sc = score(problem, s, cfg, ctx.penalty_weight);
        erase_at(s, t, q);
        if (sc < best) {
          best = sc;
          best_r = t;
          best_p = q;
        }
      }
    }
    insert_at(s, best_r, best_p, e);
  }
}

}  // namespace

void apply_entry(const SequenceEntry& entry, Solution& sol, Rng& rng, const OperatorContext& ctx,
                 const ProblemConfig& cfg) {
  if (entry.family == OperatorFamily::Custom) {
    if (ctx.problem == nullptr) throw std::invalid_argument("custom operator needs a problem handle");
    entry.apply(sol, rng, *ctx.problem);
    return;
  }
  switch (entry.id) {
    case seq::Swap: op_swap(sol, rng, cfg); break;
    case seq::Insert: op_insert(sol, rng, cfg); break;
    case seq::Reverse: op_reverse(sol, rng); break;
    case seq::OrOpt: op_or_opt(sol, rng, cfg); break;
    case seq::ThreeOpt: op_three_opt(sol, rng); break;
    case seq::Flip: op_flip(sol, rng); break;
    case seq::SegFlip: op_seg_flip(sol, rng); break;
    case seq::RandomReset: op_random_reset(sol, rng, cfg); break;
    case seq::SegReset: op_seg_reset(sol, rng, cfg); break;
    case seq::RowSwap: op_row_swap(sol, rng); break;
    case seq::RowSplit: op_row_split(sol, rng); break;
    case seq::RowMerge: op_row_merge(sol, rng); break;
    case seq::OxCrossover: op_ox(sol, rng, cfg, ctx.mate); break;
    case seq::UniformCrossover: op_uniform(sol, rng, ctx.mate); break;
    case seq::LnsSegmentShuffle: op_segment_shuffle(sol, rng, cfg); break;
    case seq::LnsScatterShuffle: op_scatter_shuffle(sol, rng, cfg); break;
    case seq::LnsGuidedRebuild: op_guided_rebuild(sol, rng, cfg, ctx); break;
    default: throw std::invalid_argument("no dispatch for sequence id " + std::to_string(entry.id));
  }
}

void apply_sequence(SequenceId id, Solution& sol, Rng& rng, const OperatorContext& ctx, const ProblemConfig& cfg,
                    const SequenceRegistry& registry) {
  const auto slot = registry.find(id);
  if (!slot) {
    if (id <= kMaxBuiltinId && info_of(id) != nullptr && !builtin_applicable(id, cfg))
      throw std::invalid_argument("sequence " + builtin_name(id) + " is not applicable to " +
                                  to_string(cfg.encoding.kind) + "/" + to_string(cfg.row_mode));
    throw std::invalid_argument("unknown sequence id " + std::to_string(id));
  }
  apply_entry(registry.entries()[*slot], sol, rng, ctx, cfg);
}

RegistrationOutcome register_custom(SequenceRegistry& registry, const CustomOperator& op, const Solution& probe,
                                    const ProblemDefinition& problem, std::uint64_t probe_seed) {
  if (op.id < kMinCustomId)
    throw std::invalid_argument("custom operator '" + op.name + "': id " + std::to_string(op.id) +
                                (op.id <= kMaxBuiltinId ? " is a reserved built-in ID" : " is in the reserved band [32, 100)"));
  if (registry.contains(op.id))
    throw std::invalid_argument("custom operator '" + op.name + "': duplicate id " + std::to_string(op.id));
  if (!op.apply) throw std::invalid_argument("custom operator '" + op.name + "' has no body");
  if (!(op.initial_weight > 0)) throw std::invalid_argument("custom operator '" + op.name + "': weight must be positive");

  const auto& cfg = problem.config();
  constexpr int kProbeTrials = 4;
  for (int t = 0; t < kProbeTrials; ++t) {
    Solution trial = probe;
    Rng rng(derive_seed({probe_seed, static_cast<std::uint64_t>(op.id), static_cast<std::uint64_t>(t)}));
    try {
      op.apply(trial, rng, problem);
    } catch (const std::exception& e) {
      return {false, "custom operator '" + op.name + "' (id " + std::to_string(op.id) +
                         ") excluded: probe raised: " + e.what()};
    } catch (...) {
      return {false, "custom operator '" + op.name + "' (id " + std::to_string(op.id) + ") excluded: probe raised"};
    }
    const auto report = validate_solution(trial, cfg);
    if (!report.ok())
      return {false, "custom operator '" + op.name + "' (id " + std::to_string(op.id) +
                         ") excluded: probe produced an invalid solution (" + report.violations.front().rule + ")"};
  }

  SequenceEntry e;
  e.id = op.id;
  e.name = op.name;
  e.family = OperatorFamily::Custom;
  e.prior = op.initial_weight;
  e.floor = registry.weight_floor();
  e.cap = registry.weight_cap();
  e.apply = op.apply;
  registry.add(std::move(e));
  registry.normalize_priors();
  return {true, {}};
}

}  // namespace genopt
