#pragma once

#include "genopt/encoding.hpp"
#include "genopt/problem.hpp"
#include "genopt/rng.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace genopt {

/// Operator identifier. Built-ins live in [0, 31]; user operators use ids
/// >= 100; [32, 100) is reserved.
using SequenceId = int;

inline constexpr SequenceId kMaxBuiltinId = 31;
inline constexpr SequenceId kMinCustomId = 100;

namespace seq {
inline constexpr SequenceId Swap = 0;
inline constexpr SequenceId Insert = 1;
inline constexpr SequenceId Reverse = 2;
inline constexpr SequenceId OrOpt = 3;
inline constexpr SequenceId ThreeOpt = 4;
inline constexpr SequenceId Flip = 5;
inline constexpr SequenceId SegFlip = 6;
inline constexpr SequenceId RandomReset = 7;
inline constexpr SequenceId SegReset = 8;
inline constexpr SequenceId RowSwap = 9;
inline constexpr SequenceId RowSplit = 10;
inline constexpr SequenceId RowMerge = 11;
inline constexpr SequenceId OxCrossover = 12;
inline constexpr SequenceId UniformCrossover = 13;
inline constexpr SequenceId LnsSegmentShuffle = 14;
inline constexpr SequenceId LnsScatterShuffle = 15;
inline constexpr SequenceId LnsGuidedRebuild = 16;
}  // namespace seq

enum class OperatorFamily { Element, Segment, OrOpt, ThreeOpt, Row, Crossover, Lns, Custom };

/// Everything an operator may read besides the solution it mutates.
struct OperatorContext {
  const ProblemDefinition* problem = nullptr;
  /// Second parent for crossover; nullptr (or the solution itself) makes crossover a no-op.
  const Solution* mate = nullptr;
  /// Penalty multiplier used by guided rebuild when it scores trial insertions.
  double penalty_weight = 1000.0;
};

/// User operator body. Receives the working copy, the lane's random stream
/// and the problem (downcast to the concrete type to reach instance data).
using CustomApply = std::function<void(Solution&, Rng&, const ProblemDefinition&)>;

struct CustomOperator {
  SequenceId id = kMinCustomId;
  std::string name;
  double initial_weight = 1.0;
  CustomApply apply;
};

struct SequenceEntry {
  SequenceId id = 0;
  std::string name;
  OperatorFamily family = OperatorFamily::Element;
  double weight = 0.0;  // normalized selection probability
  double prior = 1.0;   // pre-normalization mass from the preset
  double floor = 0.01;
  double cap = 0.6;     // min(global cap, per-sequence cap)
  CustomApply apply;    // custom operators only
};

/// Catalog of the operators applicable to one problem configuration.
class SequenceRegistry {
 public:
  SequenceRegistry() = default;

  /// Built-ins applicable to `cfg`, uniform prior mass 1.0 each.
  static SequenceRegistry for_config(const ProblemConfig& cfg, double weight_floor = 0.01, double weight_cap = 0.6);

  const std::vector<SequenceEntry>& entries() const { return entries_; }
  std::vector<SequenceEntry>& entries() { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  std::optional<std::size_t> find(SequenceId id) const;
  bool contains(SequenceId id) const { return find(id).has_value(); }
  bool has_family(OperatorFamily f) const;

  /// weight_i = prior_i / sum(prior).
  void normalize_priors();
  /// Rescales current weights to sum to 1.
  void normalize_weights();

  double weight_floor() const { return floor_; }
  double weight_cap() const { return cap_; }

  void add(SequenceEntry e) { entries_.push_back(std::move(e)); }

 private:
  std::vector<SequenceEntry> entries_;
  double floor_ = 0.01;
  double cap_ = 0.6;
};

/// Whether built-in `id` can act on solutions of `cfg`.
bool builtin_applicable(SequenceId id, const ProblemConfig& cfg);
std::string builtin_name(SequenceId id);
OperatorFamily builtin_family(SequenceId id);

/// LNS destruction size: ceil(min(0.1 n, 30)), at least 2.
int lns_scope(int n);

/// Applies one registered operator to `sol`. Throws std::invalid_argument when
/// `id` is unknown or not applicable to `cfg`.
void apply_sequence(SequenceId id, Solution& sol, Rng& rng, const OperatorContext& ctx, const ProblemConfig& cfg,
                    const SequenceRegistry& registry);

/// Dispatch for an entry already looked up in the registry.
void apply_entry(const SequenceEntry& entry, Solution& sol, Rng& rng, const OperatorContext& ctx,
                 const ProblemConfig& cfg);

struct RegistrationOutcome {
  bool registered = false;
  std::string warning;  // set when the operator was excluded by the probe
};

/// Adds a user operator after probing it on copies of `probe`. Throws
/// std::invalid_argument for an id below 100 or a duplicate id; a probe
/// failure (exception or invalid result) excludes the operator and leaves
/// the registry untouched.
RegistrationOutcome register_custom(SequenceRegistry& registry, const CustomOperator& op, const Solution& probe,
                                    const ProblemDefinition& problem, std::uint64_t probe_seed = 0);

/// Deterministic move primitives behind the random operators.
namespace moves {

void swap_cells(std::span<int> row, int i, int j);
/// Reverses row[i..j] inclusive.
void reverse_segment(std::span<int> row, int i, int j);
/// Removes row[from] and reinserts it so that it ends at index `to`.
void insert_element(std::span<int> row, int from, int to);
/// Moves row[start, start+len) so the segment begins at index `to` of the
/// shortened sequence.
void move_segment(std::span<int> row, int start, int len, int to);
/// Three-cut reconnection of segments B = [a,b), C = [b,c):
/// variant 0 -> A C B D, 1 -> A B' C' D, 2 -> A C' B D, 3 -> A C B' D.
void three_opt(std::span<int> row, int a, int b, int c, int variant);
/// Order crossover: child keeps p1[c1..c2], remaining slots are filled from
/// c2+1 (wrapping) with p2's genes in p2 order starting at c2+1.
std::vector<int> order_crossover(std::span<const int> p1, std::span<const int> p2, int c1, int c2);

}  // namespace moves

}  // namespace genopt
