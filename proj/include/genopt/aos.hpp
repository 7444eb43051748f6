#pragma once

#include "genopt/operators.hpp"
#include "genopt/rng.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

namespace genopt {

struct AosConfig {
  int update_interval = 10;  // batches between weight updates
  double ema_alpha = 0.7;
  double weight_floor = 0.01;
  double weight_cap = 0.6;
  double epsilon = 1e-6;
  int stagnation_threshold = 5;  // update batches without a new global best

  /// Throws std::invalid_argument on out-of-range values.
  void check() const;
};

/// Probabilities of applying 1, 2 or 3 sequences to one candidate.
struct KStepWeights {
  std::array<double, 3> w{0.8, 0.15, 0.05};

  static constexpr std::array<double, 3> kReset{0.8, 0.15, 0.05};
  double sum() const { return w[0] + w[1] + w[2]; }
};

/// Usage and improvement counters. Sequence counters are indexed by registry
/// slot, the K-level counters by k - 1.
class AosStats {
 public:
  AosStats() = default;
  explicit AosStats(std::size_t slots) : usage_(slots, 0), improvement_(slots, 0) {}

  void record_slot(std::size_t slot, bool improved);
  void record_k(int k, bool improved);

  std::size_t slots() const { return usage_.size(); }
  std::uint64_t usage(std::size_t slot) const { return usage_[slot]; }
  std::uint64_t improvement(std::size_t slot) const { return improvement_[slot]; }
  std::uint64_t k_usage(int k) const { return k_usage_[k - 1]; }
  std::uint64_t k_improvement(int k) const { return k_improvement_[k - 1]; }

  void reset();
  void reset_sequences();
  void reset_k();
  AosStats& operator+=(const AosStats& other);
  friend bool operator==(const AosStats&, const AosStats&) = default;

 private:
  std::vector<std::uint64_t> usage_, improvement_;
  std::array<std::uint64_t, 3> k_usage_{}, k_improvement_{};
};

/// Records one use of sequence `id`. Throws std::invalid_argument if `id`
/// is not in `registry`.
void record(AosStats& stats, const SequenceRegistry& registry, SequenceId id, bool improved);

/// Per-slot values of one update, before normalization, with the clamp
/// window that was applied.
struct WeightUpdate {
  std::vector<double> raw;      // EMA output
  std::vector<double> clamped;  // after clamping
  std::vector<double> lower, upper;
};

/// EMA update, clamp, single normalization; zeroes the sequence counters.
/// The clamp window of slot i is [min(floor, hi_i), hi_i] with
/// hi_i = min(weight_cap, entry cap).
WeightUpdate update_weights(SequenceRegistry& registry, AosStats& aggregated, const AosConfig& cfg);

/// Same EMA on the K-level, clamped to [floor, 1]; zeroes the K counters.
std::array<double, 3> update_k_weights(KStepWeights& k_weights, AosStats& aggregated, const AosConfig& cfg);

/// Draws k in {1, 2, 3} proportionally to the weights.
int sample_k(const KStepWeights& k_weights, Rng& rng);

using SlotFilter = std::function<bool(const SequenceEntry&)>;

/// Draws a registry slot proportionally to weight among the entries passing
/// `filter` (all when empty). Throws std::invalid_argument if none qualify.
std::size_t sample_slot(const SequenceRegistry& registry, Rng& rng, const SlotFilter& filter = {});

inline SequenceId sample_sequence(const SequenceRegistry& registry, Rng& rng, const SlotFilter& filter = {}) {
  return registry.entries()[sample_slot(registry, rng, filter)].id;
}

/// Resets the K-step weights to (0.8, 0.15, 0.05) and the counter to zero
/// once the counter exceeds the threshold. Returns whether a reset happened.
bool stagnation_check_and_reset(int& no_improve_batches, KStepWeights& k_weights, const AosConfig& cfg);

}  // namespace genopt
