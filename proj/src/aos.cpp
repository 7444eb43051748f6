#include "genopt/aos.hpp"

#include <algorithm>
#include <stdexcept>

namespace genopt {

void AosConfig::check() const {
  if (update_interval < 1) throw std::invalid_argument("aos: update_interval must be >= 1");
  if (!(ema_alpha > 0 && ema_alpha < 1)) throw std::invalid_argument("aos: ema_alpha must be in (0, 1)");
  if (!(weight_floor >= 0 && weight_floor < weight_cap)) throw std::invalid_argument("aos: need 0 <= floor < cap");
  if (!(weight_cap <= 1)) throw std::invalid_argument("aos: weight_cap must be <= 1");
  if (!(epsilon > 0)) throw std::invalid_argument("aos: epsilon must be positive");
  if (stagnation_threshold < 0) throw std::invalid_argument("aos: negative stagnation threshold");
}

void AosStats::record_slot(std::size_t slot, bool improved) {
  ++usage_.at(slot);
  if (improved) ++improvement_[slot];
}

void AosStats::record_k(int k, bool improved) {
  if (k < 1 || k > 3) throw std::invalid_argument("aos: k must be 1, 2 or 3");
  ++k_usage_[k - 1];
  if (improved) ++k_improvement_[k - 1];
}

void AosStats::reset() {
  reset_sequences();
  reset_k();
}

void AosStats::reset_sequences() {
  std::ranges::fill(usage_, 0);
  std::ranges::fill(improvement_, 0);
}

void AosStats::reset_k() {
  k_usage_.fill(0);
  k_improvement_.fill(0);
}

AosStats& AosStats::operator+=(const AosStats& other) {
  if (usage_.empty()) {
    usage_.assign(other.usage_.size(), 0);
    improvement_.assign(other.usage_.size(), 0);
  }
  if (other.usage_.size() != usage_.size()) throw std::invalid_argument("aos: stats from different registries");
  for (std::size_t i = 0; i < usage_.size(); ++i) {
    usage_[i] += other.usage_[i];
    improvement_[i] += other.improvement_[i];
  }
  for (int k = 0; k < 3; ++k) {
    k_usage_[k] += other.k_usage_[k];
    k_improvement_[k] += other.k_improvement_[k];
  }
  return *this;
}

void record(AosStats& stats, const SequenceRegistry& registry, SequenceId id, bool improved) {
  const auto slot = registry.find(id);
  if (!slot) throw std::invalid_argument("aos: unknown sequence id " + std::to_string(id));
  if (stats.slots() != registry.size()) stats = AosStats(registry.size());
  stats.record_slot(*slot, improved);
}

namespace {

double ema(double w, double u, double v, const AosConfig& cfg) {
  return cfg.ema_alpha * w + (1.0 - cfg.ema_alpha) * (v / (u + cfg.epsilon) + cfg.weight_floor);
}

}  // namespace

WeightUpdate update_weights(SequenceRegistry& registry, AosStats& aggregated, const AosConfig& cfg) {
  auto& entries = registry.entries();
  const std::size_t n = entries.size();
  const bool empty = aggregated.slots() == 0;
  if (!empty && aggregated.slots() != n) throw std::invalid_argument("aos: stats do not match the registry");
  WeightUpdate out;
  out.raw.resize(n);
  out.clamped.resize(n);
  out.lower.resize(n);
  out.upper.resize(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = empty ? 0.0 : static_cast<double>(aggregated.usage(i));
    const double v = empty ? 0.0 : static_cast<double>(aggregated.improvement(i));
    const double hi = std::min(cfg.weight_cap, entries[i].cap);
    const double lo = std::min(cfg.weight_floor, hi);
    out.raw[i] = ema(entries[i].weight, u, v, cfg);
    out.clamped[i] = std::clamp(out.raw[i], lo, hi);
    out.lower[i] = lo;
    out.upper[i] = hi;
    total += out.clamped[i];
  }
  for (std::size_t i = 0; i < n; ++i) entries[i].weight = out.clamped[i] / total;
  aggregated.reset_sequences();
  return out;
}

std::array<double, 3> update_k_weights(KStepWeights& k_weights, AosStats& aggregated, const AosConfig& cfg) {
  std::array<double, 3> pre{};
  double total = 0.0;
  for (int k = 1; k <= 3; ++k) {
    const double raw = ema(k_weights.w[k - 1], static_cast<double>(aggregated.k_usage(k)),
                           static_cast<double>(aggregated.k_improvement(k)), cfg);
    pre[k - 1] = std::clamp(raw, cfg.weight_floor, 1.0);
    total += pre[k - 1];
  }
  for (int k = 0; k < 3; ++k) k_weights.w[k] = pre[k] / total;
  aggregated.reset_k();
  return pre;
}

int sample_k(const KStepWeights& k_weights, Rng& rng) {
  const double x = rng.uniform01() * k_weights.sum();
  if (x < k_weights.w[0]) return 1;
  if (x < k_weights.w[0] + k_weights.w[1]) return 2;
  // Guard against a zero third weight picked up by rounding.
  return k_weights.w[2] > 0 ? 3 : (k_weights.w[1] > 0 ? 2 : 1);
}

std::size_t sample_slot(const SequenceRegistry& registry, Rng& rng, const SlotFilter& filter) {
  const auto& entries = registry.entries();
  double total = 0.0;
  std::size_t last = entries.size();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (filter && !filter(entries[i])) continue;
    if (entries[i].weight <= 0) continue;
    total += entries[i].weight;
    last = i;
  }
  if (last == entries.size()) throw std::invalid_argument("aos: no applicable sequence to sample");
  const double x = rng.uniform01() * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (filter && !filter(entries[i])) continue;
    if (entries[i].weight <= 0) continue;
    acc += entries[i].weight;
    if (x < acc) return i;
  }
  return last;
}

bool stagnation_check_and_reset(int& no_improve_batches, KStepWeights& k_weights, const AosConfig& cfg) {
  if (no_improve_batches <= cfg.stagnation_threshold) return false;
  k_weights.w = KStepWeights::kReset;
  no_improve_batches = 0;
  return true;
}

}  // namespace genopt
