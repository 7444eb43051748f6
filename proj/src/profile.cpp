#include "genopt/profile.hpp"

#include <algorithm>

namespace genopt {

Scale scale_for(int d2) {
  if (d2 <= 100) return Scale::Small;
  if (d2 <= 250) return Scale::Medium;
  return Scale::Large;
}

WeightPreset preset_for(Scale scale) {
  switch (scale) {
    case Scale::Small: return {0.50, 0.80, 0.006, 0.02};
    case Scale::Medium: return {0.30, 0.70, 0.004, 0.01};
    case Scale::Large: return {0.05, 0.30, 0.001, 0.005};
  }
  return {};
}

ProblemProfile classify(const ProblemConfig& cfg) {
  ProblemProfile p;
  p.encoding = cfg.encoding;
  p.scale = scale_for(cfg.d2);
  p.structure = cfg.d1 == 1 ? RowMode::SingleSeq : cfg.row_mode;
  p.preset = preset_for(p.scale);
  return p;
}

void apply_preset(SequenceRegistry& registry, const ProblemProfile& profile) {
  const auto& pr = profile.preset;
  int crossovers = 0;
  for (const auto& e : registry.entries()) crossovers += e.family == OperatorFamily::Crossover ? 1 : 0;
  for (auto& e : registry.entries()) {
    switch (e.family) {
      case OperatorFamily::ThreeOpt: e.prior = pr.three_opt_w; break;
      case OperatorFamily::OrOpt: e.prior = pr.or_opt_w; break;
      case OperatorFamily::Lns:
        e.prior = pr.lns_w;
        e.cap = std::min(registry.weight_cap(), pr.lns_cap);
        break;
      case OperatorFamily::Crossover: e.prior = profile.p_cross / crossovers; break;
      default: break;
    }
  }
  registry.normalize_priors();
}

std::string to_string(Scale s) {
  switch (s) {
    case Scale::Small: return "small";
    case Scale::Medium: return "medium";
    case Scale::Large: return "large";
  }
  return "?";
}

}  // namespace genopt
