#pragma once

#include "genopt/encoding.hpp"
#include "genopt/operators.hpp"

#include <string>

namespace genopt {

enum class Scale { Small, Medium, Large };

/// Pre-normalization masses relative to 1.0 for each O(1) operator.
struct WeightPreset {
  double three_opt_w = 0.0;
  double or_opt_w = 0.0;
  double lns_w = 0.0;
  double lns_cap = 0.0;
};

struct ProblemProfile {
  Encoding encoding;
  Scale scale = Scale::Small;
  RowMode structure = RowMode::SingleSeq;
  double p_cross = 0.1;  // combined prior mass of the crossover sequences
  WeightPreset preset;
};

/// D2 <= 100 Small, <= 250 Medium, otherwise Large.
Scale scale_for(int d2);
WeightPreset preset_for(Scale scale);

ProblemProfile classify(const ProblemConfig& cfg);

/// Sets priors and caps of the 3-opt, or-opt, LNS and crossover families,
/// leaves every other prior untouched, then normalizes.
void apply_preset(SequenceRegistry& registry, const ProblemProfile& profile);

std::string to_string(Scale s);

}  // namespace genopt
