#pragma once

#include "genopt/operators.hpp"

#include <string>
#include <vector>

namespace genopt {

/// Delta-evaluated TSP moves (ids 100, 101, 102): sampled 2-opt, or-opt and
/// node insertion, each applying the best of a few sampled candidates when it
/// shortens the tour. They need a TspProblem and raise otherwise.
std::vector<CustomOperator> tsp_delta_operators();

/// Deliberately broken operator that duplicates an element; used to exercise
/// probe exclusion.
CustomOperator duplicating_operator(SequenceId id = 103);

/// Named operator sets selectable from the command line: "tsp-delta",
/// "broken-demo". Throws std::invalid_argument for other names.
std::vector<CustomOperator> custom_operator_set(const std::string& name);

}  // namespace genopt
