// serialize.hpp — documented JSON schemas for operators and bases

#pragma once

#include <string>

#include <json.hpp>

#include "polaron/fock.hpp"
#include "polaron/operators.hpp"

namespace polaron {

using ordered_json = nlohmann::ordered_json;

// schema polaron-operator-v1:
//   { "schema": ..., "dim": n, "hermitian": bool,
//     "entries": [[row, col, re, im], ...] }   entries sorted by (row, col)
ordered_json operator_to_json(const OperatorMatrix& op);
OperatorMatrix operator_from_json(const ordered_json& j);

// schema polaron-basis-v1: k-points with weights plus the ordered occupation
// list (graded lexicographic, vacuum first)
ordered_json basis_to_json(const FockBasis& basis);

}  // namespace polaron
