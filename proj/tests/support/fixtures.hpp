#pragma once

#include <string>

#include "pdlsl/model.hpp"

namespace pdlsl::testing {

/// ROUTE formula text (anchor -> box consequent).
extern const char* const kRouteFormula;

/// Two-state ROUTE model built by hand: the antecedent posture at s0, the
/// concurrent R-west/L-east movement, the consequent posture at s1, and the
/// seriality self-loop on s1.
UtteranceModel route_model();

std::string fixture_path(const std::string& name);

}  // namespace pdlsl::testing
