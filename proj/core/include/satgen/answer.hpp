#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <utility>

#include "satgen/cnf.hpp"

namespace satgen {

/// Result of scanning model output for a \boxed{...} answer.
struct ParsedAnswer {
  enum class Status { missing_box, unparseable_content, parsed };

  Status status = Status::missing_box;
  std::optional<Assignment> assignment;              // set iff status == parsed
  std::optional<std::pair<std::size_t, std::size_t>> box_span;  // [start, end) of \boxed{...}
};

/// Scans text for \boxed{...} occurrences (brace-matched, so nested braces
/// stay inside the box) and takes the LAST complete one. ASCII whitespace
/// inside the braces is stripped; what remains must be exactly
/// expected_vars characters of '0'/'1', mapping position i to variable i+1.
/// Total function: failures are encoded in the status.
ParsedAnswer extract_answer(std::string_view text, int expected_vars);

/// Scalar reward for a model response:
///   -1  no \boxed{} wrapper at all
///    0  boxed but unparseable, or parsed but not a satisfying assignment
///   +1  parsed and satisfies the formula (any satisfying assignment counts,
///       not only the hidden solution)
int reward(std::string_view text, const SatInstance& instance);

/// Reward plus the parse it was derived from, for callers that record both.
struct ScoredAnswer {
  ParsedAnswer parsed;
  int reward = 0;
};
ScoredAnswer score_answer(std::string_view text, const SatInstance& instance);

}  // namespace satgen
