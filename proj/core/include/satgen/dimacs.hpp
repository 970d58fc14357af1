#pragma once

#include <string>
#include <string_view>

#include "satgen/cnf.hpp"

namespace satgen {

/// Formula-only DIMACS CNF: "p cnf <k> <l>" header followed by one
/// zero-terminated clause line per clause, literals as signed 1-based ints.
std::string to_dimacs(const CnfFormula& formula);

/// Full instance form: comment lines carrying id, seed and difficulty, then
/// the formula. parse_dimacs(to_dimacs(i)) reproduces i's clause list exactly.
std::string to_dimacs(const SatInstance& instance);

/// Parses DIMACS CNF text. Clause width is inferred from the first clause;
/// ragged widths are rejected (only fixed-width formulas are modeled here).
/// Also rejects: malformed or missing header, header counts that disagree
/// with the body, variables out of range, duplicate variables inside a
/// clause, and duplicate clauses. Errors carry the offending line number.
CnfFormula parse_dimacs(std::string_view text);

}  // namespace satgen
