#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "satgen/cnf.hpp"

namespace satgen {

struct SolverConfig {
  /// false: DPLL with two watched literals and chronological backtracking.
  /// true: CDCL on top of the same propagation core — first-UIP clause
  /// learning, non-chronological backjumping, VSIDS decisions, no restarts.
  bool use_cdcl = false;

  /// 0 = unlimited. Exceeding a budget throws BudgetExceededError; the
  /// solver never returns a wrong answer under pressure.
  std::uint64_t max_conflicts = 0;
  double max_seconds = 0.0;
};

struct SolveStats {
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t conflicts = 0;
  double elapsed_seconds = 0.0;
};

enum class SolveStatus { sat, unsat };

struct SolveResult {
  SolveStatus status = SolveStatus::unsat;
  std::optional<Assignment> model;  // present iff status == sat; always verified
  SolveStats stats;
};

/// Complete decision procedure. Deterministic for a fixed config: decisions
/// pick the lowest-index unassigned variable (DPLL) or the highest-activity
/// one with lowest-index tie-break (CDCL), always trying false first.
SolveResult solve(const CnfFormula& formula, const SolverConfig& config = {});

/// Up to limit distinct satisfying full assignments, found by re-solving
/// under blocking clauses. Exhaustive when limit >= the true model count.
std::vector<Assignment> enumerate_models(const CnfFormula& formula, std::uint64_t limit,
                                         const SolverConfig& config = {});

}  // namespace satgen
