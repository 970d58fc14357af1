#pragma once

// Shared test-only helpers. The brute-force evaluators here are deliberately
// independent of the library's verify/solve paths: formulas are checked by
// walking integer bitmask assignments, so agreement is meaningful.

#include <cstdint>
#include <vector>

#include "satgen/cnf.hpp"
#include "satgen/construct.hpp"
#include "satgen/rng.hpp"

namespace test_support {

/// Evaluates a formula on an assignment encoded as a bitmask (bit v = value
/// of variable v). Independent path: no Assignment, no verify().
inline bool eval_mask(const satgen::CnfFormula& formula, std::uint32_t mask) {
  for (const satgen::Clause& clause : formula.clauses()) {
    bool clause_true = false;
    for (const satgen::Literal& lit : clause.literals) {
      bool var_value = (mask >> lit.var) & 1;
      if (var_value != lit.negated) {
        clause_true = true;
        break;
      }
    }
    if (!clause_true) return false;
  }
  return true;
}

/// All satisfying assignments of a formula with num_vars <= 20, as bitmasks.
inline std::vector<std::uint32_t> satisfying_masks(const satgen::CnfFormula& formula) {
  std::vector<std::uint32_t> masks;
  std::uint32_t total = 1u << formula.num_vars();
  for (std::uint32_t mask = 0; mask < total; ++mask)
    if (eval_mask(formula, mask)) masks.push_back(mask);
  return masks;
}

inline std::uint32_t mask_of(const satgen::Assignment& assignment) {
  std::uint32_t mask = 0;
  for (int v = 0; v < assignment.size(); ++v)
    if (assignment.value(v)) mask |= 1u << v;
  return mask;
}

/// A random formula that is NOT built around a hidden solution: clauses are
/// drawn without any satisfiability constraint, so the result may be UNSAT.
inline satgen::CnfFormula random_unconstrained_formula(int clause_width, int num_vars,
                                                       int num_clauses, satgen::Rng& rng) {
  std::vector<satgen::Clause> clauses;
  std::vector<std::string> keys;
  while (static_cast<int>(clauses.size()) < num_clauses) {
    satgen::Clause clause;
    for (int v : rng.sample_distinct(num_vars, clause_width))
      clause.literals.push_back(satgen::Literal{v, rng.below(2) == 1});
    std::string key = clause.key();
    bool duplicate = false;
    for (const std::string& existing : keys)
      if (existing == key) duplicate = true;
    if (duplicate) continue;
    keys.push_back(key);
    clauses.push_back(std::move(clause));
  }
  return satgen::CnfFormula(clause_width, num_vars, std::move(clauses));
}

inline satgen::Assignment random_assignment(int num_vars, satgen::Rng& rng) {
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(num_vars));
  for (auto& bit : bits) bit = static_cast<std::uint8_t>(rng.below(2));
  return satgen::Assignment(std::move(bits));
}

/// One constructed instance with default-direct mode, for tests that just
/// need "some valid instance".
inline satgen::SatInstance make_test_instance(int clause_width, int num_vars,
                                              int num_clauses, std::uint64_t seed) {
  satgen::ConstructionParams params;
  params.clause_width = clause_width;
  params.num_vars = num_vars;
  params.num_clauses = num_clauses;
  params.instance_count = 1;
  params.seed = seed;
  return satgen::construct(params).front();
}

}  // namespace test_support
