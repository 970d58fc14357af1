#include "satgen/cnf.hpp"

#include <algorithm>
#include <unordered_set>

#include "satgen/difficulty.hpp"
#include "satgen/errors.hpp"

namespace satgen {

Literal Literal::from_dimacs(int x) {
  if (x == 0) throw ContractError("literal 0 is the DIMACS clause terminator");
  return Literal{std::abs(x) - 1, x < 0};
}

std::string Clause::key() const {
  std::vector<int> ints;
  ints.reserve(literals.size());
  for (const Literal& lit : literals) ints.push_back(lit.to_dimacs());
  std::sort(ints.begin(), ints.end());
  std::string out;
  for (int v : ints) {
    if (!out.empty()) out.push_back(',');
    out += std::to_string(v);
  }
  return out;
}

CnfFormula::CnfFormula(int clause_width, int num_vars, std::vector<Clause> clauses)
    : clause_width_(clause_width), num_vars_(num_vars), clauses_(std::move(clauses)) {
  if (clause_width_ < 1 || num_vars_ < clause_width_)
    throw ContractError("CnfFormula: need 1 <= clause_width <= num_vars, got (" +
                        std::to_string(clause_width_) + ", " + std::to_string(num_vars_) + ")");
  std::unordered_set<std::string> seen;
  seen.reserve(clauses_.size() * 2);
  for (const Clause& clause : clauses_) {
    if (static_cast<int>(clause.size()) != clause_width_)
      throw ContractError("CnfFormula: clause width " + std::to_string(clause.size()) +
                          " != " + std::to_string(clause_width_));
    std::unordered_set<int> vars;
    for (const Literal& lit : clause.literals) {
      if (lit.var < 0 || lit.var >= num_vars_)
        throw ContractError("CnfFormula: variable x" + std::to_string(lit.var + 1) +
                            " out of range [1, " + std::to_string(num_vars_) + "]");
      if (!vars.insert(lit.var).second)
        throw ContractError("CnfFormula: duplicate variable x" + std::to_string(lit.var + 1) +
                            " inside a clause");
    }
    if (!seen.insert(clause.key()).second)
      throw ContractError("CnfFormula: duplicate clause {" + clause.key() + "}");
  }
}

Assignment Assignment::from_string(std::string_view s) {
  std::vector<std::uint8_t> bits;
  bits.reserve(s.size());
  for (char c : s) {
    if (c != '0' && c != '1')
      throw ContractError(std::string("Assignment: expected '0'/'1', got '") + c + "'");
    bits.push_back(c == '1' ? 1 : 0);
  }
  return Assignment(std::move(bits));
}

std::string Assignment::to_string() const {
  std::string out(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) out[i] = '1';
  return out;
}

bool verify(const CnfFormula& formula, const Assignment& assignment) {
  if (assignment.size() != formula.num_vars())
    throw ContractError("verify: expected assignment of length " +
                        std::to_string(formula.num_vars()) + ", received " +
                        std::to_string(assignment.size()));
  for (const Clause& clause : formula.clauses()) {
    bool satisfied = false;
    for (const Literal& lit : clause.literals) {
      if (lit.agrees(assignment.value(lit.var))) {
        satisfied = true;
        break;
      }
    }
    if (!satisfied) return false;
  }
  return true;
}

std::string split_name(Split s) {
  switch (s) {
    case Split::train: return "train";
    case Split::test_same: return "test_same";
    case Split::test_hard: return "test_hard";
    case Split::unsplit: return "unsplit";
  }
  throw ContractError("split_name: unknown split");
}

Split split_from_name(std::string_view name) {
  if (name == "train") return Split::train;
  if (name == "test_same") return Split::test_same;
  if (name == "test_hard") return Split::test_hard;
  if (name == "unsplit") return Split::unsplit;
  throw ContractError("unknown split name '" + std::string(name) + "'");
}

SatInstance make_instance(std::string id, SatParams params, CnfFormula formula,
                          Assignment hidden_solution, std::uint64_t seed, Split split) {
  if (formula.clause_width() != params.clause_width ||
      formula.num_vars() != params.num_vars ||
      formula.num_clauses() != params.num_clauses)
    throw ContractError("make_instance: params do not match formula shape");
  if (!verify(formula, hidden_solution))
    throw ContractError("make_instance: hidden solution does not satisfy the formula");
  double difficulty = difficulty_score(params);
  return SatInstance{std::move(id), params,          std::move(formula),
                     std::move(hidden_solution), difficulty, seed, split};
}

std::string canonical_key(const Assignment& solution, const CnfFormula& formula) {
  std::vector<std::string> keys;
  keys.reserve(formula.clauses().size());
  for (const Clause& clause : formula.clauses()) keys.push_back(clause.key());
  std::sort(keys.begin(), keys.end());
  std::string out = solution.to_string();
  out.push_back('|');
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (i) out.push_back(';');
    out += keys[i];
  }
  return out;
}

}  // namespace satgen
