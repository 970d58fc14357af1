#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace satgen {

/// One signed variable occurrence. Variables are 0-based in memory and
/// 1-based in every serialized form (DIMACS convention).
struct Literal {
  int var = 0;  // 0-based variable index
  bool negated = false;

  int to_dimacs() const { return negated ? -(var + 1) : (var + 1); }
  static Literal from_dimacs(int x);

  /// True when this literal evaluates true given the variable's value.
  bool agrees(bool value) const { return value != negated; }

  auto operator<=>(const Literal&) const = default;
};

/// A disjunction of literals. Width and variable-range invariants are
/// enforced by CnfFormula, which owns the (n, k) context.
struct Clause {
  std::vector<Literal> literals;

  std::size_t size() const { return literals.size(); }

  /// Canonical identity: literals as an order-independent set, serialized as
  /// sorted DIMACS integers. Two clauses are "the same" iff keys are equal.
  std::string key() const;

  bool operator==(const Clause&) const = default;
};

/// Fixed-width CNF: num_clauses() clauses of exactly clause_width() distinct
/// variables each, over num_vars() variables. Immutable after construction.
class CnfFormula {
public:
  /// Validates every invariant: clause widths equal clause_width, variables
  /// in range and distinct within each clause, and no two clauses equal as
  /// literal sets. Throws ContractError on violation.
  CnfFormula(int clause_width, int num_vars, std::vector<Clause> clauses);

  int clause_width() const { return clause_width_; }
  int num_vars() const { return num_vars_; }
  int num_clauses() const { return static_cast<int>(clauses_.size()); }
  const std::vector<Clause>& clauses() const { return clauses_; }

  bool operator==(const CnfFormula&) const = default;

private:
  int clause_width_ = 0;
  int num_vars_ = 0;
  std::vector<Clause> clauses_;
};

/// A full truth assignment: bit i is the value of variable i (0-based).
class Assignment {
public:
  Assignment() = default;
  explicit Assignment(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {}

  /// Parses a '0'/'1' string; anything else is a ContractError.
  static Assignment from_string(std::string_view s);
  std::string to_string() const;

  bool value(int var) const { return bits_[static_cast<std::size_t>(var)] != 0; }
  void set(int var, bool v) { bits_[static_cast<std::size_t>(var)] = v ? 1 : 0; }
  int size() const { return static_cast<int>(bits_.size()); }

  bool operator==(const Assignment&) const = default;

private:
  std::vector<std::uint8_t> bits_;
};

/// True iff every clause has at least one literal that agrees with the
/// assignment. O(clause_width * num_clauses). Throws ContractError when the
/// assignment length does not match the formula's variable count.
bool verify(const CnfFormula& formula, const Assignment& assignment);

/// The (n, k, l) parameter triple: clause width, variable count, clause count.
struct SatParams {
  int clause_width = 0;
  int num_vars = 0;
  int num_clauses = 0;

  auto operator<=>(const SatParams&) const = default;
};

enum class Split { train, test_same, test_hard, unsplit };

std::string split_name(Split s);
Split split_from_name(std::string_view name);

/// A generated problem: formula plus the solution it was built around, the
/// difficulty score of its parameters, and the seed that reproduces it.
/// Other satisfying assignments may exist; the hidden solution is simply the
/// one the constructor committed to.
struct SatInstance {
  std::string id;
  SatParams params;
  CnfFormula formula;
  Assignment hidden_solution;
  double difficulty = 0.0;
  std::uint64_t seed = 0;
  Split split = Split::unsplit;
};

/// Validates the cross-field invariants (solution verifies, difficulty
/// matches the score of params within 1e-9) and returns the instance.
SatInstance make_instance(std::string id, SatParams params, CnfFormula formula,
                          Assignment hidden_solution, std::uint64_t seed,
                          Split split = Split::unsplit);

/// Canonical identity of an instance: hidden solution plus the unordered set
/// of clauses-as-literal-sets. Dedup and split-disjointness run on this key.
std::string canonical_key(const Assignment& solution, const CnfFormula& formula);
inline std::string canonical_key(const SatInstance& inst) {
  return canonical_key(inst.hidden_solution, inst.formula);
}

}  // namespace satgen
