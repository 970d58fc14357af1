#include "satgen/dimacs.hpp"

#include <cstdio>
#include <sstream>
#include <string>
#include <unordered_set>

#include "satgen/errors.hpp"

namespace satgen {

std::string to_dimacs(const CnfFormula& formula) {
  std::string out;
  out += "p cnf " + std::to_string(formula.num_vars()) + " " +
         std::to_string(formula.num_clauses()) + "\n";
  for (const Clause& clause : formula.clauses()) {
    for (const Literal& lit : clause.literals) {
      out += std::to_string(lit.to_dimacs());
      out.push_back(' ');
    }
    out += "0\n";
  }
  return out;
}

std::string to_dimacs(const SatInstance& instance) {
  char difficulty[64];
  std::snprintf(difficulty, sizeof(difficulty), "%.9f", instance.difficulty);
  std::string out;
  out += "c id " + instance.id + "\n";
  out += "c seed " + std::to_string(instance.seed) + "\n";
  out += "c difficulty " + std::string(difficulty) + "\n";
  out += to_dimacs(instance.formula);
  return out;
}

CnfFormula parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;

  int num_vars = -1;
  int declared_clauses = -1;
  int clause_width = -1;
  std::vector<Clause> clauses;
  std::unordered_set<std::string> clause_keys;

  while (std::getline(in, line)) {
    ++lineno;
    // Strip trailing CR from CRLF input.
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == 'c') continue;

    std::istringstream tokens(line);
    if (line[0] == 'p') {
      if (num_vars >= 0) throw ParseError("duplicate problem header", lineno);
      std::string p, fmt;
      tokens >> p >> fmt >> num_vars >> declared_clauses;
      if (tokens.fail() || p != "p" || fmt != "cnf" || num_vars < 1 || declared_clauses < 0)
        throw ParseError("malformed header (expected 'p cnf <vars> <clauses>')", lineno);
      std::string rest;
      if (tokens >> rest) throw ParseError("trailing tokens after header", lineno);
      continue;
    }

    if (num_vars < 0) throw ParseError("clause before 'p cnf' header", lineno);

    Clause clause;
    std::unordered_set<int> vars_in_clause;
    bool terminated = false;
    int value;
    while (tokens >> value) {
      if (terminated) throw ParseError("literals after clause terminator 0", lineno);
      if (value == 0) {
        terminated = true;
        continue;
      }
      int var = std::abs(value);
      if (var > num_vars)
        throw ParseError("variable " + std::to_string(var) + " out of range [1, " +
                             std::to_string(num_vars) + "]",
                         lineno);
      if (!vars_in_clause.insert(var).second)
        throw ParseError("duplicate variable " + std::to_string(var) + " inside clause", lineno);
      clause.literals.push_back(Literal::from_dimacs(value));
    }
    if (!tokens.eof()) throw ParseError("non-integer token in clause", lineno);
    if (!terminated) throw ParseError("clause not terminated by 0", lineno);
    if (clause.literals.empty()) throw ParseError("empty clause", lineno);

    if (clause_width < 0) {
      clause_width = static_cast<int>(clause.size());
    } else if (static_cast<int>(clause.size()) != clause_width) {
      throw ParseError("ragged clause width " + std::to_string(clause.size()) +
                           " (expected " + std::to_string(clause_width) + ")",
                       lineno);
    }
    if (!clause_keys.insert(clause.key()).second)
      throw ParseError("duplicate clause {" + clause.key() + "}", lineno);
    clauses.push_back(std::move(clause));
  }

  if (num_vars < 0) throw ParseError("missing 'p cnf' header");
  if (static_cast<int>(clauses.size()) != declared_clauses)
    throw ParseError("header declares " + std::to_string(declared_clauses) +
                     " clauses but body has " + std::to_string(clauses.size()));
  if (clauses.empty()) throw ParseError("formula has no clauses");
  return CnfFormula(clause_width, num_vars, std::move(clauses));
}

}  // namespace satgen
