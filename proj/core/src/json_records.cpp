#include "satgen/json_records.hpp"

#include <fstream>

#include <json.hpp>

#include "satgen/errors.hpp"

namespace satgen {

using ordered_json = nlohmann::ordered_json;

std::string instance_to_json(const SatInstance& instance) {
  ordered_json record;
  record["id"] = instance.id;
  record["n"] = instance.params.clause_width;
  record["k"] = instance.params.num_vars;
  record["l"] = instance.params.num_clauses;
  ordered_json clauses = ordered_json::array();
  for (const Clause& clause : instance.formula.clauses()) {
    ordered_json lits = ordered_json::array();
    for (const Literal& lit : clause.literals) lits.push_back(lit.to_dimacs());
    clauses.push_back(std::move(lits));
  }
  record["clauses"] = std::move(clauses);
  record["solution"] = instance.hidden_solution.to_string();
  record["difficulty"] = instance.difficulty;
  record["seed"] = instance.seed;
  record["split"] = split_name(instance.split);
  return record.dump();
}

SatInstance instance_from_json(std::string_view json_text, std::size_t line) {
  ordered_json record;
  try {
    record = ordered_json::parse(json_text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), line);
  }
  try {
    if (!record.is_object()) throw ContractError("record is not a JSON object");
    for (const char* field : {"id", "n", "k", "l", "clauses", "solution", "difficulty", "seed", "split"})
      if (!record.contains(field))
        throw ContractError(std::string("missing field '") + field + "'");

    SatParams params{record.at("n").get<int>(), record.at("k").get<int>(),
                     record.at("l").get<int>()};

    std::vector<Clause> clauses;
    for (const auto& clause_json : record.at("clauses")) {
      Clause clause;
      for (const auto& lit_json : clause_json)
        clause.literals.push_back(Literal::from_dimacs(lit_json.get<int>()));
      clauses.push_back(std::move(clause));
    }
    CnfFormula formula(params.clause_width, params.num_vars, std::move(clauses));
    if (formula.num_clauses() != params.num_clauses)
      throw ContractError("field 'l' does not match clause count");

    Assignment solution = Assignment::from_string(record.at("solution").get<std::string>());
    double difficulty = record.at("difficulty").get<double>();
    SatInstance instance = make_instance(
        record.at("id").get<std::string>(), params, std::move(formula), std::move(solution),
        record.at("seed").get<std::uint64_t>(),
        split_from_name(record.at("split").get<std::string>()));
    if (std::abs(instance.difficulty - difficulty) > 1e-9)
      throw ContractError("stored difficulty " + std::to_string(difficulty) +
                          " does not match params");
    return instance;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(e.what(), line);
  }
}

void write_jsonl(const std::string& path, const std::vector<SatInstance>& instances) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  for (const SatInstance& instance : instances) out << instance_to_json(instance) << "\n";
  if (!out) throw IoError("write failed for '" + path + "'");
}

std::vector<SatInstance> read_jsonl(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::vector<SatInstance> instances;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    instances.push_back(instance_from_json(line, lineno));
  }
  return instances;
}

}  // namespace satgen
