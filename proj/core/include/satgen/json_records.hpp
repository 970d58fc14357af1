#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "satgen/cnf.hpp"

namespace satgen {

/// One-line JSON record of an instance, field order fixed so that files
/// checksum identically across builds:
///   {"id","n","k","l","clauses","solution","difficulty","seed","split"}
/// clauses are arrays of signed 1-based integers; solution is a '0'/'1'
/// string of length k.
std::string instance_to_json(const SatInstance& instance);

/// Parses one record. Field order is not required on input. Validates the
/// schema and all instance invariants (solution verifies, difficulty matches
/// the params). line is used for error reporting only.
SatInstance instance_from_json(std::string_view json_text, std::size_t line = 0);

/// JSONL helpers: one instance per line.
void write_jsonl(const std::string& path, const std::vector<SatInstance>& instances);
std::vector<SatInstance> read_jsonl(const std::string& path);

}  // namespace satgen
