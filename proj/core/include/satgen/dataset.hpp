#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "satgen/cnf.hpp"
#include "satgen/construct.hpp"

namespace satgen {

/// Composition of one split: a list of (params, count) levels.
struct LevelSpec {
  SatParams params;
  int count = 0;
};

/// Benchmark composition. The default manifest has 1,500 train / 160
/// test_same instances over four levels and 1,000 test_hard instances as 10
/// levels x 100.
struct BenchmarkManifest {
  std::vector<LevelSpec> train;
  std::vector<LevelSpec> test_same;
  std::vector<LevelSpec> test_hard;

  static BenchmarkManifest default_manifest();
  static BenchmarkManifest from_json(const std::string& json_text);
  static BenchmarkManifest from_file(const std::string& path);
  std::string to_json() const;

  int total(Split split) const;
  const std::vector<LevelSpec>& levels(Split split) const;
};

/// min(difficulty over test_hard levels) - max(difficulty over test_same
/// levels). Positive means every hard level outscores every same-difficulty
/// level. (The stock hard-level list contains one level, (6,7,40), that
/// scores below (3,5,15), so the default manifest's margin is negative;
/// dataset checks report it rather than enforce it.)
double difficulty_dominance_margin(const BenchmarkManifest& manifest);

/// SHA-256 of a file, lowercase hex.
std::string sha256_file(const std::string& path);

struct BuildReport {
  std::string out_dir;
  int train_count = 0;
  int test_same_count = 0;
  int test_hard_count = 0;
};

/// Builds train.jsonl / test_same.jsonl / test_hard.jsonl under out_dir plus
/// a manifest.json recording the composition, seed, per-file checksums and
/// counts. Splits are disjoint under canonical form and the whole build is
/// byte-deterministic given (manifest, seed). Construction failures abort
/// with the offending level named.
BuildReport build_benchmark(const BenchmarkManifest& manifest, std::uint64_t seed,
                            const std::string& out_dir,
                            ConstructionMode mode = ConstructionMode::direct);

/// Loads one split file, validating schema and instance invariants line by
/// line. When expected_sha256 is non-empty the file checksum must match.
std::vector<SatInstance> load_split(const std::string& path,
                                    const std::string& expected_sha256 = "");

struct CheckReport {
  bool ok = true;
  std::vector<std::string> problems;  // empty when ok
  std::vector<std::string> notes;     // informational (e.g. dominance margin)
};

/// Re-validates a built dataset directory against its manifest.json:
/// checksums, per-level counts, split disjointness, and instance invariants
/// (including hidden-solution satisfiability).
CheckReport check_dataset(const std::string& dir);

}  // namespace satgen
