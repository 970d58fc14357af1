#include "satgen/dataset.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_set>

#include <json.hpp>
#include <openssl/evp.h>

#include "satgen/difficulty.hpp"
#include "satgen/errors.hpp"
#include "satgen/json_records.hpp"
#include "satgen/rng.hpp"

namespace satgen {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;
using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Manifest

BenchmarkManifest BenchmarkManifest::default_manifest() {
  BenchmarkManifest manifest;
  const std::vector<SatParams> same_levels = {
      {3, 5, 5}, {3, 5, 8}, {3, 5, 13}, {3, 5, 15}};
  for (const SatParams& params : same_levels) {
    manifest.train.push_back(LevelSpec{params, 375});
    manifest.test_same.push_back(LevelSpec{params, 40});
  }
  const std::vector<SatParams> hard_levels = {
      {3, 7, 40}, {3, 5, 25}, {3, 5, 20}, {3, 6, 20}, {3, 7, 20},
      {4, 7, 40}, {4, 8, 40}, {4, 7, 20}, {6, 7, 40}, {5, 8, 40}};
  for (const SatParams& params : hard_levels)
    manifest.test_hard.push_back(LevelSpec{params, 100});
  return manifest;
}

namespace {

ordered_json levels_to_json(const std::vector<LevelSpec>& levels) {
  ordered_json arr = ordered_json::array();
  for (const LevelSpec& level : levels)
    arr.push_back(ordered_json{{"n", level.params.clause_width},
                               {"k", level.params.num_vars},
                               {"l", level.params.num_clauses},
                               {"count", level.count}});
  return arr;
}

std::vector<LevelSpec> levels_from_json(const json& arr) {
  std::vector<LevelSpec> levels;
  for (const auto& obj : arr)
    levels.push_back(LevelSpec{SatParams{obj.at("n").get<int>(), obj.at("k").get<int>(),
                                         obj.at("l").get<int>()},
                               obj.at("count").get<int>()});
  return levels;
}

}  // namespace

BenchmarkManifest BenchmarkManifest::from_json(const std::string& json_text) {
  json obj;
  try {
    obj = json::parse(json_text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("manifest: invalid JSON: ") + e.what());
  }
  BenchmarkManifest manifest;
  if (obj.contains("train")) manifest.train = levels_from_json(obj.at("train"));
  if (obj.contains("test_same")) manifest.test_same = levels_from_json(obj.at("test_same"));
  if (obj.contains("test_hard")) manifest.test_hard = levels_from_json(obj.at("test_hard"));
  return manifest;
}

BenchmarkManifest BenchmarkManifest::from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open manifest '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_json(buffer.str());
}

std::string BenchmarkManifest::to_json() const {
  ordered_json obj;
  obj["train"] = levels_to_json(train);
  obj["test_same"] = levels_to_json(test_same);
  obj["test_hard"] = levels_to_json(test_hard);
  return obj.dump();
}

int BenchmarkManifest::total(Split split) const {
  int sum = 0;
  for (const LevelSpec& level : levels(split)) sum += level.count;
  return sum;
}

const std::vector<LevelSpec>& BenchmarkManifest::levels(Split split) const {
  switch (split) {
    case Split::train: return train;
    case Split::test_same: return test_same;
    case Split::test_hard: return test_hard;
    default: throw ContractError("manifest has no 'unsplit' section");
  }
}

double difficulty_dominance_margin(const BenchmarkManifest& manifest) {
  if (manifest.test_hard.empty() || manifest.test_same.empty())
    throw ContractError("difficulty_dominance_margin: needs both test splits");
  double min_hard = difficulty_score(manifest.test_hard.front().params);
  for (const LevelSpec& level : manifest.test_hard)
    min_hard = std::min(min_hard, difficulty_score(level.params));
  double max_same = difficulty_score(manifest.test_same.front().params);
  for (const LevelSpec& level : manifest.test_same)
    max_same = std::max(max_same, difficulty_score(level.params));
  return min_hard - max_same;
}

// ---------------------------------------------------------------------------
// Checksums

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for checksum");

  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx) throw Error("EVP_MD_CTX_new failed");
  if (EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
    EVP_MD_CTX_free(ctx);
    throw Error("EVP_DigestInit_ex failed");
  }
  char buffer[1 << 16];
  while (in) {
    in.read(buffer, sizeof(buffer));
    std::streamsize got = in.gcount();
    if (got > 0 && EVP_DigestUpdate(ctx, buffer, static_cast<std::size_t>(got)) != 1) {
      EVP_MD_CTX_free(ctx);
      throw Error("EVP_DigestUpdate failed");
    }
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int digest_len = 0;
  if (EVP_DigestFinal_ex(ctx, digest, &digest_len) != 1) {
    EVP_MD_CTX_free(ctx);
    throw Error("EVP_DigestFinal_ex failed");
  }
  EVP_MD_CTX_free(ctx);

  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(digest_len * 2);
  for (unsigned int i = 0; i < digest_len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xF]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Build

namespace {

const char* split_file_name(Split split) {
  switch (split) {
    case Split::train: return "train.jsonl";
    case Split::test_same: return "test_same.jsonl";
    case Split::test_hard: return "test_hard.jsonl";
    default: throw ContractError("no file for 'unsplit'");
  }
}

std::string level_id_prefix(Split split, const SatParams& params, int level_index) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%s-L%02d-n%dk%dl%d", split_name(split).c_str(),
                level_index, params.clause_width, params.num_vars, params.num_clauses);
  return buf;
}

std::vector<SatInstance> build_split(const BenchmarkManifest& manifest, Split split,
                                     std::uint64_t seed, ConstructionMode mode,
                                     std::unordered_set<std::string>& taken) {
  std::vector<SatInstance> instances;
  const auto& levels = manifest.levels(split);
  for (std::size_t level_index = 0; level_index < levels.size(); ++level_index) {
    const LevelSpec& level = levels[level_index];
    ConstructionParams params;
    params.clause_width = level.params.clause_width;
    params.num_vars = level.params.num_vars;
    params.num_clauses = level.params.num_clauses;
    params.instance_count = level.count;
    params.mode = mode;
    params.split = split;
    params.seed = derive_seed(seed, kStreamSplit, static_cast<std::uint64_t>(split),
                              level_index);
    params.id_prefix = level_id_prefix(split, level.params, static_cast<int>(level_index));
    std::vector<SatInstance> level_instances;
    try {
      level_instances = construct(params, taken);
    } catch (const Error& e) {
      throw Error("building " + split_name(split) + " level (" +
                  std::to_string(level.params.clause_width) + "," +
                  std::to_string(level.params.num_vars) + "," +
                  std::to_string(level.params.num_clauses) + "): " + e.what());
    }
    for (const SatInstance& instance : level_instances)
      taken.insert(canonical_key(instance));
    instances.insert(instances.end(), std::make_move_iterator(level_instances.begin()),
                     std::make_move_iterator(level_instances.end()));
  }
  return instances;
}

}  // namespace

BuildReport build_benchmark(const BenchmarkManifest& manifest, std::uint64_t seed,
                            const std::string& out_dir, ConstructionMode mode) {
  fs::create_directories(out_dir);
  std::unordered_set<std::string> taken;

  BuildReport report;
  report.out_dir = out_dir;
  ordered_json files = ordered_json::object();
  for (Split split : {Split::train, Split::test_same, Split::test_hard}) {
    std::vector<SatInstance> instances = build_split(manifest, split, seed, mode, taken);
    std::string path = (fs::path(out_dir) / split_file_name(split)).string();
    write_jsonl(path, instances);
    ordered_json entry;
    entry["path"] = split_file_name(split);
    entry["count"] = instances.size();
    entry["sha256"] = sha256_file(path);
    files[split_name(split)] = std::move(entry);
    switch (split) {
      case Split::train: report.train_count = static_cast<int>(instances.size()); break;
      case Split::test_same: report.test_same_count = static_cast<int>(instances.size()); break;
      case Split::test_hard: report.test_hard_count = static_cast<int>(instances.size()); break;
      default: break;
    }
  }

  ordered_json manifest_json;
  manifest_json["seed"] = seed;
  manifest_json["mode"] = mode == ConstructionMode::direct ? "direct" : "pooled";
  manifest_json["composition"] = json::parse(manifest.to_json());
  manifest_json["files"] = std::move(files);
  std::ofstream out(fs::path(out_dir) / "manifest.json", std::ios::binary);
  if (!out) throw IoError("cannot write manifest.json in '" + out_dir + "'");
  out << manifest_json.dump(2) << "\n";
  return report;
}

// ---------------------------------------------------------------------------
// Load / check

std::vector<SatInstance> load_split(const std::string& path,
                                    const std::string& expected_sha256) {
  if (!expected_sha256.empty()) {
    std::string actual = sha256_file(path);
    if (actual != expected_sha256)
      throw IoError("checksum mismatch for '" + path + "': manifest " + expected_sha256 +
                    ", file " + actual);
  }
  return read_jsonl(path);
}

CheckReport check_dataset(const std::string& dir) {
  CheckReport report;
  auto problem = [&](const std::string& text) {
    report.ok = false;
    report.problems.push_back(text);
  };

  json manifest_json;
  try {
    std::ifstream in(fs::path(dir) / "manifest.json", std::ios::binary);
    if (!in) throw IoError("missing manifest.json in '" + dir + "'");
    manifest_json = json::parse(in);
  } catch (const std::exception& e) {
    problem(e.what());
    return report;
  }

  BenchmarkManifest manifest;
  try {
    manifest = BenchmarkManifest::from_json(manifest_json.at("composition").dump());
  } catch (const std::exception& e) {
    problem(std::string("manifest composition: ") + e.what());
    return report;
  }

  std::unordered_set<std::string> seen_keys;
  for (Split split : {Split::train, Split::test_same, Split::test_hard}) {
    std::string name = split_name(split);
    if (!manifest_json.at("files").contains(name)) {
      problem("manifest lists no file for split " + name);
      continue;
    }
    const json& entry = manifest_json.at("files").at(name);
    std::string path = (fs::path(dir) / entry.at("path").get<std::string>()).string();
    std::vector<SatInstance> instances;
    try {
      instances = load_split(path, entry.at("sha256").get<std::string>());
    } catch (const std::exception& e) {
      problem(e.what());
      continue;
    }
    if (instances.size() != entry.at("count").get<std::size_t>())
      problem(name + ": file has " + std::to_string(instances.size()) +
              " records, manifest says " + std::to_string(entry.at("count").get<std::size_t>()));

    // Per-level counts against the composition.
    std::map<std::string, int> level_counts;
    for (const SatInstance& instance : instances) {
      if (instance.split != split)
        problem(name + ": record " + instance.id + " carries split " +
                split_name(instance.split));
      if (!seen_keys.insert(canonical_key(instance)).second)
        problem(name + ": canonical form of " + instance.id + " duplicates another record");
      char key[48];
      std::snprintf(key, sizeof(key), "(%d,%d,%d)", instance.params.clause_width,
                    instance.params.num_vars, instance.params.num_clauses);
      ++level_counts[key];
    }
    for (const LevelSpec& level : manifest.levels(split)) {
      char key[48];
      std::snprintf(key, sizeof(key), "(%d,%d,%d)", level.params.clause_width,
                    level.params.num_vars, level.params.num_clauses);
      if (level_counts[key] != level.count)
        problem(name + ": level " + key + " has " + std::to_string(level_counts[key]) +
                " records, manifest says " + std::to_string(level.count));
    }
  }

  try {
    double margin = difficulty_dominance_margin(manifest);
    char note[160];
    std::snprintf(note, sizeof(note),
                  "difficulty dominance margin (min hard - max same): %+.4f%s", margin,
                  margin > 0 ? "" : " (some hard level scores below the same-difficulty max)");
    report.notes.push_back(note);
  } catch (const ContractError&) {
    // manifest without both test splits; nothing to report
  }
  return report;
}

}  // namespace satgen
