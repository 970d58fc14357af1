#include "satgen/evaluate.hpp"

#include <algorithm>
#include <cstdio>
#include <future>
#include <semaphore>

#include <json.hpp>

#include "satgen/answer.hpp"
#include "satgen/difficulty.hpp"
#include "satgen/errors.hpp"

namespace satgen {

using ordered_json = nlohmann::ordered_json;
using json = nlohmann::json;

double pass_at_k(int sample_count, int correct_count, int k) {
  if (k < 1 || k > sample_count)
    throw ContractError("pass_at_k: need 1 <= k <= sample_count, got k=" + std::to_string(k) +
                        ", sample_count=" + std::to_string(sample_count));
  if (correct_count < 0 || correct_count > sample_count)
    throw ContractError("pass_at_k: need 0 <= correct_count <= sample_count");
  int wrong = sample_count - correct_count;
  if (wrong < k) return 1.0;  // every k-subset contains a success
  double miss_all = 1.0;
  for (int i = 0; i < k; ++i)
    miss_all *= static_cast<double>(wrong - i) / static_cast<double>(sample_count - i);
  return 1.0 - miss_all;
}

std::string EvalRecord::to_json() const {
  ordered_json record;
  record["instance_id"] = instance_id;
  record["n"] = params.clause_width;
  record["k"] = params.num_vars;
  record["l"] = params.num_clauses;
  record["difficulty"] = difficulty;
  record["texts"] = sample_texts;
  record["rewards"] = rewards;
  ordered_json failed = ordered_json::array();
  for (bool f : sample_failed) failed.push_back(f);
  record["failed"] = std::move(failed);
  record["correct_count"] = correct_count;
  record["sample_count"] = sample_count;
  return record.dump();
}

EvalRecord EvalRecord::from_json(const std::string& json_text, std::size_t line) {
  json record;
  try {
    record = json::parse(json_text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), line);
  }
  try {
    EvalRecord out;
    out.instance_id = record.at("instance_id").get<std::string>();
    out.params = SatParams{record.at("n").get<int>(), record.at("k").get<int>(),
                           record.at("l").get<int>()};
    out.difficulty = record.at("difficulty").get<double>();
    if (record.contains("texts"))
      out.sample_texts = record.at("texts").get<std::vector<std::string>>();
    out.rewards = record.at("rewards").get<std::vector<int>>();
    if (record.contains("failed"))
      for (const auto& f : record.at("failed")) out.sample_failed.push_back(f.get<bool>());
    out.correct_count = record.at("correct_count").get<int>();
    out.sample_count = record.at("sample_count").get<int>();
    int recount = static_cast<int>(std::count(out.rewards.begin(), out.rewards.end(), 1));
    if (recount != out.correct_count)
      throw ContractError("correct_count does not match rewards");
    return out;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(e.what(), line);
  }
}

namespace {

EvalRecord evaluate_instance(const SatInstance& instance, const LearnerSpec& learner,
                             const PromptTemplate& prompt, int samples) {
  EvalRecord record;
  record.instance_id = instance.id;
  record.params = instance.params;
  record.difficulty = instance.difficulty;
  record.sample_count = samples;
  std::vector<SampleResult> results = complete(learner, instance, prompt, samples);
  for (const SampleResult& sample : results) {
    record.sample_texts.push_back(sample.failed ? "<error: " + sample.error + ">" : sample.text);
    record.sample_failed.push_back(sample.failed);
    // A failed sample produced no completion at all, hence no box: -1.
    int r = sample.failed ? -1 : reward(sample.text, instance);
    record.rewards.push_back(r);
    if (r == 1) ++record.correct_count;
  }
  return record;
}

LevelReport aggregate_level(SatParams params, std::span<const EvalRecord> records,
                            const std::vector<int>& ks) {
  LevelReport report;
  report.params = params;
  report.difficulty = difficulty_score(params);
  report.instance_count = static_cast<int>(records.size());
  for (int k : ks) {
    double total = 0.0;
    for (const EvalRecord& record : records)
      total += pass_at_k(record.sample_count, record.correct_count, k);
    report.pass_at[k] = records.empty() ? 0.0 : total / static_cast<double>(records.size());
  }
  return report;
}

}  // namespace

std::pair<std::vector<EvalRecord>, LevelReport> evaluate_level(
    std::span<const SatInstance> instances, const LearnerSpec& learner,
    const PromptTemplate& prompt, int samples, const std::vector<int>& ks) {
  if (instances.empty()) throw ContractError("evaluate_level: no instances");
  for (const SatInstance& instance : instances)
    if (instance.params != instances.front().params)
      throw ContractError("evaluate_level: instances must share (n, k, l)");
  for (int k : ks)
    if (k > samples)
      throw ContractError("evaluate_level: samples=" + std::to_string(samples) +
                          " < requested k=" + std::to_string(k));

  std::vector<EvalRecord> records(instances.size());
  int workers = learner.kind == LearnerSpec::Kind::http ? learner.http.max_concurrency : 1;
  if (workers <= 1 || instances.size() <= 1) {
    for (std::size_t i = 0; i < instances.size(); ++i)
      records[i] = evaluate_instance(instances[i], learner, prompt, samples);
  } else {
    // Bounded fan-out; records land in instance order so aggregation is
    // deterministic regardless of completion order.
    std::counting_semaphore<> slots(workers);
    std::vector<std::future<void>> tasks;
    tasks.reserve(instances.size());
    for (std::size_t i = 0; i < instances.size(); ++i) {
      slots.acquire();
      tasks.push_back(std::async(std::launch::async, [&, i] {
        records[i] = evaluate_instance(instances[i], learner, prompt, samples);
        slots.release();
      }));
    }
    for (auto& task : tasks) task.get();
  }

  LevelReport report = aggregate_level(instances.front().params, records, ks);
  return {std::move(records), std::move(report)};
}

EvalRun evaluate_dataset(std::span<const SatInstance> instances, const LearnerSpec& learner,
                         const PromptTemplate& prompt, int samples,
                         const std::vector<int>& ks) {
  // Group by params, preserving first-seen order within a level.
  std::vector<SatParams> level_order;
  std::vector<std::vector<SatInstance>> groups;
  for (const SatInstance& instance : instances) {
    auto it = std::find(level_order.begin(), level_order.end(), instance.params);
    if (it == level_order.end()) {
      level_order.push_back(instance.params);
      groups.emplace_back();
      it = level_order.end() - 1;
    }
    groups[static_cast<std::size_t>(it - level_order.begin())].push_back(instance);
  }

  EvalRun run;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    auto [records, report] = evaluate_level(groups[g], learner, prompt, samples, ks);
    run.records.insert(run.records.end(), std::make_move_iterator(records.begin()),
                       std::make_move_iterator(records.end()));
    run.levels.push_back(std::move(report));
  }
  std::sort(run.levels.begin(), run.levels.end(),
            [](const LevelReport& a, const LevelReport& b) { return a.difficulty < b.difficulty; });
  return run;
}

std::vector<std::pair<double, double>> difficulty_pass_points(
    std::span<const LevelReport> levels, int k) {
  std::vector<std::pair<double, double>> points;
  points.reserve(levels.size());
  for (const LevelReport& level : levels) {
    auto it = level.pass_at.find(k);
    if (it == level.pass_at.end())
      throw ContractError("difficulty_pass_points: level lacks pass@" + std::to_string(k));
    points.emplace_back(level.difficulty, it->second);
  }
  return points;
}

std::vector<LevelReport> levels_from_records(std::span<const EvalRecord> records,
                                             const std::vector<int>& ks) {
  std::vector<SatParams> level_order;
  std::vector<std::vector<EvalRecord>> groups;
  for (const EvalRecord& record : records) {
    auto it = std::find(level_order.begin(), level_order.end(), record.params);
    if (it == level_order.end()) {
      level_order.push_back(record.params);
      groups.emplace_back();
      it = level_order.end() - 1;
    }
    groups[static_cast<std::size_t>(it - level_order.begin())].push_back(record);
  }
  std::vector<LevelReport> levels;
  for (std::size_t g = 0; g < groups.size(); ++g)
    levels.push_back(aggregate_level(level_order[g], groups[g], ks));
  std::sort(levels.begin(), levels.end(),
            [](const LevelReport& a, const LevelReport& b) { return a.difficulty < b.difficulty; });
  return levels;
}

namespace {

std::string format_fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  return buf;
}

}  // namespace

std::string render_markdown_report(std::span<const LevelReport> levels) {
  std::vector<int> ks;
  if (!levels.empty())
    for (const auto& [k, _] : levels.front().pass_at) ks.push_back(k);

  std::string out = "| n | k | l | difficulty | instances |";
  for (int k : ks) out += " pass@" + std::to_string(k) + " (%) |";
  out += "\n|---|---|---|---|---|";
  for (std::size_t i = 0; i < ks.size(); ++i) out += "---|";
  out += "\n";
  for (const LevelReport& level : levels) {
    out += "| " + std::to_string(level.params.clause_width) + " | " +
           std::to_string(level.params.num_vars) + " | " +
           std::to_string(level.params.num_clauses) + " | " +
           format_fixed(level.difficulty, 4) + " | " + std::to_string(level.instance_count) +
           " |";
    for (int k : ks) out += " " + format_fixed(level.pass_at.at(k) * 100.0, 1) + " |";
    out += "\n";
  }
  return out;
}

std::string render_csv_report(std::span<const LevelReport> levels) {
  std::vector<int> ks;
  if (!levels.empty())
    for (const auto& [k, _] : levels.front().pass_at) ks.push_back(k);
  std::string out = "n,k,l,difficulty,instances";
  for (int k : ks) out += ",pass_at_" + std::to_string(k);
  out += "\n";
  for (const LevelReport& level : levels) {
    out += std::to_string(level.params.clause_width) + "," +
           std::to_string(level.params.num_vars) + "," +
           std::to_string(level.params.num_clauses) + "," +
           format_fixed(level.difficulty, 17) + "," + std::to_string(level.instance_count);
    for (int k : ks) out += "," + format_fixed(level.pass_at.at(k), 17);
    out += "\n";
  }
  return out;
}

std::string render_points_csv(std::span<const std::pair<double, double>> points) {
  std::string out = "difficulty,pass_rate\n";
  for (const auto& [difficulty, pass_rate] : points)
    out += format_fixed(difficulty, 17) + "," + format_fixed(pass_rate, 17) + "\n";
  return out;
}

}  // namespace satgen
