#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "satgen/cnf.hpp"
#include "satgen/learner.hpp"

namespace satgen {

/// Per-instance evaluation record: the sampled texts, their rewards, and the
/// success count feeding pass@k.
struct EvalRecord {
  std::string instance_id;
  SatParams params;
  double difficulty = 0.0;
  std::vector<std::string> sample_texts;
  std::vector<int> rewards;        // each in {-1, 0, 1}
  std::vector<bool> sample_failed; // transport failures, flagged distinctly
  int correct_count = 0;           // |{i : rewards[i] == 1}|
  int sample_count = 0;

  std::string to_json() const;
  static EvalRecord from_json(const std::string& json_text, std::size_t line = 0);
};

/// Aggregated pass@k for one (n, k, l) level.
struct LevelReport {
  SatParams params;
  double difficulty = 0.0;
  int instance_count = 0;
  std::map<int, double> pass_at;  // k -> mean pass@k, values in [0, 1]
};

/// Unbiased pass@k estimator from sample_count draws with correct_count
/// successes: 1 - C(sample_count - correct_count, k) / C(sample_count, k),
/// evaluated as a telescoping product so nothing overflows. Exact for
/// sample_count <= 64. Requires 1 <= k <= sample_count and
/// 0 <= correct_count <= sample_count.
double pass_at_k(int sample_count, int correct_count, int k);

/// Evaluates one level: all instances must share (n, k, l). Samples each
/// instance `samples` times, scores rewards, and averages per-instance
/// pass@k over the level. Learner transport failures become reward -1
/// records; they never abort the level.
std::pair<std::vector<EvalRecord>, LevelReport> evaluate_level(
    std::span<const SatInstance> instances, const LearnerSpec& learner,
    const PromptTemplate& prompt, int samples = 12,
    const std::vector<int>& ks = {1, 3, 5, 7, 10});

/// Full-dataset run: groups by (n, k, l), evaluates each level (instances
/// dispatched concurrently up to the learner's max_concurrency), and returns
/// records plus per-level reports ordered by difficulty.
struct EvalRun {
  std::vector<EvalRecord> records;
  std::vector<LevelReport> levels;
};
EvalRun evaluate_dataset(std::span<const SatInstance> instances, const LearnerSpec& learner,
                         const PromptTemplate& prompt, int samples = 12,
                         const std::vector<int>& ks = {1, 3, 5, 7, 10});

/// (difficulty, pass@3) per level; the point list behind the regression of
/// pass rate against difficulty.
std::vector<std::pair<double, double>> difficulty_pass_points(
    std::span<const LevelReport> levels, int k = 3);

/// Rebuilds per-level reports from stored records (for `report fit`).
std::vector<LevelReport> levels_from_records(std::span<const EvalRecord> records,
                                             const std::vector<int>& ks = {1, 3, 5, 7, 10});

/// Report renderers. Markdown shows percentages with one decimal; the CSV
/// keeps full precision.
std::string render_markdown_report(std::span<const LevelReport> levels);
std::string render_csv_report(std::span<const LevelReport> levels);
std::string render_points_csv(std::span<const std::pair<double, double>> points);

}  // namespace satgen
