#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "satgen/cnf.hpp"
#include "satgen/construct.hpp"
#include "satgen/learner.hpp"

namespace satgen {

/// Configuration of the two-loop curriculum. Each outer iteration evaluates
/// pass@1 on a fresh validation set and either advances the difficulty (gate
/// passed: pass@1 >= epsilon) or runs up to max_grpo_steps training steps at
/// the current level, re-evaluating after each and exiting early once the
/// gate passes.
struct CurriculumConfig {
  SatParams initial{3, 5, 5};
  double epsilon = 0.5;      // pass@1 gate, in (0, 1]
  int train_size = 250;      // instances per training step
  int val_size = 40;         // instances per validation set
  int d_step = 1;            // clause-count increment on advancement
  int max_iterations = 2;    // outer curriculum iterations
  int max_grpo_steps = 10;   // training steps per level
  int val_samples = 12;      // samples per instance for the pass@1 estimate
  std::uint64_t seed = 0;
  ConstructionMode mode = ConstructionMode::direct;

  void validate() const;
  static CurriculumConfig from_json(const std::string& json_text);
  static CurriculumConfig from_file(const std::string& path);
  std::string to_json() const;

  /// Named presets: "1.5b" and "7b" carry the reference hyperparameter
  /// columns; "ablation-*" presets express the single- and two-stage
  /// training-budget settings as curriculum configs.
  static CurriculumConfig preset(const std::string& name, std::uint64_t seed = 0);
  static std::vector<std::string> preset_names();
};

struct CurriculumEvent {
  enum class Kind { evaluated, advanced, trained };
  Kind kind = Kind::evaluated;
  int iteration = 0;
  /// Gate evaluations carry step -1; in-training evaluations and trained
  /// events carry the 0-based inner step.
  int step = -1;
  SatParams params;       // evaluated: level; advanced: source level
  double pass1 = 0.0;     // evaluated only
  SatParams advanced_to;  // advanced only
  std::string batch_id;   // trained only

  std::string to_json() const;
};

/// Live state of a run: current level, loop counters, full event history.
struct CurriculumState {
  SatParams current;
  int iteration = 0;
  int inner_step = 0;
  enum class Phase { gate, train, done };
  Phase phase = Phase::gate;
  std::vector<CurriculumEvent> history;

  int count(CurriculumEvent::Kind kind) const;
};

/// (n, k, l + d_step), capacity-checked: throws CapacityError when the new
/// clause count exceeds C(k, n) * (2^n - 1), i.e. the curriculum cannot
/// proceed at this (n, k).
SatParams increase_difficulty(SatParams params, int d_step);

struct CurriculumResult {
  LearnerSpec learner;
  CurriculumState state;
};

/// Runs the curriculum. When out_dir is non-empty the engine persists
/// state.json (snapshotted atomically after every event), history.jsonl and
/// per-step training batches under out_dir/batches/. Deterministic for mock
/// learners: all instance generation seeds derive from config.seed and the
/// (iteration, step) position.
///
/// resume_from restarts a previously persisted run at its recorded position;
/// pass the state loaded via load_state.
CurriculumResult run_curriculum(const CurriculumConfig& config, const LearnerSpec& learner,
                                const std::string& out_dir = "",
                                std::optional<CurriculumState> resume_from = std::nullopt);

/// Reads back a persisted state.json; also recovers config and learner.
struct PersistedRun {
  CurriculumConfig config;
  LearnerSpec learner;
  CurriculumState state;
};
PersistedRun load_state(const std::string& state_path);

}  // namespace satgen
