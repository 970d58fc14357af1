#include "satgen/curriculum.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "satgen/errors.hpp"
#include "satgen/evaluate.hpp"
#include "satgen/rng.hpp"

namespace satgen {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;
using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Config

void CurriculumConfig::validate() const {
  if (epsilon <= 0.0 || epsilon > 1.0)
    throw ContractError("curriculum: epsilon must be in (0, 1]");
  if (train_size < 1 || val_size < 1 || d_step < 1 || max_iterations < 1 ||
      max_grpo_steps < 1 || val_samples < 1)
    throw ContractError("curriculum: all counts must be >= 1");
  if (initial.clause_width < 1 || initial.num_vars < initial.clause_width ||
      initial.num_clauses < 1)
    throw ContractError("curriculum: invalid initial (n, k, l)");
}

CurriculumConfig CurriculumConfig::from_json(const std::string& json_text) {
  json obj;
  try {
    obj = json::parse(json_text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("curriculum config: invalid JSON: ") + e.what());
  }
  CurriculumConfig config;
  if (obj.contains("initial")) {
    const json& initial = obj.at("initial");
    config.initial = SatParams{initial.at("n").get<int>(), initial.at("k").get<int>(),
                               initial.at("l").get<int>()};
  }
  config.epsilon = obj.value("epsilon", config.epsilon);
  config.train_size = obj.value("train_size", config.train_size);
  config.val_size = obj.value("val_size", config.val_size);
  config.d_step = obj.value("d_step", config.d_step);
  config.max_iterations = obj.value("max_iterations", config.max_iterations);
  config.max_grpo_steps = obj.value("max_grpo_steps", config.max_grpo_steps);
  config.val_samples = obj.value("val_samples", config.val_samples);
  config.seed = obj.value("seed", config.seed);
  if (obj.value("mode", "direct") == "pooled") config.mode = ConstructionMode::pooled;
  config.validate();
  return config;
}

CurriculumConfig CurriculumConfig::from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open curriculum config '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_json(buffer.str());
}

std::string CurriculumConfig::to_json() const {
  ordered_json obj;
  obj["initial"] = {{"n", initial.clause_width}, {"k", initial.num_vars}, {"l", initial.num_clauses}};
  obj["epsilon"] = epsilon;
  obj["train_size"] = train_size;
  obj["val_size"] = val_size;
  obj["d_step"] = d_step;
  obj["max_iterations"] = max_iterations;
  obj["max_grpo_steps"] = max_grpo_steps;
  obj["val_samples"] = val_samples;
  obj["seed"] = seed;
  obj["mode"] = mode == ConstructionMode::direct ? "direct" : "pooled";
  return obj.dump();
}

CurriculumConfig CurriculumConfig::preset(const std::string& name, std::uint64_t seed) {
  CurriculumConfig config;
  config.seed = seed;
  if (name == "1.5b") {
    config.initial = SatParams{3, 5, 5};
    config.epsilon = 0.5;
    config.d_step = 1;
  } else if (name == "7b") {
    config.initial = SatParams{3, 5, 13};
    config.epsilon = 0.75;
    config.d_step = 2;
  } else if (name == "ablation-single-3-5-10") {
    config = preset("7b", seed);
    config.initial = SatParams{3, 5, 10};
    config.max_iterations = 1;
    config.max_grpo_steps = 2;  // 2 x 250 = the 500-sample budget
  } else if (name == "ablation-single-3-5-13") {
    config = preset("ablation-single-3-5-10", seed);
    config.initial = SatParams{3, 5, 13};
  } else if (name == "ablation-single-3-5-15") {
    config = preset("ablation-single-3-5-10", seed);
    config.initial = SatParams{3, 5, 15};
  } else if (name == "ablation-single-3-5-13-x1000") {
    config = preset("ablation-single-3-5-13", seed);
    config.max_grpo_steps = 4;  // 4 x 250 = the 1000-sample budget
  } else if (name == "ablation-two-stage") {
    config = preset("7b", seed);
    config.max_iterations = 2;
    config.max_grpo_steps = 2;  // 500 samples per stage, (3,5,13) -> (3,5,15)
  } else {
    throw ContractError("unknown curriculum preset '" + name + "'");
  }
  config.validate();
  return config;
}

std::vector<std::string> CurriculumConfig::preset_names() {
  return {"1.5b",
          "7b",
          "ablation-single-3-5-10",
          "ablation-single-3-5-13",
          "ablation-single-3-5-15",
          "ablation-single-3-5-13-x1000",
          "ablation-two-stage"};
}

// ---------------------------------------------------------------------------
// Events and state

namespace {

ordered_json params_json(const SatParams& p) {
  return ordered_json::array({p.clause_width, p.num_vars, p.num_clauses});
}

SatParams params_from_json(const json& arr) {
  return SatParams{arr.at(0).get<int>(), arr.at(1).get<int>(), arr.at(2).get<int>()};
}

std::string phase_name(CurriculumState::Phase phase) {
  switch (phase) {
    case CurriculumState::Phase::gate: return "gate";
    case CurriculumState::Phase::train: return "train";
    case CurriculumState::Phase::done: return "done";
  }
  throw ContractError("unknown phase");
}

CurriculumState::Phase phase_from_name(const std::string& name) {
  if (name == "gate") return CurriculumState::Phase::gate;
  if (name == "train") return CurriculumState::Phase::train;
  if (name == "done") return CurriculumState::Phase::done;
  throw ParseError("unknown phase '" + name + "'");
}

}  // namespace

std::string CurriculumEvent::to_json() const {
  ordered_json obj;
  switch (kind) {
    case Kind::evaluated:
      obj["event"] = "evaluated";
      obj["iteration"] = iteration;
      obj["step"] = step;
      obj["params"] = params_json(params);
      obj["pass1"] = pass1;
      break;
    case Kind::advanced:
      obj["event"] = "advanced";
      obj["iteration"] = iteration;
      obj["from"] = params_json(params);
      obj["to"] = params_json(advanced_to);
      break;
    case Kind::trained:
      obj["event"] = "trained";
      obj["iteration"] = iteration;
      obj["step"] = step;
      obj["params"] = params_json(params);
      obj["batch_id"] = batch_id;
      break;
  }
  return obj.dump();
}

namespace {

CurriculumEvent event_from_json(const json& obj) {
  CurriculumEvent event;
  std::string kind = obj.at("event").get<std::string>();
  event.iteration = obj.value("iteration", 0);
  event.step = obj.value("step", -1);
  if (kind == "evaluated") {
    event.kind = CurriculumEvent::Kind::evaluated;
    event.params = params_from_json(obj.at("params"));
    event.pass1 = obj.at("pass1").get<double>();
  } else if (kind == "advanced") {
    event.kind = CurriculumEvent::Kind::advanced;
    event.params = params_from_json(obj.at("from"));
    event.advanced_to = params_from_json(obj.at("to"));
  } else if (kind == "trained") {
    event.kind = CurriculumEvent::Kind::trained;
    event.params = params_from_json(obj.at("params"));
    event.batch_id = obj.value("batch_id", "");
  } else {
    throw ParseError("unknown event kind '" + kind + "'");
  }
  return event;
}

}  // namespace

int CurriculumState::count(CurriculumEvent::Kind kind) const {
  int total = 0;
  for (const CurriculumEvent& event : history)
    if (event.kind == kind) ++total;
  return total;
}

SatParams increase_difficulty(SatParams params, int d_step) {
  if (d_step < 1) throw ContractError("increase_difficulty: d_step must be >= 1");
  SatParams next = params;
  next.num_clauses += d_step;
  std::uint64_t capacity =
      per_solution_clause_capacity(next.clause_width, next.num_vars);
  if (static_cast<std::uint64_t>(next.num_clauses) > capacity)
    throw CapacityError(
        "increase_difficulty: clause count " + std::to_string(next.num_clauses) +
            " exceeds capacity " + std::to_string(capacity) + " at (n=" +
            std::to_string(next.clause_width) + ", k=" + std::to_string(next.num_vars) +
            "); the curriculum cannot proceed at this (n, k)",
        capacity);
  return next;
}

// ---------------------------------------------------------------------------
// Engine

namespace {

class Persistence {
public:
  Persistence(std::string out_dir, const CurriculumConfig& config)
      : out_dir_(std::move(out_dir)), config_(config) {
    if (enabled()) {
      fs::create_directories(out_dir_);
      fs::create_directories(fs::path(out_dir_) / "batches");
    }
  }

  bool enabled() const { return !out_dir_.empty(); }

  std::string batch_path(int iteration, int step) const {
    char name[64];
    std::snprintf(name, sizeof(name), "it%02d_step%02d.jsonl", iteration, step);
    return (fs::path(out_dir_) / "batches" / name).string();
  }

  void append_history(const CurriculumEvent& event) {
    if (!enabled()) return;
    std::ofstream out(fs::path(out_dir_) / "history.jsonl", std::ios::app | std::ios::binary);
    if (!out) throw IoError("cannot append to history.jsonl in '" + out_dir_ + "'");
    out << event.to_json() << "\n";
  }

  /// Atomic snapshot: write to a temp file, then rename over state.json.
  void snapshot(const CurriculumState& state, const LearnerSpec& learner) {
    if (!enabled()) return;
    ordered_json obj;
    obj["config"] = ordered_json::parse(config_.to_json());
    obj["learner"] = ordered_json::parse(learner.to_json());
    obj["current"] = params_json(state.current);
    obj["iteration"] = state.iteration;
    obj["inner_step"] = state.inner_step;
    obj["phase"] = phase_name(state.phase);
    ordered_json events = ordered_json::array();
    for (const CurriculumEvent& event : state.history)
      events.push_back(ordered_json::parse(event.to_json()));
    obj["history"] = std::move(events);

    fs::path final_path = fs::path(out_dir_) / "state.json";
    fs::path tmp_path = fs::path(out_dir_) / "state.json.tmp";
    {
      std::ofstream out(tmp_path, std::ios::binary | std::ios::trunc);
      if (!out) throw IoError("cannot write '" + tmp_path.string() + "'");
      out << obj.dump(2) << "\n";
    }
    fs::rename(tmp_path, final_path);
  }

private:
  std::string out_dir_;
  const CurriculumConfig& config_;
};

struct Engine {
  const CurriculumConfig& config;
  LearnerSpec learner;
  CurriculumState state;
  Persistence persist;
  PromptTemplate prompt = PromptTemplate::builtin();

  std::vector<SatInstance> val_set;
  std::unordered_set<std::string> val_keys;

  void record(CurriculumEvent event) {
    state.history.push_back(event);
    persist.append_history(event);
    persist.snapshot(state, learner);
  }

  std::vector<SatInstance> generate(std::uint64_t tag, int iteration, int index, int count,
                                    const std::unordered_set<std::string>& exclude) {
    ConstructionParams params;
    params.clause_width = state.current.clause_width;
    params.num_vars = state.current.num_vars;
    params.num_clauses = state.current.num_clauses;
    params.instance_count = count;
    params.mode = config.mode;
    params.seed = derive_seed(config.seed, tag, static_cast<std::uint64_t>(iteration),
                              static_cast<std::uint64_t>(index));
    return construct(params, exclude);
  }

  static std::unordered_set<std::string> keys_of(const std::vector<SatInstance>& instances) {
    std::unordered_set<std::string> keys;
    keys.reserve(instances.size() * 2);
    for (const SatInstance& instance : instances) keys.insert(canonical_key(instance));
    return keys;
  }

  /// Validation sets are regenerated fresh per evaluation; val index 0 is
  /// the iteration's gate set, index j+1 the set regenerated after inner
  /// step j.
  void regen_val(int iteration, int val_index, const std::unordered_set<std::string>& exclude) {
    val_set = generate(kStreamVal, iteration, val_index, config.val_size, exclude);
    val_keys = keys_of(val_set);
  }

  double evaluate_pass1(int iteration, int step) {
    auto [records, report] =
        evaluate_level(val_set, learner, prompt, config.val_samples, {1});
    record(CurriculumEvent{CurriculumEvent::Kind::evaluated, iteration, step, state.current,
                           report.pass_at.at(1), {}, ""});
    return report.pass_at.at(1);
  }

  /// One training step: the batch excludes the current validation set's
  /// canonical forms, and the regenerated validation set excludes the
  /// batch's, keeping every train/val pairing of the step disjoint.
  void train_step(int iteration, int step) {
    std::vector<SatInstance> batch =
        generate(kStreamTrain, iteration, step, config.train_size, val_keys);
    std::string batch_path =
        persist.enabled() ? persist.batch_path(iteration, step) : std::string{};
    learner = train(learner, batch, prompt, batch_path);
    char batch_id[64];
    std::snprintf(batch_id, sizeof(batch_id), "it%02d_step%02d", iteration, step);
    record(CurriculumEvent{CurriculumEvent::Kind::trained, iteration, step, state.current,
                           0.0, {}, batch_id});
    regen_val(iteration, step + 1, keys_of(batch));
  }

  void advance(int iteration) {
    SatParams from = state.current;
    state.current = increase_difficulty(state.current, config.d_step);
    record(CurriculumEvent{CurriculumEvent::Kind::advanced, iteration, -1, from, 0.0,
                           state.current, ""});
  }

  /// A resumed run re-derives the in-iteration generation context (the
  /// validation set and its exclusions) by replaying construction, which is
  /// seed-addressed and therefore reproduces the pre-interruption state
  /// exactly. No learner evaluation or training is replayed.
  void rebuild_context_for_resume() {
    if (state.phase != CurriculumState::Phase::train) return;
    int t = state.iteration;
    regen_val(t, 0, {});
    for (int j = 0; j < state.inner_step; ++j) {
      std::vector<SatInstance> batch =
          generate(kStreamTrain, t, j, config.train_size, val_keys);
      regen_val(t, j + 1, keys_of(batch));
    }
  }

  void run() {
    rebuild_context_for_resume();
    while (state.iteration < config.max_iterations) {
      int t = state.iteration;
      if (state.phase == CurriculumState::Phase::gate) {
        regen_val(t, 0, {});
        double pass1 = evaluate_pass1(t, -1);
        if (pass1 >= config.epsilon) {
          advance(t);
          ++state.iteration;
          persist.snapshot(state, learner);
          continue;
        }
        state.phase = CurriculumState::Phase::train;
        state.inner_step = 0;
        persist.snapshot(state, learner);
      }
      while (state.inner_step < config.max_grpo_steps) {
        int i = state.inner_step;
        train_step(t, i);
        double pass1 = evaluate_pass1(t, i);
        ++state.inner_step;
        persist.snapshot(state, learner);
        if (pass1 >= config.epsilon) break;
      }
      state.phase = CurriculumState::Phase::gate;
      state.inner_step = 0;
      ++state.iteration;
      persist.snapshot(state, learner);
    }
    state.phase = CurriculumState::Phase::done;
    persist.snapshot(state, learner);
  }
};

}  // namespace

CurriculumResult run_curriculum(const CurriculumConfig& config, const LearnerSpec& learner,
                                const std::string& out_dir,
                                std::optional<CurriculumState> resume_from) {
  config.validate();
  CurriculumState state;
  state.current = config.initial;
  if (resume_from) state = *std::move(resume_from);

  Engine engine{config, learner, std::move(state), Persistence(out_dir, config)};
  engine.run();
  return CurriculumResult{std::move(engine.learner), std::move(engine.state)};
}

PersistedRun load_state(const std::string& state_path) {
  std::ifstream in(state_path, std::ios::binary);
  if (!in) throw IoError("cannot open state file '" + state_path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  json obj;
  try {
    obj = json::parse(buffer.str());
  } catch (const std::exception& e) {
    throw ParseError(std::string("state.json: invalid JSON: ") + e.what());
  }
  PersistedRun run;
  run.config = CurriculumConfig::from_json(obj.at("config").dump());
  run.learner = LearnerSpec::from_json(obj.at("learner").dump());
  run.state.current = params_from_json(obj.at("current"));
  run.state.iteration = obj.at("iteration").get<int>();
  run.state.inner_step = obj.at("inner_step").get<int>();
  run.state.phase = phase_from_name(obj.at("phase").get<std::string>());
  for (const auto& event_json : obj.at("history"))
    run.state.history.push_back(event_from_json(event_json));
  return run;
}

}  // namespace satgen
