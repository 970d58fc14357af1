// satgen: generate, score, solve and benchmark fixed-width satisfiable CNF
// instances; run curriculum simulations against mock or HTTP learners.
//
// Exit codes: 0 success, 1 usage error, 2 runtime error; `solve` uses the
// SAT-competition convention, 10 satisfiable / 20 unsatisfiable.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "satgen/answer.hpp"
#include "satgen/construct.hpp"
#include "satgen/curriculum.hpp"
#include "satgen/dataset.hpp"
#include "satgen/difficulty.hpp"
#include "satgen/dimacs.hpp"
#include "satgen/errors.hpp"
#include "satgen/evaluate.hpp"
#include "satgen/json_records.hpp"
#include "satgen/learner.hpp"
#include "satgen/solver.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;
using json = nlohmann::json;
using namespace satgen;

namespace {

struct GlobalConfig {
  std::uint64_t seed = 0;
  std::string out_dir;
  std::string log_level = "info";
  std::string learner_path;
  std::string template_path;
};

GlobalConfig load_global_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config '" + path + "'");
  json obj = json::parse(in, nullptr, true, true);
  GlobalConfig config;
  config.seed = obj.value("seed", std::uint64_t{0});
  config.out_dir = obj.value("out_dir", "");
  config.log_level = obj.value("log_level", "info");
  config.learner_path = obj.value("learner", "");
  config.template_path = obj.value("template", "");
  return config;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << contents;
}

bool looks_like_jsonl(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  char c = 0;
  while (in.get(c) && (c == ' ' || c == '\t' || c == '\n' || c == '\r')) {}
  return c == '{';
}

/// Formula inputs for verify/solve: DIMACS text, or JSONL instance records.
std::vector<std::pair<std::string, CnfFormula>> load_formulas(const std::string& path) {
  std::vector<std::pair<std::string, CnfFormula>> formulas;
  if (looks_like_jsonl(path)) {
    for (SatInstance& instance : read_jsonl(path))
      formulas.emplace_back(instance.id, std::move(instance.formula));
  } else {
    formulas.emplace_back(fs::path(path).filename().string(), parse_dimacs(read_file(path)));
  }
  return formulas;
}

SatInstance load_single_instance(const std::string& path) {
  std::vector<SatInstance> instances = read_jsonl(path);
  if (instances.empty()) throw IoError("no instance records in '" + path + "'");
  if (instances.size() > 1)
    throw ContractError("'" + path + "' holds " + std::to_string(instances.size()) +
                        " records; expected exactly one instance");
  return instances.front();
}

PromptTemplate resolve_template(const std::string& path, const std::string& style_name) {
  PromptTemplate::Style style = style_name == "dimacs" ? PromptTemplate::Style::dimacs
                                                       : PromptTemplate::Style::symbolic;
  if (path.empty()) {
    PromptTemplate builtin = PromptTemplate::builtin();
    return PromptTemplate(builtin.text(), style);
  }
  return PromptTemplate::from_file(path, style);
}

std::vector<int> parse_k_list(const std::string& csv) {
  std::vector<int> ks;
  std::stringstream stream(csv);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (item.empty()) continue;
    ks.push_back(std::stoi(item));
  }
  if (ks.empty()) throw ContractError("--k list is empty");
  return ks;
}

ordered_json params_json(const SatParams& p) {
  return ordered_json{{"n", p.clause_width}, {"k", p.num_vars}, {"l", p.num_clauses}};
}

void emit(const ordered_json& payload) { std::cout << payload.dump() << "\n"; }

// ---------------------------------------------------------------------------
// Subcommand actions

int run_generate(const ConstructionParams& params, const std::string& out_path,
                 const std::string& dimacs_dir, bool json_output) {
  std::vector<SatInstance> instances = construct(params);
  write_jsonl(out_path, instances);
  if (!dimacs_dir.empty()) {
    fs::create_directories(dimacs_dir);
    for (const SatInstance& instance : instances)
      write_file((fs::path(dimacs_dir) / (instance.id + ".cnf")).string(), to_dimacs(instance));
  }
  if (json_output) {
    emit(ordered_json{{"count", instances.size()},
                      {"out", out_path},
                      {"params", params_json({params.clause_width, params.num_vars,
                                              params.num_clauses})},
                      {"seed", params.seed}});
  } else {
    std::cout << "wrote " << instances.size() << " instances to " << out_path << "\n";
  }
  return 0;
}

int run_estimate(const SatParams& params, const MetricKind& metric, bool json_output) {
  double score = metric_score(metric, params);
  if (json_output) {
    emit(ordered_json{{"n", params.clause_width},
                      {"k", params.num_vars},
                      {"l", params.num_clauses},
                      {"metric", metric.name()},
                      {"score", score},
                      {"clause_variable_ratio", clause_variable_ratio(params)}});
  } else {
    std::printf("%.4f\n", score);
  }
  return 0;
}

int run_verify(const std::string& in_path, const std::string& assignment_bits,
               bool json_output) {
  bool satisfied = false;
  std::string described;
  if (looks_like_jsonl(in_path) && assignment_bits.empty()) {
    SatInstance instance = load_single_instance(in_path);
    satisfied = verify(instance.formula, instance.hidden_solution);
    described = instance.id + " (hidden solution)";
  } else {
    if (assignment_bits.empty())
      throw ContractError("--assignment is required for DIMACS input");
    auto formulas = load_formulas(in_path);
    if (formulas.size() != 1)
      throw ContractError("verify expects exactly one formula; got " +
                          std::to_string(formulas.size()));
    satisfied = verify(formulas.front().second, Assignment::from_string(assignment_bits));
    described = formulas.front().first;
  }
  if (json_output)
    emit(ordered_json{{"input", described}, {"satisfied", satisfied}});
  else
    std::cout << (satisfied ? "satisfied" : "not satisfied") << "\n";
  return 0;
}

int run_verify_answer(const std::string& instance_path, const std::string& text_path) {
  SatInstance instance = load_single_instance(instance_path);
  ScoredAnswer scored = score_answer(read_file(text_path), instance);
  const char* status = nullptr;
  switch (scored.parsed.status) {
    case ParsedAnswer::Status::missing_box: status = "missing_box"; break;
    case ParsedAnswer::Status::unparseable_content: status = "unparseable_content"; break;
    case ParsedAnswer::Status::parsed: status = "parsed"; break;
  }
  ordered_json payload{{"instance_id", instance.id}, {"status", status},
                       {"reward", scored.reward}};
  if (scored.parsed.assignment) payload["assignment"] = scored.parsed.assignment->to_string();
  emit(payload);
  return 0;
}

int run_solve(const std::string& in_path, const SolverConfig& config,
              std::uint64_t enumerate_limit, bool json_output) {
  auto formulas = load_formulas(in_path);
  int sat_count = 0, unsat_count = 0, valid_models = 0;
  double total_seconds = 0.0;
  for (const auto& [name, formula] : formulas) {
    SolveResult result = solve(formula, config);
    total_seconds += result.stats.elapsed_seconds;
    ordered_json payload;
    payload["input"] = name;
    payload["status"] = result.status == SolveStatus::sat ? "sat" : "unsat";
    if (result.model) {
      payload["model"] = result.model->to_string();
      bool valid = verify(formula, *result.model);
      payload["model_valid"] = valid;
      if (valid) ++valid_models;
    }
    payload["stats"] = ordered_json{{"decisions", result.stats.decisions},
                                    {"propagations", result.stats.propagations},
                                    {"conflicts", result.stats.conflicts},
                                    {"elapsed_seconds", result.stats.elapsed_seconds}};
    result.status == SolveStatus::sat ? ++sat_count : ++unsat_count;
    if (enumerate_limit > 0) {
      ordered_json models = ordered_json::array();
      for (const Assignment& model : enumerate_models(formula, enumerate_limit, config))
        models.push_back(model.to_string());
      payload["models"] = std::move(models);
    }
    if (json_output || formulas.size() == 1) {
      emit(payload);
    } else {
      std::cout << name << ": " << payload["status"].get<std::string>() << "\n";
    }
  }
  if (formulas.size() > 1) {
    double accuracy =
        sat_count == 0 ? 0.0 : 100.0 * static_cast<double>(valid_models) / sat_count;
    ordered_json summary{{"total", formulas.size()},
                         {"sat", sat_count},
                         {"unsat", unsat_count},
                         {"valid_models", valid_models},
                         {"model_accuracy_percent", accuracy},
                         {"total_seconds", total_seconds}};
    if (json_output) {
      emit(summary);
    } else {
      std::printf("total %zu | sat %d | unsat %d | valid models %d (%.2f%%) | %.3fs\n",
                  formulas.size(), sat_count, unsat_count, valid_models, accuracy,
                  total_seconds);
    }
  }
  if (unsat_count == 0) return 10;
  if (sat_count == 0) return 20;
  return 0;
}

int run_dataset_build(const std::string& manifest_path, std::uint64_t seed,
                      const std::string& out_dir, ConstructionMode mode, bool json_output) {
  BenchmarkManifest manifest = manifest_path.empty()
                                   ? BenchmarkManifest::default_manifest()
                                   : BenchmarkManifest::from_file(manifest_path);
  BuildReport report = build_benchmark(manifest, seed, out_dir, mode);
  if (json_output) {
    emit(ordered_json{{"out", report.out_dir},
                      {"train", report.train_count},
                      {"test_same", report.test_same_count},
                      {"test_hard", report.test_hard_count},
                      {"seed", seed}});
  } else {
    std::cout << "built " << report.train_count << " train / " << report.test_same_count
              << " test_same / " << report.test_hard_count << " test_hard in "
              << report.out_dir << "\n";
  }
  return 0;
}

int run_dataset_check(const std::string& dir, bool json_output) {
  CheckReport report = check_dataset(dir);
  if (json_output) {
    emit(ordered_json{{"ok", report.ok}, {"problems", report.problems},
                      {"notes", report.notes}});
  } else {
    for (const std::string& problem : report.problems) std::cout << "problem: " << problem << "\n";
    for (const std::string& note : report.notes) std::cout << "note: " << note << "\n";
    std::cout << (report.ok ? "ok" : "FAILED") << "\n";
  }
  return report.ok ? 0 : 2;
}

int run_eval(const std::string& dataset_path, const std::string& learner_path,
             const std::string& template_path, const std::string& template_style,
             int samples, const std::string& k_csv, const std::string& out_dir,
             bool json_output) {
  std::vector<SatInstance> instances = read_jsonl(dataset_path);
  LearnerSpec learner = LearnerSpec::from_file(learner_path);
  PromptTemplate prompt = resolve_template(template_path, template_style);
  std::vector<int> ks = parse_k_list(k_csv);

  EvalRun run = evaluate_dataset(instances, learner, prompt, samples, ks);

  fs::create_directories(out_dir);
  {
    std::ofstream records_out(fs::path(out_dir) / "records.jsonl", std::ios::binary);
    for (const EvalRecord& record : run.records) records_out << record.to_json() << "\n";
  }
  write_file((fs::path(out_dir) / "report.md").string(), render_markdown_report(run.levels));
  write_file((fs::path(out_dir) / "report.csv").string(), render_csv_report(run.levels));
  auto points = difficulty_pass_points(run.levels, 3);
  write_file((fs::path(out_dir) / "points.csv").string(), render_points_csv(points));

  if (json_output) {
    ordered_json levels = ordered_json::array();
    for (const LevelReport& level : run.levels) {
      ordered_json entry = params_json(level.params);
      entry["difficulty"] = level.difficulty;
      entry["instances"] = level.instance_count;
      for (const auto& [k, value] : level.pass_at)
        entry["pass_at_" + std::to_string(k)] = value;
      levels.push_back(std::move(entry));
    }
    emit(ordered_json{{"records", run.records.size()}, {"levels", levels}, {"out", out_dir}});
  } else {
    std::cout << render_markdown_report(run.levels);
    std::cerr << "wrote records.jsonl, report.md, report.csv, points.csv to " << out_dir
              << "\n";
  }
  return 0;
}

int run_curriculum_cmd(const std::string& config_path, const std::string& preset,
                       std::uint64_t seed, const std::string& learner_path,
                       const std::string& out_dir, bool resume, bool json_output) {
  CurriculumConfig config;
  LearnerSpec learner;
  std::optional<CurriculumState> resume_state;
  if (resume) {
    PersistedRun persisted = load_state((fs::path(out_dir) / "state.json").string());
    config = persisted.config;
    learner = persisted.learner;
    resume_state = std::move(persisted.state);
  } else {
    if (!preset.empty())
      config = CurriculumConfig::preset(preset, seed);
    else if (!config_path.empty())
      config = CurriculumConfig::from_file(config_path);
    else
      throw ContractError("curriculum run needs --config or --preset");
    learner = LearnerSpec::from_file(learner_path);
  }

  CurriculumResult result = run_curriculum(config, learner, out_dir, std::move(resume_state));
  ordered_json payload{{"final", params_json(result.state.current)},
                       {"iterations", result.state.iteration},
                       {"evaluations", result.state.count(CurriculumEvent::Kind::evaluated)},
                       {"training_steps", result.state.count(CurriculumEvent::Kind::trained)},
                       {"advancements", result.state.count(CurriculumEvent::Kind::advanced)}};
  if (result.learner.kind == LearnerSpec::Kind::mock)
    payload["final_skill"] = result.learner.mock.skill;
  if (json_output) {
    emit(payload);
  } else {
    std::cout << "final (n,k,l) = (" << result.state.current.clause_width << ","
              << result.state.current.num_vars << "," << result.state.current.num_clauses
              << "), " << payload["training_steps"].get<int>() << " training steps, "
              << payload["advancements"].get<int>() << " advancements\n";
  }
  return 0;
}

int run_report_fit(const std::string& in_path, int k, const std::string& csv_path) {
  std::vector<EvalRecord> records;
  std::ifstream in(in_path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + in_path + "'");
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    records.push_back(EvalRecord::from_json(line, lineno));
  }
  std::vector<LevelReport> levels = levels_from_records(records, {k});
  auto points = difficulty_pass_points(levels, k);
  RegressionFit fit = fit_linear(points);
  if (!csv_path.empty()) write_file(csv_path, render_points_csv(points));
  emit(ordered_json{{"slope", fit.slope},
                    {"intercept", fit.intercept},
                    {"r_squared", fit.r_squared},
                    {"point_count", fit.point_count},
                    {"pass_k", k}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"satisfiable (n,k,l)-SAT instance generation, verification, "
               "difficulty estimation, solving, evaluation and curriculum simulation"};
  app.require_subcommand(1);

  std::string global_config_path;
  app.add_option("--config", global_config_path,
                 "global config JSON: {seed, out_dir, log_level, learner, template}");

  GlobalConfig global;
  bool json_output = false;
  app.add_flag("--json", json_output, "machine-readable output on stdout");

  std::function<int()> action;

  // generate ----------------------------------------------------------------
  auto* generate_cmd = app.add_subcommand("generate", "construct satisfiable instances");
  {
    auto params = std::make_shared<ConstructionParams>();
    auto out_path = std::make_shared<std::string>();
    auto dimacs_dir = std::make_shared<std::string>();
    auto mode = std::make_shared<std::string>("direct");
    auto seed_opt = std::make_shared<std::uint64_t>(0);
    generate_cmd->add_option("--n", params->clause_width, "clause width")->required();
    generate_cmd->add_option("--k", params->num_vars, "variable count")->required();
    generate_cmd->add_option("--l", params->num_clauses, "clause count")->required();
    generate_cmd->add_option("--m", params->instance_count, "instance count")->required();
    generate_cmd->add_option("--seed", *seed_opt, "RNG seed");
    generate_cmd->add_option("--mode", *mode, "direct | pooled")
        ->check(CLI::IsMember({"direct", "pooled"}));
    generate_cmd->add_option("--pool-cap", params->pool_cap, "pooled-mode pair cap");
    generate_cmd->add_option("--out", *out_path, "output JSONL path")->required();
    generate_cmd->add_option("--dimacs-dir", *dimacs_dir, "also write one .cnf per instance");
    generate_cmd->callback([=, &action, &json_output, &global] {
      action = [=, &json_output, &global] {
        ConstructionParams p = *params;
        p.seed = generate_cmd->count("--seed") ? *seed_opt : global.seed;
        p.mode = *mode == "pooled" ? ConstructionMode::pooled : ConstructionMode::direct;
        return run_generate(p, *out_path, *dimacs_dir, json_output);
      };
    });
  }

  // estimate ----------------------------------------------------------------
  auto* estimate_cmd = app.add_subcommand("estimate", "difficulty score of (n, k, l)");
  {
    auto params = std::make_shared<SatParams>();
    auto metric_name = std::make_shared<std::string>("composite");
    auto alpha = std::make_shared<double>(1.0);
    auto beta = std::make_shared<double>(1.0);
    estimate_cmd->add_option("--n", params->clause_width, "clause width")->required();
    estimate_cmd->add_option("--k", params->num_vars, "variable count")->required();
    estimate_cmd->add_option("--l", params->num_clauses, "clause count")->required();
    estimate_cmd->add_option("--metric", *metric_name,
                             "composite | sparsity_only | structure_weighted | "
                             "expected_solution_count | log_ratio");
    estimate_cmd->add_option("--alpha", *alpha, "structure_weighted alpha");
    estimate_cmd->add_option("--beta", *beta, "structure_weighted beta");
    estimate_cmd->callback([=, &action, &json_output] {
      action = [=, &json_output] {
        return run_estimate(*params, MetricKind::from_name(*metric_name, *alpha, *beta),
                            json_output);
      };
    });
  }

  // verify ------------------------------------------------------------------
  auto* verify_cmd =
      app.add_subcommand("verify", "check an assignment against a formula");
  {
    auto in_path = std::make_shared<std::string>();
    auto assignment = std::make_shared<std::string>();
    verify_cmd->add_option("--in", *in_path, "DIMACS file or single-record JSONL")->required();
    verify_cmd->add_option("--assignment", *assignment,
                           "bit string; defaults to the record's hidden solution");
    verify_cmd->callback([=, &action, &json_output] {
      action = [=, &json_output] { return run_verify(*in_path, *assignment, json_output); };
    });
  }

  // verify-answer -------------------------------------------------------------
  auto* verify_answer_cmd =
      app.add_subcommand("verify-answer", "extract a boxed answer and compute its reward");
  {
    auto instance_path = std::make_shared<std::string>();
    auto text_path = std::make_shared<std::string>();
    verify_answer_cmd->add_option("--instance", *instance_path, "instance record JSON")
        ->required();
    verify_answer_cmd->add_option("--text", *text_path, "model output text file")->required();
    verify_answer_cmd->callback([=, &action] {
      action = [=] { return run_verify_answer(*instance_path, *text_path); };
    });
  }

  // solve ---------------------------------------------------------------------
  auto* solve_cmd = app.add_subcommand("solve", "decide satisfiability (exit 10 sat, 20 unsat)");
  {
    auto in_path = std::make_shared<std::string>();
    auto config = std::make_shared<SolverConfig>();
    auto enumerate_limit = std::make_shared<std::uint64_t>(0);
    solve_cmd->add_option("--in", *in_path, "DIMACS file or JSONL dataset")->required();
    solve_cmd->add_flag("--cdcl", config->use_cdcl, "CDCL with clause learning (default DPLL)");
    solve_cmd->add_option("--enumerate", *enumerate_limit, "list up to N models per formula");
    solve_cmd->add_option("--max-conflicts", config->max_conflicts, "conflict budget (0 = off)");
    solve_cmd->add_option("--max-seconds", config->max_seconds, "time budget (0 = off)");
    solve_cmd->callback([=, &action, &json_output] {
      action = [=, &json_output] {
        return run_solve(*in_path, *config, *enumerate_limit, json_output);
      };
    });
  }

  // dataset ---------------------------------------------------------------
  auto* dataset_cmd = app.add_subcommand("dataset", "benchmark dataset build / check");
  dataset_cmd->require_subcommand(1);
  {
    auto* build_cmd = dataset_cmd->add_subcommand("build", "build split files + manifest");
    auto manifest_path = std::make_shared<std::string>();
    auto out_dir = std::make_shared<std::string>();
    auto seed_opt = std::make_shared<std::uint64_t>(0);
    auto mode = std::make_shared<std::string>("direct");
    build_cmd->add_option("--manifest", *manifest_path,
                          "composition JSON (omit for the default 1500/160/1000)");
    build_cmd->add_option("--seed", *seed_opt, "build seed");
    build_cmd->add_option("--out", *out_dir, "output directory")->required();
    build_cmd->add_option("--mode", *mode, "direct | pooled")
        ->check(CLI::IsMember({"direct", "pooled"}));
    build_cmd->callback([=, &action, &json_output, &global] {
      action = [=, &json_output, &global] {
        std::uint64_t seed = build_cmd->count("--seed") ? *seed_opt : global.seed;
        ConstructionMode m =
            *mode == "pooled" ? ConstructionMode::pooled : ConstructionMode::direct;
        return run_dataset_build(*manifest_path, seed, *out_dir, m, json_output);
      };
    });

    auto* check_cmd = dataset_cmd->add_subcommand("check", "re-validate a built dataset");
    auto check_dir = std::make_shared<std::string>();
    check_cmd->add_option("dir", *check_dir, "dataset directory")->required();
    check_cmd->callback([=, &action, &json_output] {
      action = [=, &json_output] { return run_dataset_check(*check_dir, json_output); };
    });
  }

  // eval --------------------------------------------------------------------
  auto* eval_cmd = app.add_subcommand("eval", "pass@k evaluation of a dataset");
  {
    auto dataset_path = std::make_shared<std::string>();
    auto learner_path = std::make_shared<std::string>();
    auto template_path = std::make_shared<std::string>();
    auto template_style = std::make_shared<std::string>("symbolic");
    auto samples = std::make_shared<int>(12);
    auto k_csv = std::make_shared<std::string>("1,3,5,7,10");
    auto out_dir = std::make_shared<std::string>();
    eval_cmd->add_option("--dataset", *dataset_path, "instance JSONL")->required();
    eval_cmd->add_option("--learner", *learner_path, "learner spec JSON")->required();
    eval_cmd->add_option("--template", *template_path, "prompt template file");
    eval_cmd->add_option("--template-style", *template_style, "symbolic | dimacs")
        ->check(CLI::IsMember({"symbolic", "dimacs"}));
    eval_cmd->add_option("--samples", *samples, "samples per instance");
    eval_cmd->add_option("--k", *k_csv, "comma-separated pass@k list");
    eval_cmd->add_option("--out", *out_dir, "report directory")->required();
    eval_cmd->callback([=, &action, &json_output, &global] {
      action = [=, &json_output, &global] {
        std::string tmpl =
            template_path->empty() ? global.template_path : *template_path;
        return run_eval(*dataset_path, *learner_path, tmpl, *template_style, *samples,
                        *k_csv, *out_dir, json_output);
      };
    });
  }

  // curriculum ----------------------------------------------------------------
  auto* curriculum_cmd = app.add_subcommand("curriculum", "two-loop curriculum runs");
  curriculum_cmd->require_subcommand(1);
  {
    auto* run_cmd = curriculum_cmd->add_subcommand("run", "run the curriculum state machine");
    auto config_path = std::make_shared<std::string>();
    auto preset = std::make_shared<std::string>();
    auto learner_path = std::make_shared<std::string>();
    auto out_dir = std::make_shared<std::string>();
    auto seed_opt = std::make_shared<std::uint64_t>(0);
    auto resume = std::make_shared<bool>(false);
    run_cmd->add_option("--config", *config_path, "curriculum config JSON");
    run_cmd->add_option("--preset", *preset,
                        "named preset (1.5b, 7b, ablation-single-3-5-13, ...)");
    run_cmd->add_option("--learner", *learner_path, "learner spec JSON");
    run_cmd->add_option("--seed", *seed_opt, "seed override for --preset");
    run_cmd->add_option("--out", *out_dir, "state/history/batches directory")->required();
    run_cmd->add_flag("--resume", *resume, "continue from state.json in --out");
    run_cmd->callback([=, &action, &json_output, &global] {
      action = [=, &json_output, &global] {
        std::uint64_t seed = run_cmd->count("--seed") ? *seed_opt : global.seed;
        std::string learner =
            learner_path->empty() ? global.learner_path : *learner_path;
        if (!*resume && learner.empty())
          throw ContractError("curriculum run needs --learner (or a global config learner)");
        return run_curriculum_cmd(*config_path, *preset, seed, learner, *out_dir, *resume,
                                  json_output);
      };
    });
  }

  // report ---------------------------------------------------------------------
  auto* report_cmd = app.add_subcommand("report", "post-hoc analysis of eval records");
  report_cmd->require_subcommand(1);
  {
    auto* fit_cmd = report_cmd->add_subcommand(
        "fit", "OLS of per-level pass@k against difficulty");
    auto in_path = std::make_shared<std::string>();
    auto k = std::make_shared<int>(3);
    auto csv_path = std::make_shared<std::string>();
    fit_cmd->add_option("--in", *in_path, "records.jsonl from eval")->required();
    fit_cmd->add_option("--pass-k", *k, "which pass@k to regress (default 3)");
    fit_cmd->add_option("--csv", *csv_path, "write (difficulty, pass@k) points CSV here");
    fit_cmd->callback([=, &action] {
      action = [=] { return run_report_fit(*in_path, *k, *csv_path); };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (!global_config_path.empty()) global = load_global_config(global_config_path);
    return action();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
