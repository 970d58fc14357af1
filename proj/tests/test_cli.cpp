// End-to-end checks of the satgen binary: every subcommand, exit-code
// conventions, and stdout/stderr separation. The binary path is injected by
// the build as SATGEN_CLI_PATH.

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#ifndef SATGEN_CLI_PATH
#error "SATGEN_CLI_PATH must point at the satgen binary"
#endif

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

fs::path work_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "satgen_cli_tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

RunResult run_cli(const std::string& args) {
  fs::path out_file = work_dir() / "stdout.txt";
  fs::path err_file = work_dir() / "stderr.txt";
  std::string command = std::string(SATGEN_CLI_PATH) + " " + args + " >" +
                        out_file.string() + " 2>" + err_file.string();
  int status = std::system(command.c_str());
  RunResult result;
  result.exit_code = WEXITSTATUS(status);
  result.out = slurp(out_file);
  result.err = slurp(err_file);
  return result;
}

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << contents;
}

}  // namespace

TEST_CASE("estimate prints the difficulty to four decimals") {
  RunResult result = run_cli("estimate --n 3 --k 5 --l 13");
  CHECK(result.exit_code == 0);
  CHECK(result.out == "8.3895\n");

  RunResult json_result = run_cli("estimate --n 3 --k 5 --l 13 --json");
  CHECK(json_result.exit_code == 0);
  json payload = json::parse(json_result.out);
  CHECK(payload.at("score").get<double>() == doctest::Approx(8.389474197836213));
  CHECK(payload.at("metric") == "composite");

  RunResult metric_result =
      run_cli("estimate --n 3 --k 5 --l 5 --metric log_ratio --json");
  CHECK(json::parse(metric_result.out).at("score").get<double>() ==
        doctest::Approx(1.836501).epsilon(1e-6));
}

TEST_CASE("usage errors exit 1 with help on stderr") {
  RunResult result = run_cli("estimate --n 3 --k 5 --l 13 --bogus-flag 1");
  CHECK(result.exit_code == 1);
  CHECK(result.out.empty());
  CHECK_FALSE(result.err.empty());
  CHECK(run_cli("no-such-command").exit_code == 1);
}

TEST_CASE("generate writes JSONL and honors determinism") {
  fs::path out_a = work_dir() / "gen_a.jsonl";
  fs::path out_b = work_dir() / "gen_b.jsonl";
  RunResult a = run_cli("generate --n 3 --k 5 --l 5 --m 10 --seed 42 --out " + out_a.string());
  CHECK(a.exit_code == 0);
  RunResult b = run_cli("generate --n 3 --k 5 --l 5 --m 10 --seed 42 --out " + out_b.string());
  CHECK(b.exit_code == 0);
  std::string contents = slurp(out_a);
  CHECK(contents == slurp(out_b));
  CHECK(std::count(contents.begin(), contents.end(), '\n') == 10);
  json first = json::parse(contents.substr(0, contents.find('\n')));
  CHECK(first.at("n") == 3);
  CHECK(first.at("solution").get<std::string>().size() == 5);
}

TEST_CASE("generate capacity failure exits 2") {
  RunResult result = run_cli("generate --n 3 --k 5 --l 80 --m 1 --out " +
                             (work_dir() / "never.jsonl").string());
  CHECK(result.exit_code == 2);
  CHECK(result.err.find("capacity") != std::string::npos);
}

TEST_CASE("generate can emit a DIMACS directory that solves round-trip") {
  fs::path out = work_dir() / "gen_dimacs.jsonl";
  fs::path dimacs_dir = work_dir() / "cnf";
  RunResult result = run_cli("generate --n 3 --k 5 --l 8 --m 2 --seed 7 --out " +
                             out.string() + " --dimacs-dir " + dimacs_dir.string());
  CHECK(result.exit_code == 0);
  int cnf_files = 0;
  for (const auto& entry : fs::directory_iterator(dimacs_dir)) {
    ++cnf_files;
    RunResult solve_result = run_cli("solve --in " + entry.path().string());
    CHECK(solve_result.exit_code == 10);  // constructed instances are satisfiable
  }
  CHECK(cnf_files == 2);
}

TEST_CASE("solve exit codes follow the sat/unsat convention") {
  fs::path unsat_path = work_dir() / "unsat.cnf";
  write_file(unsat_path, "p cnf 1 2\n1 0\n-1 0\n");
  RunResult unsat_result = run_cli("solve --in " + unsat_path.string());
  CHECK(unsat_result.exit_code == 20);
  CHECK(json::parse(unsat_result.out).at("status") == "unsat");

  fs::path sat_path = work_dir() / "sat.cnf";
  write_file(sat_path, "p cnf 2 1\n1 2 0\n");
  RunResult sat_result = run_cli("solve --in " + sat_path.string() + " --cdcl --json");
  CHECK(sat_result.exit_code == 10);
  json payload = json::parse(sat_result.out);
  CHECK(payload.at("status") == "sat");
  CHECK(payload.at("model_valid") == true);
}

TEST_CASE("solve enumerates models on request") {
  fs::path sat_path = work_dir() / "enum.cnf";
  write_file(sat_path, "p cnf 2 1\n1 2 0\n");
  RunResult result = run_cli("solve --in " + sat_path.string() + " --enumerate 4 --json");
  CHECK(result.exit_code == 10);
  CHECK(json::parse(result.out).at("models").size() == 3);
}

TEST_CASE("verify and verify-answer") {
  fs::path instance_path = work_dir() / "one.jsonl";
  RunResult gen =
      run_cli("generate --n 3 --k 5 --l 5 --m 1 --seed 9 --out " + instance_path.string());
  REQUIRE(gen.exit_code == 0);
  json record = json::parse(slurp(instance_path));
  std::string solution = record.at("solution").get<std::string>();

  RunResult hidden = run_cli("verify --in " + instance_path.string() + " --json");
  CHECK(hidden.exit_code == 0);
  CHECK(json::parse(hidden.out).at("satisfied") == true);

  fs::path answer_path = work_dir() / "answer.txt";
  write_file(answer_path, "after much thought: \\boxed{" + solution + "}");
  RunResult scored = run_cli("verify-answer --instance " + instance_path.string() +
                             " --text " + answer_path.string());
  CHECK(scored.exit_code == 0);
  json payload = json::parse(scored.out);
  CHECK(payload.at("status") == "parsed");
  CHECK(payload.at("reward") == 1);

  write_file(answer_path, "no box at all");
  json boxless = json::parse(
      run_cli("verify-answer --instance " + instance_path.string() + " --text " +
              answer_path.string())
          .out);
  CHECK(boxless.at("reward") == -1);
  CHECK(boxless.at("status") == "missing_box");
}

TEST_CASE("dataset build and check round-trip") {
  fs::path manifest_path = work_dir() / "manifest.json";
  write_file(manifest_path, R"({
    "train": [{"n": 3, "k": 5, "l": 5, "count": 6}],
    "test_same": [{"n": 3, "k": 5, "l": 8, "count": 3}],
    "test_hard": [{"n": 3, "k": 5, "l": 20, "count": 4}]
  })");
  fs::path dataset_dir = work_dir() / "dataset";
  RunResult build = run_cli("dataset build --manifest " + manifest_path.string() +
                            " --seed 11 --out " + dataset_dir.string() + " --json");
  CHECK(build.exit_code == 0);
  json payload = json::parse(build.out);
  CHECK(payload.at("train") == 6);
  CHECK(payload.at("test_hard") == 4);

  RunResult check = run_cli("dataset check " + dataset_dir.string() + " --json");
  CHECK(check.exit_code == 0);
  CHECK(json::parse(check.out).at("ok") == true);

  // Tamper, then the check must fail with exit 2.
  std::string train = slurp(dataset_dir / "train.jsonl");
  write_file(dataset_dir / "train.jsonl", train + "\n");
  RunResult tampered = run_cli("dataset check " + dataset_dir.string() + " --json");
  CHECK(tampered.exit_code == 2);
  CHECK(json::parse(tampered.out).at("ok") == false);
}

TEST_CASE("eval writes reports and report fit consumes them") {
  fs::path dataset_path = work_dir() / "eval_dataset.jsonl";
  // Two difficulty levels in one dataset file.
  RunResult easy =
      run_cli("generate --n 3 --k 5 --l 5 --m 6 --seed 21 --out " + dataset_path.string());
  REQUIRE(easy.exit_code == 0);
  fs::path harder_path = work_dir() / "eval_harder.jsonl";
  RunResult harder =
      run_cli("generate --n 3 --k 5 --l 20 --m 6 --seed 22 --out " + harder_path.string());
  REQUIRE(harder.exit_code == 0);
  std::ofstream(dataset_path, std::ios::app | std::ios::binary) << slurp(harder_path);

  fs::path learner_path = work_dir() / "learner.json";
  write_file(learner_path, R"({
    "kind": "mock",
    "mock": {"skill": 7.2, "slope": 1.0, "train_gain": 0.0, "rng_seed": 4}
  })");

  fs::path eval_dir = work_dir() / "eval_out";
  RunResult eval_result = run_cli("eval --dataset " + dataset_path.string() + " --learner " +
                                  learner_path.string() + " --samples 12 --k 1,3,5,7,10 --out " +
                                  eval_dir.string() + " --json");
  CHECK(eval_result.exit_code == 0);
  json payload = json::parse(eval_result.out);
  CHECK(payload.at("records") == 12);
  CHECK(payload.at("levels").size() == 2);
  CHECK(fs::exists(eval_dir / "records.jsonl"));
  CHECK(fs::exists(eval_dir / "report.md"));
  CHECK(fs::exists(eval_dir / "report.csv"));
  CHECK(fs::exists(eval_dir / "points.csv"));

  fs::path points_path = work_dir() / "fit_points.csv";
  RunResult fit = run_cli("report fit --in " + (eval_dir / "records.jsonl").string() +
                          " --csv " + points_path.string());
  CHECK(fit.exit_code == 0);
  json fit_payload = json::parse(fit.out);
  CHECK(fit_payload.at("point_count") == 2);
  // Easier level passes more often, so the slope against difficulty is <= 0.
  CHECK(fit_payload.at("slope").get<double>() <= 0.0);
  CHECK(slurp(points_path).rfind("difficulty,pass_rate", 0) == 0);
}

TEST_CASE("curriculum run with a preset and resume") {
  fs::path learner_path = work_dir() / "strong_learner.json";
  write_file(learner_path, R"({
    "kind": "mock",
    "mock": {"skill": 1e9, "slope": 1.0, "train_gain": 0.0, "rng_seed": 2}
  })");
  fs::path run_dir = work_dir() / "curriculum_out";
  RunResult result = run_cli("curriculum run --preset 1.5b --seed 3 --learner " +
                             learner_path.string() + " --out " + run_dir.string() + " --json");
  CHECK(result.exit_code == 0);
  json payload = json::parse(result.out);
  CHECK(payload.at("final").at("l") == 7);  // two advancements from l=5
  CHECK(payload.at("advancements") == 2);
  CHECK(payload.at("training_steps") == 0);
  CHECK(fs::exists(run_dir / "state.json"));
  CHECK(fs::exists(run_dir / "history.jsonl"));

  // Resuming a finished run is a no-op with the same final state.
  RunResult resumed =
      run_cli("curriculum run --resume --out " + run_dir.string() + " --json");
  CHECK(resumed.exit_code == 0);
  CHECK(json::parse(resumed.out).at("final").at("l") == 7);
}

TEST_CASE("global config supplies the default seed") {
  fs::path config_path = work_dir() / "global.json";
  write_file(config_path, R"({"seed": 42, "log_level": "info"})");
  fs::path out_a = work_dir() / "global_a.jsonl";
  RunResult result = run_cli("--config " + config_path.string() +
                             " generate --n 3 --k 5 --l 5 --m 3 --out " + out_a.string());
  CHECK(result.exit_code == 0);
  fs::path out_b = work_dir() / "global_b.jsonl";
  RunResult explicit_seed =
      run_cli("generate --n 3 --k 5 --l 5 --m 3 --seed 42 --out " + out_b.string());
  CHECK(explicit_seed.exit_code == 0);
  CHECK(slurp(out_a) == slurp(out_b));
}

TEST_CASE("stdout carries data only") {
  fs::path out = work_dir() / "sep.jsonl";
  RunResult result =
      run_cli("generate --n 3 --k 5 --l 5 --m 2 --seed 1 --out " + out.string() + " --json");
  CHECK(result.exit_code == 0);
  CHECK_NOTHROW(json::parse(result.out));  // pure JSON payload
}
