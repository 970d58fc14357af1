#include <doctest.h>

#include <string>

#include "satgen/answer.hpp"
#include "satgen/errors.hpp"
#include "satgen/solver.hpp"
#include "test_support.hpp"

using namespace satgen;
using Status = ParsedAnswer::Status;

TEST_CASE("extract_answer basics") {
  ParsedAnswer a = extract_answer("...so the answer is \\boxed{10110}", 5);
  REQUIRE(a.status == Status::parsed);
  CHECK(a.assignment->to_string() == "10110");
  CHECK(a.box_span.has_value());

  CHECK(extract_answer("the assignment is 10110", 5).status == Status::missing_box);
  CHECK(extract_answer("", 5).status == Status::missing_box);
}

TEST_CASE("last box wins") {
  ParsedAnswer a =
      extract_answer("I think \\boxed{00000} ... no wait, \\boxed{10110}", 5);
  REQUIRE(a.status == Status::parsed);
  CHECK(a.assignment->to_string() == "10110");
}

TEST_CASE("whitespace inside braces is stripped, other junk is not") {
  CHECK(extract_answer("\\boxed{1 0\t1 1\n0}", 5).status == Status::parsed);
  CHECK(extract_answer("\\boxed{1 0 1 1 0}", 5).assignment->to_string() == "10110");
  CHECK(extract_answer("\\boxed{1011O}", 5).status == Status::unparseable_content);
  CHECK(extract_answer("\\boxed{10110.}", 5).status == Status::unparseable_content);
  CHECK(extract_answer("\\boxed{101102}", 5).status == Status::unparseable_content);
}

TEST_CASE("wrong length is unparseable, not missing") {
  CHECK(extract_answer("\\boxed{1011}", 5).status == Status::unparseable_content);
  CHECK(extract_answer("\\boxed{101101}", 5).status == Status::unparseable_content);
  CHECK(extract_answer("\\boxed{}", 5).status == Status::unparseable_content);
}

TEST_CASE("brace matching handles nesting and unclosed boxes") {
  // Nested braces stay inside the box; content is then non-binary.
  CHECK(extract_answer("\\boxed{\\text{10110}}", 5).status == Status::unparseable_content);
  // An unclosed box is not an occurrence.
  CHECK(extract_answer("\\boxed{10110", 5).status == Status::missing_box);
  // ...but an earlier complete box still counts.
  ParsedAnswer a = extract_answer("\\boxed{10110} then \\boxed{111", 5);
  REQUIRE(a.status == Status::parsed);
  CHECK(a.assignment->to_string() == "10110");
}

TEST_CASE("box_span covers the whole \\boxed{...} token") {
  std::string text = "xx\\boxed{101}yy";
  ParsedAnswer a = extract_answer(text, 3);
  REQUIRE(a.box_span.has_value());
  CHECK(text.substr(a.box_span->first, a.box_span->second - a.box_span->first) ==
        "\\boxed{101}");
}

TEST_CASE("reward levels") {
  SatInstance instance = test_support::make_test_instance(3, 5, 5, 21);
  std::string bits = instance.hidden_solution.to_string();

  CHECK(reward("no box here", instance) == -1);
  CHECK(reward("\\boxed{banana}", instance) == 0);
  CHECK(reward("thinking... \\boxed{" + bits + "}", instance) == 1);

  // A non-satisfying binary answer scores 0.
  Assignment mutated = instance.hidden_solution;
  for (int v = 0; v < mutated.size(); ++v) mutated.set(v, !mutated.value(v));
  if (!verify(instance.formula, mutated))
    CHECK(reward("\\boxed{" + mutated.to_string() + "}", instance) == 0);
}

TEST_CASE("any satisfying assignment earns the full reward") {
  // Find an instance with at least two models and submit the non-hidden one.
  for (std::uint64_t seed = 1; seed < 50; ++seed) {
    SatInstance instance = test_support::make_test_instance(3, 5, 5, seed);
    std::vector<Assignment> models = enumerate_models(instance.formula, 1u << 5);
    if (models.size() < 2) continue;
    for (const Assignment& model : models) {
      if (model == instance.hidden_solution) continue;
      CHECK(reward("\\boxed{" + model.to_string() + "}", instance) == 1);
      return;
    }
  }
  FAIL("no multi-model instance found in 50 seeds");
}

TEST_CASE("reward ignores everything outside the last box") {
  SatInstance instance = test_support::make_test_instance(3, 5, 8, 33);
  std::string bits = instance.hidden_solution.to_string();
  std::string boxed = "\\boxed{" + bits + "}";
  CHECK(reward(boxed, instance) == 1);
  CHECK(reward("garbage \\boxed{qqq} prefix " + boxed, instance) == 1);
  CHECK(reward(boxed + " suffix with stray } brace", instance) == 1);
  CHECK(reward("\\boxed{" + bits + "} and then \\boxed{00000}",
               instance) == (verify(instance.formula, Assignment::from_string("00000")) ? 1 : 0));
}

TEST_CASE("hidden solution round-trip always scores 1") {
  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    SatInstance instance = test_support::make_test_instance(3, 5, 13, seed);
    CHECK(reward("\\boxed{" + instance.hidden_solution.to_string() + "}", instance) == 1);
  }
}

TEST_CASE("extract_answer contract") {
  CHECK_THROWS_AS(extract_answer("\\boxed{1}", 0), ContractError);
}
