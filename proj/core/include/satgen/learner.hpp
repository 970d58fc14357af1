#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "satgen/cnf.hpp"

namespace satgen {

/// Scripted learner for deterministic simulation. Per sample it succeeds
/// with probability sigmoid(slope * (skill - D(instance))); success emits the
/// boxed hidden solution, failure a boxed corruption of it (1..k flipped
/// bits) that is rejected-sampled to fail verification, so failures score
/// exactly 0 and the reward-success rate equals the sigmoid. Draws are keyed
/// by (rng_seed, instance id, sample index), so transcripts are reproducible
/// and order-independent.
struct MockLearner {
  double skill = 0.0;        // theta
  double slope = 1.0;        // a
  double train_gain = 0.0;   // delta added to skill per training call
  std::uint64_t rng_seed = 0;
};

struct RetryPolicy {
  int attempts = 3;
  double backoff_seconds = 0.5;  // doubles after every failed attempt
};

/// OpenAI-compatible chat-completions endpoint. The API key is read from the
/// environment variable named here, never from configuration files.
struct HttpLearner {
  std::string base_url;
  std::string model_name;
  std::string api_key_env_var = "OPENAI_API_KEY";
  double temperature = 0.6;
  double top_p = 0.95;
  int max_tokens = 32768;
  int max_concurrency = 4;
  RetryPolicy retry;
};

struct LearnerSpec {
  enum class Kind { mock, http };
  Kind kind = Kind::mock;
  MockLearner mock;
  HttpLearner http;

  static LearnerSpec from_json(const std::string& json_text);
  static LearnerSpec from_file(const std::string& path);
  std::string to_json() const;
};

/// Prompt template with {formula_text} and {k} placeholders (both required).
class PromptTemplate {
public:
  enum class Style { symbolic, dimacs };

  PromptTemplate(std::string text, Style style = Style::symbolic);
  static PromptTemplate builtin();
  static PromptTemplate from_file(const std::string& path, Style style = Style::symbolic);

  const std::string& text() const { return text_; }
  Style style() const { return style_; }

  std::string render(const SatInstance& instance) const;

private:
  std::string text_;
  Style style_;
};

/// "(x1 v !x2 v x3) ^ ..." rendering used by the symbolic template style.
std::string format_symbolic(const CnfFormula& formula);

/// One sampled completion. failed is set when the HTTP transport gave up
/// after retries; such samples carry the error text instead of a completion
/// and score -1 downstream.
struct SampleResult {
  std::string text;
  bool failed = false;
  std::string error;
};

/// Draws `samples` completions for one instance. Mock learners are pure and
/// never fail. HTTP learners issue one request with n = samples and top up
/// with single-sample requests if the endpoint returns fewer choices;
/// transient failures are retried with exponential backoff and surface as
/// per-sample failures, never exceptions.
std::vector<SampleResult> complete(const LearnerSpec& learner, const SatInstance& instance,
                                   const PromptTemplate& prompt, int samples);

/// Writes the batch as JSONL training records:
///   {"id","prompt","n","k","l","clauses","solution","difficulty"}
void export_training_batch(std::span<const SatInstance> batch, const PromptTemplate& prompt,
                           const std::string& path);

/// One training step. Mock learners return a copy with skill += train_gain.
/// HTTP learners are read-only: the batch is exported for an external RL
/// framework and the spec is returned unchanged. In both cases the batch is
/// written to export_path when it is non-empty.
LearnerSpec train(const LearnerSpec& learner, std::span<const SatInstance> batch,
                  const PromptTemplate& prompt, const std::string& export_path = "");

/// Request body for POST /v1/chat/completions: {"model","messages":
/// [{"role","content"}],"temperature","top_p","n","max_tokens"}.
std::string build_chat_request(const HttpLearner& http, const std::string& prompt_text,
                               int samples);

double sigmoid(double x);

}  // namespace satgen
