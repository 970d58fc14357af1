#include "satgen/learner.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "satgen/errors.hpp"
#include "satgen/rng.hpp"

namespace satgen {

using ordered_json = nlohmann::ordered_json;
using json = nlohmann::json;

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// ---------------------------------------------------------------------------
// LearnerSpec JSON form

LearnerSpec LearnerSpec::from_json(const std::string& json_text) {
  json spec;
  try {
    spec = json::parse(json_text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("learner spec: invalid JSON: ") + e.what());
  }
  LearnerSpec learner;
  std::string kind = spec.value("kind", "");
  if (kind == "mock") {
    learner.kind = Kind::mock;
    const json& mock = spec.value("mock", json::object());
    learner.mock.skill = mock.value("skill", 0.0);
    learner.mock.slope = mock.value("slope", 1.0);
    learner.mock.train_gain = mock.value("train_gain", 0.0);
    learner.mock.rng_seed = mock.value("rng_seed", std::uint64_t{0});
  } else if (kind == "http") {
    learner.kind = Kind::http;
    if (!spec.contains("http")) throw ParseError("learner spec: missing 'http' object");
    const json& http = spec.at("http");
    learner.http.base_url = http.value("base_url", "");
    learner.http.model_name = http.value("model_name", "");
    learner.http.api_key_env_var = http.value("api_key_env_var", "OPENAI_API_KEY");
    learner.http.temperature = http.value("temperature", 0.6);
    learner.http.top_p = http.value("top_p", 0.95);
    learner.http.max_tokens = http.value("max_tokens", 32768);
    learner.http.max_concurrency = http.value("max_concurrency", 4);
    if (http.contains("retry")) {
      learner.http.retry.attempts = http.at("retry").value("attempts", 3);
      learner.http.retry.backoff_seconds = http.at("retry").value("backoff_seconds", 0.5);
    }
    if (learner.http.base_url.empty())
      throw ParseError("learner spec: http.base_url is required");
  } else {
    throw ParseError("learner spec: kind must be 'mock' or 'http'");
  }
  if (learner.http.max_concurrency < 1)
    throw ParseError("learner spec: max_concurrency must be >= 1");
  if (learner.http.temperature < 0.0)
    throw ParseError("learner spec: temperature must be >= 0");
  if (learner.http.retry.attempts < 1)
    throw ParseError("learner spec: retry.attempts must be >= 1");
  return learner;
}

LearnerSpec LearnerSpec::from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open learner spec '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_json(buffer.str());
}

std::string LearnerSpec::to_json() const {
  ordered_json spec;
  if (kind == Kind::mock) {
    spec["kind"] = "mock";
    spec["mock"] = {{"skill", mock.skill},
                    {"slope", mock.slope},
                    {"train_gain", mock.train_gain},
                    {"rng_seed", mock.rng_seed}};
  } else {
    spec["kind"] = "http";
    spec["http"] = {{"base_url", http.base_url},
                    {"model_name", http.model_name},
                    {"api_key_env_var", http.api_key_env_var},
                    {"temperature", http.temperature},
                    {"top_p", http.top_p},
                    {"max_tokens", http.max_tokens},
                    {"max_concurrency", http.max_concurrency},
                    {"retry",
                     {{"attempts", http.retry.attempts},
                      {"backoff_seconds", http.retry.backoff_seconds}}}};
  }
  return spec.dump();
}

// ---------------------------------------------------------------------------
// Prompt templates

namespace {

constexpr std::string_view kFormulaPlaceholder = "{formula_text}";
constexpr std::string_view kVarCountPlaceholder = "{k}";

const char* kBuiltinTemplate =
    "Solve the following boolean satisfiability problem over {k} variables "
    "x1 through x{k}.\n"
    "\n"
    "Formula (conjunctive normal form):\n"
    "{formula_text}\n"
    "\n"
    "Find an assignment of true/false values that satisfies every clause.\n"
    "Answer with a binary string of length {k}, where character i gives the "
    "value of x_i (1 = true, 0 = false), wrapped in \\boxed{}.\n";

void replace_all(std::string& text, std::string_view token, const std::string& value) {
  std::size_t pos = 0;
  while ((pos = text.find(token, pos)) != std::string::npos) {
    text.replace(pos, token.size(), value);
    pos += value.size();
  }
}

}  // namespace

PromptTemplate::PromptTemplate(std::string text, Style style)
    : text_(std::move(text)), style_(style) {
  if (text_.find(kFormulaPlaceholder) == std::string::npos ||
      text_.find(kVarCountPlaceholder) == std::string::npos)
    throw ContractError("prompt template must contain {formula_text} and {k}");
}

PromptTemplate PromptTemplate::builtin() { return PromptTemplate(kBuiltinTemplate); }

PromptTemplate PromptTemplate::from_file(const std::string& path, Style style) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open template '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return PromptTemplate(buffer.str(), style);
}

std::string format_symbolic(const CnfFormula& formula) {
  std::string out;
  bool first_clause = true;
  for (const Clause& clause : formula.clauses()) {
    if (!first_clause) out += " ^ ";
    first_clause = false;
    out.push_back('(');
    bool first_lit = true;
    for (const Literal& lit : clause.literals) {
      if (!first_lit) out += " v ";
      first_lit = false;
      if (lit.negated) out.push_back('!');
      out += "x" + std::to_string(lit.var + 1);
    }
    out.push_back(')');
  }
  return out;
}

std::string PromptTemplate::render(const SatInstance& instance) const {
  std::string formula_text;
  if (style_ == Style::symbolic) {
    formula_text = format_symbolic(instance.formula);
  } else {
    formula_text = "p cnf " + std::to_string(instance.formula.num_vars()) + " " +
                   std::to_string(instance.formula.num_clauses()) + "\n";
    for (const Clause& clause : instance.formula.clauses()) {
      for (const Literal& lit : clause.literals)
        formula_text += std::to_string(lit.to_dimacs()) + " ";
      formula_text += "0\n";
    }
  }
  std::string out = text_;
  replace_all(out, kFormulaPlaceholder, formula_text);
  replace_all(out, kVarCountPlaceholder, std::to_string(instance.params.num_vars));
  return out;
}

// ---------------------------------------------------------------------------
// Mock completion

namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string mock_sample(const MockLearner& mock, const SatInstance& instance,
                        int sample_index) {
  Rng rng(derive_seed(mock.rng_seed, kStreamMock, fnv1a(instance.id),
                      static_cast<std::uint64_t>(sample_index)));
  double success_p = sigmoid(mock.slope * (mock.skill - instance.difficulty));
  int k = instance.params.num_vars;
  if (rng.bernoulli(success_p))
    return "Checked every clause against the assignment; all satisfied.\n\\boxed{" +
           instance.hidden_solution.to_string() + "}";
  // Failure: a boxed corruption of the hidden solution (1..k flipped bits)
  // that genuinely fails verification, so the sample scores 0, never 1 or -1.
  // A corruption can satisfy by luck (instances may have many models), so
  // redraw until it does not. Every fixed-width formula excludes at least one
  // assignment, but cap the search and fall back to an over-length answer
  // (still boxed, still reward 0) for pathologically dense model spaces.
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::string bits = instance.hidden_solution.to_string();
    int flips = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(k)));
    for (int pos : rng.sample_distinct(k, flips))
      bits[static_cast<std::size_t>(pos)] = bits[static_cast<std::size_t>(pos)] == '0' ? '1' : '0';
    if (!verify(instance.formula, Assignment::from_string(bits)))
      return "Best candidate found after search.\n\\boxed{" + bits + "}";
  }
  return "Best candidate found after search.\n\\boxed{" + std::string(k + 1, '0') + "}";
}

}  // namespace

// ---------------------------------------------------------------------------
// HTTP completion

std::string build_chat_request(const HttpLearner& http, const std::string& prompt_text,
                               int samples) {
  ordered_json body;
  body["model"] = http.model_name;
  body["messages"] = ordered_json::array({ordered_json{{"role", "user"}, {"content", prompt_text}}});
  body["temperature"] = http.temperature;
  body["top_p"] = http.top_p;
  body["n"] = samples;
  body["max_tokens"] = http.max_tokens;
  return body.dump();
}

namespace {

struct UrlParts {
  std::string host;  // scheme://host[:port]
  std::string path_prefix;
};

UrlParts split_url(const std::string& base_url) {
  UrlParts parts;
  std::size_t scheme = base_url.find("://");
  std::size_t path_start =
      base_url.find('/', scheme == std::string::npos ? 0 : scheme + 3);
  if (path_start == std::string::npos) {
    parts.host = base_url;
  } else {
    parts.host = base_url.substr(0, path_start);
    parts.path_prefix = base_url.substr(path_start);
  }
  while (!parts.path_prefix.empty() && parts.path_prefix.back() == '/')
    parts.path_prefix.pop_back();
  return parts;
}

/// Extracts choice texts from a chat-completions response.
std::vector<std::string> parse_choices(const std::string& body) {
  json response = json::parse(body);
  std::vector<std::string> texts;
  for (const auto& choice : response.at("choices")) {
    const json& message = choice.at("message");
    texts.push_back(message.value("content", ""));
  }
  return texts;
}

/// One POST with retry/backoff. Returns choice texts or throws Error after
/// the last attempt.
std::vector<std::string> post_chat(const HttpLearner& http, const std::string& request_body) {
  UrlParts url = split_url(http.base_url);
  std::string error;
  double backoff = http.retry.backoff_seconds;
  for (int attempt = 0; attempt < http.retry.attempts; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(std::chrono::duration<double>(backoff));
      backoff *= 2.0;
    }
    httplib::Client client(url.host);
    client.set_connection_timeout(30);
    client.set_read_timeout(600);
    httplib::Headers headers;
    if (const char* key = std::getenv(http.api_key_env_var.c_str()); key && *key)
      headers.emplace("Authorization", std::string("Bearer ") + key);
    auto result = client.Post(url.path_prefix + "/v1/chat/completions", headers,
                              request_body, "application/json");
    if (!result) {
      error = "transport error: " + httplib::to_string(result.error());
      continue;
    }
    if (result->status == 429 || result->status >= 500) {
      error = "HTTP " + std::to_string(result->status);
      continue;  // transient; retry
    }
    if (result->status != 200)
      throw Error("chat endpoint returned HTTP " + std::to_string(result->status) + ": " +
                  result->body);
    try {
      return parse_choices(result->body);
    } catch (const std::exception& e) {
      throw Error(std::string("malformed chat response: ") + e.what());
    }
  }
  throw Error("chat endpoint failed after " + std::to_string(http.retry.attempts) +
              " attempts: " + error);
}

std::vector<SampleResult> http_complete(const HttpLearner& http, const std::string& prompt_text,
                                        int samples) {
  std::vector<SampleResult> results;
  results.reserve(static_cast<std::size_t>(samples));
  try {
    std::vector<std::string> texts = post_chat(http, build_chat_request(http, prompt_text, samples));
    for (const std::string& text : texts) {
      if (static_cast<int>(results.size()) >= samples) break;
      results.push_back(SampleResult{text, false, ""});
    }
    // Endpoint ignored n: top up one sample at a time.
    while (static_cast<int>(results.size()) < samples) {
      std::vector<std::string> extra = post_chat(http, build_chat_request(http, prompt_text, 1));
      if (extra.empty()) throw Error("chat endpoint returned no choices");
      results.push_back(SampleResult{extra.front(), false, ""});
    }
  } catch (const std::exception& e) {
    // Per-sample failure markers; the caller keeps going.
    while (static_cast<int>(results.size()) < samples)
      results.push_back(SampleResult{"", true, e.what()});
  }
  return results;
}

}  // namespace

std::vector<SampleResult> complete(const LearnerSpec& learner, const SatInstance& instance,
                                   const PromptTemplate& prompt, int samples) {
  if (samples < 1) throw ContractError("complete: samples must be >= 1");
  std::vector<SampleResult> results;
  results.reserve(static_cast<std::size_t>(samples));
  if (learner.kind == LearnerSpec::Kind::mock) {
    for (int s = 0; s < samples; ++s)
      results.push_back(SampleResult{mock_sample(learner.mock, instance, s), false, ""});
    return results;
  }
  return http_complete(learner.http, prompt.render(instance), samples);
}

void export_training_batch(std::span<const SatInstance> batch, const PromptTemplate& prompt,
                           const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  for (const SatInstance& instance : batch) {
    ordered_json record;
    record["id"] = instance.id;
    record["prompt"] = prompt.render(instance);
    record["n"] = instance.params.clause_width;
    record["k"] = instance.params.num_vars;
    record["l"] = instance.params.num_clauses;
    ordered_json clauses = ordered_json::array();
    for (const Clause& clause : instance.formula.clauses()) {
      ordered_json lits = ordered_json::array();
      for (const Literal& lit : clause.literals) lits.push_back(lit.to_dimacs());
      clauses.push_back(std::move(lits));
    }
    record["clauses"] = std::move(clauses);
    record["solution"] = instance.hidden_solution.to_string();
    record["difficulty"] = instance.difficulty;
    out << record.dump() << "\n";
  }
  if (!out) throw IoError("write failed for '" + path + "'");
}

LearnerSpec train(const LearnerSpec& learner, std::span<const SatInstance> batch,
                  const PromptTemplate& prompt, const std::string& export_path) {
  if (!export_path.empty()) export_training_batch(batch, prompt, export_path);
  LearnerSpec updated = learner;
  if (learner.kind == LearnerSpec::Kind::mock) updated.mock.skill += learner.mock.train_gain;
  return updated;
}

}  // namespace satgen
