#include "satgen/answer.hpp"

#include <cctype>
#include <string>

#include "satgen/errors.hpp"

namespace satgen {

namespace {

constexpr std::string_view kBoxPrefix = "\\boxed{";

/// Finds the last complete \boxed{...}; returns [start, end) of the whole
/// token and the inner content range, or nothing.
struct BoxMatch {
  std::size_t start, end;            // whole \boxed{...}
  std::size_t inner_begin, inner_end;  // content between braces
};

std::optional<BoxMatch> find_last_box(std::string_view text) {
  std::optional<BoxMatch> last;
  std::size_t pos = 0;
  while ((pos = text.find(kBoxPrefix, pos)) != std::string_view::npos) {
    std::size_t inner = pos + kBoxPrefix.size();
    int depth = 1;
    std::size_t i = inner;
    for (; i < text.size(); ++i) {
      if (text[i] == '{') ++depth;
      else if (text[i] == '}' && --depth == 0) break;
    }
    if (i < text.size()) {
      last = BoxMatch{pos, i + 1, inner, i};
      pos = i + 1;
    } else {
      // Unclosed box: not an occurrence; nothing later can close either.
      break;
    }
  }
  return last;
}

}  // namespace

ParsedAnswer extract_answer(std::string_view text, int expected_vars) {
  if (expected_vars < 1) throw ContractError("extract_answer: expected_vars must be >= 1");

  auto box = find_last_box(text);
  if (!box) return ParsedAnswer{ParsedAnswer::Status::missing_box, std::nullopt, std::nullopt};

  ParsedAnswer answer;
  answer.box_span = {box->start, box->end};

  std::string content;
  bool binary = true;
  for (std::size_t i = box->inner_begin; i < box->inner_end; ++i) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c != '0' && c != '1') binary = false;
    content.push_back(c);
  }
  if (!binary || static_cast<int>(content.size()) != expected_vars) {
    answer.status = ParsedAnswer::Status::unparseable_content;
    return answer;
  }
  answer.status = ParsedAnswer::Status::parsed;
  answer.assignment = Assignment::from_string(content);
  return answer;
}

ScoredAnswer score_answer(std::string_view text, const SatInstance& instance) {
  ScoredAnswer scored;
  scored.parsed = extract_answer(text, instance.params.num_vars);
  switch (scored.parsed.status) {
    case ParsedAnswer::Status::missing_box:
      scored.reward = -1;
      break;
    case ParsedAnswer::Status::unparseable_content:
      scored.reward = 0;
      break;
    case ParsedAnswer::Status::parsed:
      scored.reward = verify(instance.formula, *scored.parsed.assignment) ? 1 : 0;
      break;
  }
  return scored;
}

int reward(std::string_view text, const SatInstance& instance) {
  return score_answer(text, instance).reward;
}

}  // namespace satgen
