#include "satgen/difficulty.hpp"

#include <algorithm>
#include <cmath>

#include "satgen/errors.hpp"

namespace satgen {

namespace {

void check_params(const SatParams& p) {
  if (p.clause_width < 1 || p.num_vars < p.clause_width || p.num_clauses < 1)
    throw ContractError("difficulty: need 1 <= clause_width <= num_vars and num_clauses >= 1");
}

}  // namespace

double difficulty_score(const SatParams& p) {
  check_params(p);
  double n = p.clause_width, k = p.num_vars, l = p.num_clauses;
  return std::log2(k) + 2.0 * std::log2(l) - n + k / n;
}

double clause_variable_ratio(const SatParams& p) {
  check_params(p);
  return static_cast<double>(p.num_clauses) / static_cast<double>(p.num_vars);
}

MetricKind MetricKind::structure_weighted(double alpha, double beta) {
  if (alpha <= 0.0 || beta <= 0.0)
    throw ContractError("structure_weighted: alpha and beta must be > 0");
  return {Tag::structure_weighted, alpha, beta};
}

MetricKind MetricKind::from_name(const std::string& name, double alpha, double beta) {
  if (name == "composite") return composite();
  if (name == "sparsity_only") return sparsity_only();
  if (name == "structure_weighted") return structure_weighted(alpha, beta);
  if (name == "expected_solution_count") return expected_solution_count();
  if (name == "log_ratio") return log_ratio();
  throw ContractError("unknown metric '" + name +
                      "' (expected composite|sparsity_only|structure_weighted|"
                      "expected_solution_count|log_ratio)");
}

std::string MetricKind::name() const {
  switch (tag) {
    case Tag::composite: return "composite";
    case Tag::sparsity_only: return "sparsity_only";
    case Tag::structure_weighted: return "structure_weighted";
    case Tag::expected_solution_count: return "expected_solution_count";
    case Tag::log_ratio: return "log_ratio";
  }
  throw ContractError("MetricKind: unknown tag");
}

double metric_score(const MetricKind& kind, const SatParams& p) {
  check_params(p);
  double n = p.clause_width, k = p.num_vars, l = p.num_clauses;
  switch (kind.tag) {
    case MetricKind::Tag::composite:
      return difficulty_score(p);
    case MetricKind::Tag::sparsity_only:
      return std::log2(k) + std::log2(l) - n;
    case MetricKind::Tag::structure_weighted:
      return kind.alpha * (k / n) + kind.beta * std::log2(l);
    case MetricKind::Tag::expected_solution_count:
      return -k - l * std::log2(1.0 - 1.0 / std::exp2(n));
    case MetricKind::Tag::log_ratio:
      return std::log2(k * l) - std::log2(std::exp2(n) - 1.0);
  }
  throw ContractError("metric_score: unknown tag");
}

RegressionFit fit_linear(std::span<const std::pair<double, double>> points) {
  if (points.size() < 2)
    throw ContractError("fit_linear: need at least 2 points, got " +
                        std::to_string(points.size()));
  double count = static_cast<double>(points.size());
  double mean_x = 0.0, mean_y = 0.0;
  for (const auto& [x, y] : points) {
    mean_x += x;
    mean_y += y;
  }
  mean_x /= count;
  mean_y /= count;

  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : points) {
    sxx += (x - mean_x) * (x - mean_x);
    sxy += (x - mean_x) * (y - mean_y);
  }
  if (sxx == 0.0)
    throw ContractError("fit_linear: x values are all equal (degenerate variance)");

  RegressionFit fit;
  fit.point_count = static_cast<int>(points.size());
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;

  double ss_res = 0.0, ss_tot = 0.0;
  for (const auto& [x, y] : points) {
    double predicted = fit.slope * x + fit.intercept;
    ss_res += (y - predicted) * (y - predicted);
    ss_tot += (y - mean_y) * (y - mean_y);
  }
  // Constant y: the fitted line reproduces it exactly, so call it perfect.
  fit.r_squared = ss_tot == 0.0 ? 1.0 : std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0);
  return fit;
}

}  // namespace satgen
