#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>

#include "satgen/cnf.hpp"

namespace satgen {

/// Composite difficulty score of an (n, k, l) parameter triple:
///
///   log2(k) + 2*log2(l) - n + k/n
///
/// the sum of a solution-sparsity term and a structural-complexity term (see
/// metric_score for the pieces). Strictly increasing in l for fixed (n, k).
double difficulty_score(const SatParams& p);

/// Clause-to-variable density l/k. Random 3-SAT has its satisfiability phase
/// transition near 4.26; reported as metadata, not used by the score.
double clause_variable_ratio(const SatParams& p);
inline constexpr double kThreeSatPhaseTransitionRatio = 4.26;

/// Alternative difficulty metrics, one per ablation formula.
struct MetricKind {
  enum class Tag {
    composite,                // difficulty_score itself
    sparsity_only,            // log2(k) + log2(l) - n        (D1, 2^n form)
    structure_weighted,       // alpha*(k/n) + beta*log2(l)   (D2 family)
    expected_solution_count,  // -k - l*log2(1 - 1/2^n)
    log_ratio,                // log2(k*l) - log2(2^n - 1)    (D1, exact form)
  };

  Tag tag = Tag::composite;
  double alpha = 1.0;  // structure_weighted only
  double beta = 1.0;   // structure_weighted only

  static MetricKind composite() { return {Tag::composite}; }
  static MetricKind sparsity_only() { return {Tag::sparsity_only}; }
  static MetricKind structure_weighted(double alpha, double beta);
  static MetricKind expected_solution_count() { return {Tag::expected_solution_count}; }
  static MetricKind log_ratio() { return {Tag::log_ratio}; }

  /// Names accepted by the CLI: composite, sparsity_only, structure_weighted,
  /// expected_solution_count, log_ratio.
  static MetricKind from_name(const std::string& name, double alpha = 1.0,
                              double beta = 1.0);
  std::string name() const;
};

/// Evaluates the selected metric at p. composite equals difficulty_score(p).
double metric_score(const MetricKind& kind, const SatParams& p);

/// Ordinary least squares y = slope*x + intercept over a point set.
struct RegressionFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  int point_count = 0;
};

/// Fits by OLS and reports R^2 = 1 - SS_res/SS_tot. Requires >= 2 points and
/// non-degenerate x (throws ContractError otherwise). Constant y is a perfect
/// fit by convention: zero residual over zero total variance reports R^2 = 1.
RegressionFit fit_linear(std::span<const std::pair<double, double>> points);

}  // namespace satgen
