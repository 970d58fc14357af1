#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_set>
#include <vector>

#include "satgen/cnf.hpp"
#include "satgen/rng.hpp"

namespace satgen {

/// C(k, n) with saturation at UINT64_MAX.
std::uint64_t binomial_saturating(int k, int n);

/// Number of clauses over n distinct variables (out of k) that a fixed full
/// assignment satisfies: C(k, n) * (2^n - 1). Saturates at UINT64_MAX.
std::uint64_t per_solution_clause_capacity(int clause_width, int num_vars);

/// Number of valid (solution, clause) pairs: 2^k * C(k, n) * (2^n - 1).
/// Saturates at UINT64_MAX.
std::uint64_t total_pair_space(int clause_width, int num_vars);

enum class ConstructionMode {
  /// Sample a solution, then num_clauses distinct clauses uniformly from that
  /// solution's satisfying-clause space. Never starves; the default.
  direct,
  /// Fill a bounded pool of (solution, clause) pairs, cluster by solution,
  /// then assemble instances from clusters. Clusters smaller than the clause
  /// count are skipped.
  pooled,
};

struct ConstructionParams {
  int clause_width = 0;        // n
  int num_vars = 0;            // k
  int num_clauses = 0;         // l
  int instance_count = 0;      // m
  std::uint64_t seed = 0;
  ConstructionMode mode = ConstructionMode::direct;
  std::uint64_t pool_cap = 100000;  // pooled mode: max (solution, clause) pairs
  Split split = Split::unsplit;
  std::string id_prefix;       // optional; default derived from parameters

  /// Attempt budget before ExhaustionError: retry_factor * instance_count.
  int retry_factor = 50;
};

/// A clause over clause_width distinct variables whose polarity pattern is
/// uniform over the 2^n - 1 patterns with at least one literal agreeing with
/// the solution (so the clause is guaranteed satisfied).
Clause sample_satisfying_clause(const Assignment& solution, int clause_width,
                                int num_vars, Rng& rng);

/// The pooled-mode pair pool: distinct (solution, clause) pairs grouped into
/// clusters keyed by solution. Every stored clause satisfies its solution.
struct ClausePool {
  struct Cluster {
    Assignment solution;
    std::vector<Clause> clauses;
  };
  std::vector<Cluster> clusters;  // insertion order; deterministic per seed
  std::size_t pair_count = 0;

  static ClausePool fill(int clause_width, int num_vars, std::uint64_t pool_cap,
                         Rng& rng);
};

/// Generates instance_count pairwise-distinct satisfiable instances
/// (distinct under canonical_key). Deterministic for a fixed seed: one child
/// RNG stream per instance attempt, so byte-identical output on every run.
///
/// Throws CapacityError when num_clauses exceeds the per-solution capacity,
/// ExhaustionError when the retry budget runs out first, and ContractError
/// on invalid parameters. exclude lists canonical keys that must not appear
/// in the output (used for split disjointness and train/val separation).
std::vector<SatInstance> construct(
    const ConstructionParams& params,
    const std::unordered_set<std::string>& exclude = {});

}  // namespace satgen
