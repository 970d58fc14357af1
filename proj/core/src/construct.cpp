#include "satgen/construct.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <unordered_map>

#include "satgen/errors.hpp"

namespace satgen {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t mul_saturating(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kSaturated / b) return kSaturated;
  return a * b;
}

std::uint64_t pow2_saturating(int e) {
  if (e >= 64) return kSaturated;
  return 1ULL << e;
}

void check_params(const ConstructionParams& p) {
  if (p.clause_width < 1 || p.num_vars < p.clause_width)
    throw ContractError("construct: need 1 <= clause_width <= num_vars");
  if (p.clause_width > 62)
    throw ContractError("construct: clause_width > 62 is not supported");
  if (p.num_clauses < 1) throw ContractError("construct: num_clauses must be >= 1");
  if (p.instance_count < 1) throw ContractError("construct: instance_count must be >= 1");
  if (p.retry_factor < 1) throw ContractError("construct: retry_factor must be >= 1");
  std::uint64_t capacity = per_solution_clause_capacity(p.clause_width, p.num_vars);
  if (static_cast<std::uint64_t>(p.num_clauses) > capacity)
    throw CapacityError("construct: num_clauses " + std::to_string(p.num_clauses) +
                            " exceeds per-solution clause capacity " +
                            std::to_string(capacity) + " for (n=" +
                            std::to_string(p.clause_width) + ", k=" +
                            std::to_string(p.num_vars) + ")",
                        capacity);
}

Assignment random_assignment(int num_vars, Rng& rng) {
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(num_vars));
  for (auto& bit : bits) bit = static_cast<std::uint8_t>(rng.below(2));
  return Assignment(std::move(bits));
}

/// Builds the clause for a chosen variable set and agreement pattern.
/// Pattern bit j set = literal j agrees with the solution (evaluates true).
Clause clause_from_pattern(const std::vector<int>& vars, std::uint64_t pattern,
                           const Assignment& solution) {
  Clause clause;
  clause.literals.reserve(vars.size());
  for (std::size_t j = 0; j < vars.size(); ++j) {
    bool agree = (pattern >> j) & 1;
    bool value = solution.value(vars[j]);
    // Agreeing literal: positive on a true variable, negated on a false one.
    clause.literals.push_back(Literal{vars[j], agree ? !value : value});
  }
  return clause;
}

std::string default_id_prefix(const ConstructionParams& p) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "n%dk%dl%d-%016llx", p.clause_width, p.num_vars,
                p.num_clauses, static_cast<unsigned long long>(p.seed));
  return buf;
}

std::string make_id(const std::string& prefix, int index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "-%05d", index);
  return prefix + buf;
}

/// Draws num_clauses distinct satisfying clauses for one solution. Rejection
/// sampling while the target is sparse in the clause space; full enumeration
/// plus a partial shuffle once it is more than half the space.
std::vector<Clause> sample_distinct_clauses(const Assignment& solution,
                                            const ConstructionParams& p, Rng& rng) {
  std::uint64_t capacity = per_solution_clause_capacity(p.clause_width, p.num_vars);
  std::uint64_t target = static_cast<std::uint64_t>(p.num_clauses);

  if (capacity != kSaturated && target > capacity / 2) {
    // Enumerate every (variable set, valid pattern) clause.
    std::vector<Clause> all;
    all.reserve(static_cast<std::size_t>(capacity));
    std::vector<int> vars(static_cast<std::size_t>(p.clause_width));
    for (int i = 0; i < p.clause_width; ++i) vars[static_cast<std::size_t>(i)] = i;
    std::uint64_t patterns = pow2_saturating(p.clause_width);
    for (;;) {
      for (std::uint64_t pattern = 1; pattern < patterns; ++pattern)
        all.push_back(clause_from_pattern(vars, pattern, solution));
      // Next combination in lexicographic order.
      int i = p.clause_width - 1;
      while (i >= 0 && vars[static_cast<std::size_t>(i)] == p.num_vars - p.clause_width + i) --i;
      if (i < 0) break;
      ++vars[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < p.clause_width; ++j)
        vars[static_cast<std::size_t>(j)] = vars[static_cast<std::size_t>(j - 1)] + 1;
    }
    std::vector<int> picks = rng.sample_distinct(static_cast<int>(all.size()),
                                                 p.num_clauses);
    std::vector<Clause> selected;
    selected.reserve(picks.size());
    for (int idx : picks) selected.push_back(all[static_cast<std::size_t>(idx)]);
    return selected;
  }

  std::vector<Clause> selected;
  selected.reserve(static_cast<std::size_t>(target));
  std::unordered_set<std::string> keys;
  keys.reserve(static_cast<std::size_t>(target) * 2);
  while (selected.size() < target) {
    Clause clause = sample_satisfying_clause(solution, p.clause_width, p.num_vars, rng);
    if (keys.insert(clause.key()).second) selected.push_back(std::move(clause));
  }
  return selected;
}

}  // namespace

std::uint64_t binomial_saturating(int k, int n) {
  if (n < 0 || n > k) return 0;
  n = std::min(n, k - n);
  unsigned __int128 result = 1;
  for (int i = 1; i <= n; ++i) {
    result = result * static_cast<unsigned __int128>(k - n + i) / static_cast<unsigned>(i);
    if (result > kSaturated) return kSaturated;
  }
  return static_cast<std::uint64_t>(result);
}

std::uint64_t per_solution_clause_capacity(int clause_width, int num_vars) {
  std::uint64_t patterns = pow2_saturating(clause_width) - 1;
  return mul_saturating(binomial_saturating(num_vars, clause_width), patterns);
}

std::uint64_t total_pair_space(int clause_width, int num_vars) {
  return mul_saturating(pow2_saturating(num_vars),
                        per_solution_clause_capacity(clause_width, num_vars));
}

Clause sample_satisfying_clause(const Assignment& solution, int clause_width,
                                int num_vars, Rng& rng) {
  if (solution.size() != num_vars)
    throw ContractError("sample_satisfying_clause: solution must cover all variables");
  if (clause_width < 1 || clause_width > num_vars || clause_width > 62)
    throw ContractError("sample_satisfying_clause: invalid clause width");
  std::vector<int> vars = rng.sample_distinct(num_vars, clause_width);
  // Uniform over the 2^n - 1 agreement patterns that are not all-disagree.
  std::uint64_t pattern = 1 + rng.below((1ULL << clause_width) - 1);
  return clause_from_pattern(vars, pattern, solution);
}

ClausePool ClausePool::fill(int clause_width, int num_vars, std::uint64_t pool_cap,
                            Rng& rng) {
  std::uint64_t space = total_pair_space(clause_width, num_vars);
  std::uint64_t target = std::min(pool_cap, space);
  // Collecting the tail of a nearly-full space by rejection is a coupon
  // collector; bound the draws and keep whatever was gathered.
  std::uint64_t max_draws = mul_saturating(target, 20) + 1000;

  ClausePool pool;
  std::unordered_map<std::string, std::size_t> cluster_index;
  std::unordered_set<std::string> pair_keys;
  for (std::uint64_t draw = 0; pool.pair_count < target && draw < max_draws; ++draw) {
    Assignment solution = random_assignment(num_vars, rng);
    Clause clause = sample_satisfying_clause(solution, clause_width, num_vars, rng);
    std::string pair_key = solution.to_string() + "|" + clause.key();
    if (!pair_keys.insert(std::move(pair_key)).second) continue;
    auto [it, inserted] = cluster_index.try_emplace(solution.to_string(), pool.clusters.size());
    if (inserted) pool.clusters.push_back(Cluster{solution, {}});
    pool.clusters[it->second].clauses.push_back(std::move(clause));
    ++pool.pair_count;
  }
  return pool;
}

std::vector<SatInstance> construct(const ConstructionParams& params,
                                   const std::unordered_set<std::string>& exclude) {
  check_params(params);
  const std::string prefix =
      params.id_prefix.empty() ? default_id_prefix(params) : params.id_prefix;
  const std::size_t want = static_cast<std::size_t>(params.instance_count);
  const std::uint64_t budget =
      static_cast<std::uint64_t>(params.retry_factor) * want;

  Rng root(params.seed);

  ClausePool pool;
  std::vector<std::size_t> usable_clusters;
  if (params.mode == ConstructionMode::pooled) {
    Rng pool_rng = root.child(kStreamPool);
    pool = ClausePool::fill(params.clause_width, params.num_vars, params.pool_cap, pool_rng);
    for (std::size_t c = 0; c < pool.clusters.size(); ++c)
      if (pool.clusters[c].clauses.size() >= static_cast<std::size_t>(params.num_clauses))
        usable_clusters.push_back(c);
    if (usable_clusters.empty())
      throw ExhaustionError(
          "construct(pooled): no cluster holds " + std::to_string(params.num_clauses) +
              " clauses (pool of " + std::to_string(pool.pair_count) + " pairs in " +
              std::to_string(pool.clusters.size()) + " clusters); found 0 of " +
              std::to_string(want) + " instances",
          0);
  }

  std::vector<SatInstance> instances;
  instances.reserve(want);
  std::unordered_set<std::string> taken;

  for (std::uint64_t attempt = 0; attempt < budget && instances.size() < want; ++attempt) {
    Rng rng = root.child(kStreamInstance, attempt);

    Assignment solution;
    std::vector<Clause> selected;
    if (params.mode == ConstructionMode::direct) {
      solution = random_assignment(params.num_vars, rng);
      selected = sample_distinct_clauses(solution, params, rng);
    } else {
      std::size_t c = usable_clusters[rng.below(usable_clusters.size())];
      const ClausePool::Cluster& cluster = pool.clusters[c];
      solution = cluster.solution;
      std::vector<int> picks = rng.sample_distinct(
          static_cast<int>(cluster.clauses.size()), params.num_clauses);
      selected.reserve(picks.size());
      for (int idx : picks) selected.push_back(cluster.clauses[static_cast<std::size_t>(idx)]);
    }
    rng.shuffle(selected);

    CnfFormula formula(params.clause_width, params.num_vars, std::move(selected));
    std::string key = canonical_key(solution, formula);
    if (exclude.contains(key) || !taken.insert(std::move(key)).second) continue;

    SatParams sat_params{params.clause_width, params.num_vars, params.num_clauses};
    instances.push_back(make_instance(make_id(prefix, static_cast<int>(instances.size())),
                                      sat_params, std::move(formula), std::move(solution),
                                      rng.seed(), params.split));
  }

  if (instances.size() < want)
    throw ExhaustionError("construct: found only " + std::to_string(instances.size()) +
                              " of " + std::to_string(want) +
                              " distinct instances within " + std::to_string(budget) +
                              " attempts",
                          instances.size());
  return instances;
}

}  // namespace satgen
