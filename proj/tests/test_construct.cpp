#include <doctest.h>

#include <map>
#include <set>
#include <string>

#include "satgen/construct.hpp"
#include "satgen/errors.hpp"
#include "satgen/json_records.hpp"
#include "test_support.hpp"

using namespace satgen;

namespace {

ConstructionParams base_params(int n, int k, int l, int m, std::uint64_t seed,
                               ConstructionMode mode = ConstructionMode::direct) {
  ConstructionParams params;
  params.clause_width = n;
  params.num_vars = k;
  params.num_clauses = l;
  params.instance_count = m;
  params.seed = seed;
  params.mode = mode;
  return params;
}

// Upper-tail chi-square critical values at p = 0.001.
constexpr double kChi2Crit6 = 22.458;  // df = 6
constexpr double kChi2Crit8 = 26.125;  // df = 8

}  // namespace

TEST_CASE("clause capacity counting at (3,5)") {
  CHECK(per_solution_clause_capacity(3, 5) == 70);  // C(5,3) * (2^3 - 1) = 10 * 7
  CHECK(total_pair_space(3, 5) == 2240);            // 2^5 * 70
  CHECK(binomial_saturating(5, 3) == 10);
  CHECK(binomial_saturating(8, 4) == 70);
  CHECK(binomial_saturating(70, 35) > 0);  // saturates without UB
}

TEST_CASE("capacity error when clause count exceeds the space") {
  CHECK_THROWS_AS(construct(base_params(3, 5, 80, 1, 0)), CapacityError);
  try {
    construct(base_params(3, 5, 80, 1, 0));
  } catch (const CapacityError& e) {
    CHECK(e.capacity() == 70);
  }
}

TEST_CASE("constructed instances verify and are pairwise distinct") {
  std::vector<SatInstance> instances = construct(base_params(3, 5, 5, 100, 12345));
  REQUIRE(instances.size() == 100);
  std::set<std::string> keys;
  for (const SatInstance& instance : instances) {
    CHECK(verify(instance.formula, instance.hidden_solution));
    CHECK(instance.params.num_clauses == instance.formula.num_clauses());
    keys.insert(canonical_key(instance));
  }
  CHECK(keys.size() == 100);
}

TEST_CASE("construction is deterministic per seed, byte-identical") {
  for (ConstructionMode mode : {ConstructionMode::direct, ConstructionMode::pooled}) {
    std::vector<SatInstance> a = construct(base_params(3, 5, 8, 25, 777, mode));
    std::vector<SatInstance> b = construct(base_params(3, 5, 8, 25, 777, mode));
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
      CHECK(instance_to_json(a[i]) == instance_to_json(b[i]));
    std::vector<SatInstance> c = construct(base_params(3, 5, 8, 25, 778, mode));
    bool any_difference = false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (instance_to_json(a[i]) != instance_to_json(c[i])) any_difference = true;
    CHECK(any_difference);
  }
}

TEST_CASE("dense clause counts switch to the enumeration path and still work") {
  // l = 50 of 70 possible clauses: more than half the space.
  std::vector<SatInstance> instances = construct(base_params(3, 5, 50, 20, 9));
  for (const SatInstance& instance : instances) {
    CHECK(verify(instance.formula, instance.hidden_solution));
    std::set<std::string> clause_keys;
    for (const Clause& clause : instance.formula.clauses()) clause_keys.insert(clause.key());
    CHECK(clause_keys.size() == 50);
  }
}

TEST_CASE("exhaustion error reports how many instances were found") {
  // (n=1, k=1): only two possible instances exist, (x1) and (!x1).
  try {
    construct(base_params(1, 1, 1, 3, 5));
    FAIL("expected ExhaustionError");
  } catch (const ExhaustionError& e) {
    CHECK(e.found() == 2);
  }
}

TEST_CASE("exclusion list keeps reserved canonical forms out of the output") {
  std::vector<SatInstance> first = construct(base_params(3, 5, 5, 50, 1));
  std::unordered_set<std::string> exclude;
  for (const SatInstance& instance : first) exclude.insert(canonical_key(instance));
  std::vector<SatInstance> second = construct(base_params(3, 5, 5, 50, 1), exclude);
  for (const SatInstance& instance : second)
    CHECK_FALSE(exclude.contains(canonical_key(instance)));
}

TEST_CASE("sampled clause always satisfies its solution") {
  Rng rng(99);
  Assignment solution = Assignment::from_string("10110");
  for (int draw = 0; draw < 500; ++draw) {
    Clause clause = sample_satisfying_clause(solution, 3, 5, rng);
    CnfFormula one_clause(3, 5, {clause});
    CHECK(verify(one_clause, solution));
  }
}

TEST_CASE("width-1 clauses are forced to agree with the solution") {
  Rng rng(4);
  Assignment solution = Assignment::from_string("0101");
  for (int draw = 0; draw < 100; ++draw) {
    Clause clause = sample_satisfying_clause(solution, 1, 4, rng);
    REQUIRE(clause.size() == 1);
    CHECK(clause.literals[0].agrees(solution.value(clause.literals[0].var)));
  }
}

TEST_CASE("agreement patterns are uniform over the 7 valid ones (n=3)") {
  Rng rng(2718);
  Assignment solution = Assignment::from_string("10110");
  const int draws = 10000;
  std::map<int, int> pattern_counts;
  for (int draw = 0; draw < draws; ++draw) {
    Clause clause = sample_satisfying_clause(solution, 3, 5, rng);
    int pattern = 0;
    for (std::size_t j = 0; j < clause.literals.size(); ++j)
      if (clause.literals[j].agrees(solution.value(clause.literals[j].var)))
        pattern |= 1 << j;
    pattern_counts[pattern] += 1;
  }
  CHECK(pattern_counts.count(0) == 0);  // all-disagree never appears
  CHECK(pattern_counts.size() == 7);
  double expected = static_cast<double>(draws) / 7.0;
  double chi2 = 0.0;
  for (int pattern = 1; pattern < 8; ++pattern) {
    double diff = pattern_counts[pattern] - expected;
    chi2 += diff * diff / expected;
  }
  CHECK(chi2 < kChi2Crit6);
}

TEST_CASE("clause distribution is uniform over the 9-clause space (n=2, k=3)") {
  // Per fixed solution there are C(3,2) * (2^2 - 1) = 9 satisfying clauses.
  Rng rng(31415);
  Assignment solution = Assignment::from_string("101");
  const int draws = 10000;
  std::map<std::string, int> clause_counts;
  for (int draw = 0; draw < draws; ++draw)
    clause_counts[sample_satisfying_clause(solution, 2, 3, rng).key()] += 1;
  CHECK(clause_counts.size() == 9);
  double expected = static_cast<double>(draws) / 9.0;
  double chi2 = 0.0;
  for (const auto& [key, count] : clause_counts) {
    double diff = count - expected;
    chi2 += diff * diff / expected;
  }
  CHECK(chi2 < kChi2Crit8);
}

TEST_CASE("pooled mode replicates the pool-and-cluster pipeline") {
  std::vector<SatInstance> instances =
      construct(base_params(3, 5, 5, 50, 2020, ConstructionMode::pooled));
  REQUIRE(instances.size() == 50);
  std::set<std::string> keys;
  for (const SatInstance& instance : instances) {
    CHECK(verify(instance.formula, instance.hidden_solution));
    keys.insert(canonical_key(instance));
  }
  CHECK(keys.size() == 50);
}

TEST_CASE("pooled mode starves when clusters are too small") {
  // 2^12 solutions dilute a 500-pair pool to ~1 clause per cluster, far
  // below l = 50.
  ConstructionParams params = base_params(2, 12, 50, 1, 3, ConstructionMode::pooled);
  params.pool_cap = 500;
  CHECK_THROWS_AS(construct(params), ExhaustionError);
}

TEST_CASE("pool fill collects the whole space when it fits under the cap") {
  Rng rng(88);
  ClausePool pool = ClausePool::fill(3, 5, 100000, rng);
  CHECK(pool.pair_count == 2240);
  CHECK(pool.clusters.size() == 32);  // every solution appears
  for (const auto& cluster : pool.clusters) {
    CHECK(cluster.clauses.size() == 70);
    for (const Clause& clause : cluster.clauses) {
      CnfFormula one_clause(3, 5, {clause});
      CHECK(verify(one_clause, cluster.solution));
    }
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(construct(base_params(0, 5, 5, 1, 0)), ContractError);
  CHECK_THROWS_AS(construct(base_params(6, 5, 5, 1, 0)), ContractError);
  CHECK_THROWS_AS(construct(base_params(3, 5, 0, 1, 0)), ContractError);
  CHECK_THROWS_AS(construct(base_params(3, 5, 5, 0, 0)), ContractError);
}
