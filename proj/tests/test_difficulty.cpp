#include <doctest.h>

#include <cmath>
#include <utility>
#include <vector>

#include "satgen/construct.hpp"
#include "satgen/difficulty.hpp"
#include "satgen/errors.hpp"
#include "satgen/rng.hpp"

using namespace satgen;

namespace {

/// Independent OLS check: normal equations evaluated in long double.
struct OlsReference {
  long double slope, intercept, r_squared;
};

OlsReference ols_reference(const std::vector<std::pair<double, double>>& points) {
  long double n = static_cast<long double>(points.size());
  long double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [x, y] : points) {
    sx += x;
    sy += y;
    sxx += static_cast<long double>(x) * x;
    sxy += static_cast<long double>(x) * y;
  }
  long double denom = n * sxx - sx * sx;
  OlsReference ref;
  ref.slope = (n * sxy - sx * sy) / denom;
  ref.intercept = (sy - ref.slope * sx) / n;
  long double mean_y = sy / n;
  long double ss_res = 0, ss_tot = 0;
  for (auto [x, y] : points) {
    long double predicted = ref.slope * x + ref.intercept;
    ss_res += (y - predicted) * (y - predicted);
    ss_tot += (y - mean_y) * (y - mean_y);
  }
  ref.r_squared = ss_tot == 0 ? 1.0L : 1.0L - ss_res / ss_tot;
  return ref;
}

}  // namespace

TEST_CASE("difficulty score matches hand-evaluated values") {
  CHECK(difficulty_score({3, 5, 5}) == doctest::Approx(5.632451).epsilon(1e-6));
  CHECK(difficulty_score({3, 5, 13}) == doctest::Approx(8.389474).epsilon(1e-6));
  CHECK(difficulty_score({3, 5, 15}) == doctest::Approx(8.802376).epsilon(1e-6));
}

TEST_CASE("difficulty is strictly increasing in clause count") {
  for (auto [n, k] : std::vector<std::pair<int, int>>{{3, 5}, {3, 7}, {4, 8}, {6, 7}}) {
    std::uint64_t capacity = per_solution_clause_capacity(n, k);
    double previous = difficulty_score({n, k, 1});
    for (int l = 2; l <= static_cast<int>(capacity); ++l) {
      double current = difficulty_score({n, k, l});
      CHECK(current > previous);
      previous = current;
    }
  }
}

TEST_CASE("composite decomposes into sparsity + structure terms") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + static_cast<int>(rng.below(8));
    int k = n + static_cast<int>(rng.below(10));
    int l = 1 + static_cast<int>(rng.below(200));
    SatParams p{n, k, l};
    double d1 = metric_score(MetricKind::sparsity_only(), p);
    double d2 = metric_score(MetricKind::structure_weighted(1.0, 1.0), p);
    CHECK(difficulty_score(p) == doctest::Approx(d1 + d2).epsilon(1e-12));
  }
}

TEST_CASE("alternative metrics match hand evaluation at (3,5,5)") {
  SatParams p{3, 5, 5};
  CHECK(metric_score(MetricKind::expected_solution_count(), p) ==
        doctest::Approx(-4.036774).epsilon(1e-6));
  CHECK(metric_score(MetricKind::log_ratio(), p) == doctest::Approx(1.836501).epsilon(1e-6));
  CHECK(metric_score(MetricKind::structure_weighted(1.0, 1.0), p) ==
        doctest::Approx(3.988595).epsilon(1e-6));
  CHECK(metric_score(MetricKind::structure_weighted(2.0, 1.0), p) ==
        doctest::Approx(2.0 * 5.0 / 3.0 + std::log2(5.0)).epsilon(1e-12));
  CHECK(metric_score(MetricKind::composite(), p) == difficulty_score(p));
}

TEST_CASE("metric names round-trip and reject junk") {
  for (const char* name : {"composite", "sparsity_only", "structure_weighted",
                           "expected_solution_count", "log_ratio"})
    CHECK(MetricKind::from_name(name).name() == name);
  CHECK_THROWS_AS(MetricKind::from_name("bogus"), ContractError);
  CHECK_THROWS_AS(MetricKind::structure_weighted(0.0, 1.0), ContractError);
}

TEST_CASE("clause-to-variable ratio") {
  CHECK(clause_variable_ratio({3, 5, 13}) == doctest::Approx(2.6));
  CHECK(kThreeSatPhaseTransitionRatio == doctest::Approx(4.26));
}

TEST_CASE("fit_linear on exact collinear points") {
  std::vector<std::pair<double, double>> points{{1, 2}, {2, 4}, {3, 6}};
  RegressionFit fit = fit_linear(points);
  CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.point_count == 3);
}

TEST_CASE("fit_linear constant-y convention: perfect fit") {
  std::vector<std::pair<double, double>> points{{1, 1}, {2, 1}, {3, 1}};
  RegressionFit fit = fit_linear(points);
  CHECK(fit.slope == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.r_squared == doctest::Approx(1.0));
}

TEST_CASE("fit_linear rejects degenerate x") {
  std::vector<std::pair<double, double>> points{{2, 1}, {2, 3}, {2, 5}};
  CHECK_THROWS_AS(fit_linear(points), ContractError);
  CHECK_THROWS_AS(fit_linear(std::vector<std::pair<double, double>>{{1, 1}}), ContractError);
}

TEST_CASE("fit_linear recovers a noisy synthetic line") {
  Rng rng(31337);
  std::vector<std::pair<double, double>> points;
  for (int i = 0; i < 200; ++i) {
    double x = static_cast<double>(i) / 25.0;
    double noise = (rng.unit() - 0.5) * 0.02;  // +/- 0.01
    points.emplace_back(x, -0.1 * x + 0.9 + noise);
  }
  RegressionFit fit = fit_linear(points);
  CHECK(fit.slope == doctest::Approx(-0.1).epsilon(0.05));
  CHECK(fit.intercept == doctest::Approx(0.9).epsilon(0.05));
  CHECK(fit.r_squared > 0.98);
}

TEST_CASE("fit_linear matches closed-form OLS on random point sets") {
  Rng rng(555);
  for (int trial = 0; trial < 1000; ++trial) {
    int count = 2 + static_cast<int>(rng.below(40));
    std::vector<std::pair<double, double>> points;
    for (int i = 0; i < count; ++i)
      points.emplace_back(rng.unit() * 20.0 - 10.0, rng.unit() * 6.0 - 3.0);
    // Degenerate x is not representable by the reference either; nudge.
    points[0].first += 1e-3;
    RegressionFit fit = fit_linear(points);
    OlsReference ref = ols_reference(points);
    CHECK(fit.slope == doctest::Approx(static_cast<double>(ref.slope)).epsilon(1e-9));
    CHECK(fit.intercept ==
          doctest::Approx(static_cast<double>(ref.intercept)).scale(1.0).epsilon(1e-9));
    CHECK(fit.r_squared ==
          doctest::Approx(static_cast<double>(ref.r_squared)).scale(1.0).epsilon(1e-9));
  }
}
