#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "avgmdp/bounds.hpp"
#include "avgmdp/chain.hpp"
#include "avgmdp/exact_solver.hpp"
#include "avgmdp/iterative.hpp"
#include "test_util.hpp"

using namespace avgmdp;
using testutil::vec;

TEST_CASE("burn-in constants") {
  BoundInputs b{1.0, 1.0, 1.0, 0.0, 1.0};
  CHECK(K_anc(b) == 18.0);
  CHECK(K_rx(b) == 20.0);
  BoundInputs doubled = b;
  doubled.eps = 2.0;
  CHECK(K_anc(doubled) == 9.0);
  CHECK(K_rx(doubled) == 10.0);
  b.eps = kInfinity;
  CHECK(K_anc(b) == 0.0);
  CHECK(K_rx(b) == 0.0);
}

TEST_CASE("branch MDP burn-in depends on the chosen bias") {
  const Mdp m = testutil::branch_mdp();
  const SolutionPair sol = solve_modified_bellman(m);
  const ValueVector v0 = ValueVector::Zero(3);
  const double eps = epsilon_gap(m, sol.gain);
  CHECK(eps == 1.0);
  // Hand-picked bias [0, 0, -1]: every norm is 1.
  const ValueVector hand = vec({0, 0, -1});
  CHECK(verify_solution(m, sol.gain, hand, 1e-12).holds());
  CHECK(K_anc({sup_error(v0, hand), 1.0, 1.0, 0.0, eps}) == 18.0);
  // The solver's bias has the smallest sup norm, 1/2, so its K_anc is 12.
  CHECK(sup_error(sol.bias, vec({0, 0.5, -0.5})) <= 1e-10);
  const BoundInputs b{sup_error(v0, sol.bias), sup_norm(sol.gain), m.reward_sup_norm(), 0.0, eps};
  CHECK(K_anc(b) == doctest::Approx(12.0));
}

TEST_CASE("closed-form rates") {
  CHECK(rx_vi_rate(1, 0, 0.5) == doctest::Approx(2.0 / std::sqrt(std::numbers::pi)));
  CHECK(rx_vi_rate(1, 0, 0.5) == doctest::Approx(1.12838).epsilon(1e-5));
  CHECK(rx_vi_rate(100, 0, 1.0) == doctest::Approx(0.22568).epsilon(1e-4));
  CHECK(rx_vi_rate(7, 0, 0.0) == 0.0);
  CHECK_THROWS_AS(rx_vi_rate(3, 3.0, 1.0), OutOfRange);
  CHECK_THROWS_AS(rx_vi_rate(3, 3.5, 1.0), OutOfRange);

  CHECK(anc_vi_rate(1, 0, 0.5, 0) == 2.0);
  CHECK(anc_vi_rate(19, 18, 1.0, 1.0) == doctest::Approx(1.3));
  CHECK(anc_vi_rate(9, 5, 1.0, 0.0) == doctest::Approx(0.8));
  CHECK_THROWS_AS(anc_vi_rate(18, 18, 1.0, 1.0), OutOfRange);

  CHECK(vi_normalized_rate(3, 0.5) == doctest::Approx(1.0 / 3));
  CHECK(vi_normalized_rate(3, 0.0) == 0.0);
  CHECK(vi_normalized_rate(10, 1.0) == vi_normalized_rate(5, 1.0) / 2);
  CHECK_THROWS_AS(vi_normalized_rate(0, 1.0), OutOfRange);

  CHECK(lower_bound(0, 0.5, LowerBoundFamily::Unichain) == 0.5);
  CHECK(lower_bound(0, 0.5, LowerBoundFamily::Multichain) == 1.0);
  CHECK(lower_bound(4, 0.0, LowerBoundFamily::Multichain) == 0.0);
}

TEST_CASE("rates are nonincreasing in k") {
  for (std::size_t k = 1; k < 500; ++k) {
    CHECK(rx_vi_rate(k + 1, 0, 1) <= rx_vi_rate(k, 0, 1));
    CHECK(anc_vi_rate(k + 1, 0, 1, 1) <= anc_vi_rate(k, 0, 1, 1));
    CHECK(vi_normalized_rate(k + 1, 1) <= vi_normalized_rate(k, 1));
    CHECK(relaxed_bellman_rate(Schedule::constant(0.5), k + 1, 0, 1) <=
          relaxed_bellman_rate(Schedule::constant(0.5), k, 0, 1));
  }
}

TEST_CASE("upper and lower bounds differ by exactly 8") {
  for (std::size_t k = 1; k <= 100; ++k) {
    const double lo = lower_bound(k, 0.7, LowerBoundFamily::Unichain);
    CHECK(lo <= anc_vi_rate(k, 0, 0.7, 0));
    CHECK(anc_vi_rate(k, 0, 0.7, 0) / lo == doctest::Approx(8.0).epsilon(1e-14));
  }
}

TEST_CASE("general rates reduce to the special cases") {
  for (std::size_t k = 1; k <= 50; ++k) {
    const GeneralRates z = general_rates(Schedule::zero(), k, 0, 1.0, 0.0);
    CHECK(z.rx_normalized == doctest::Approx(vi_normalized_rate(k, 1.0)).epsilon(1e-15));
    CHECK(z.anc_normalized == doctest::Approx(vi_normalized_rate(k, 1.0)).epsilon(1e-15));
    CHECK(std::isinf(z.rx_bellman));
  }
  const GeneralRates half = general_rates(Schedule::constant(0.5), 100, 0, 1.0, 0.0);
  CHECK(half.rx_bellman == doctest::Approx(2.0 / std::sqrt(25.0 * std::numbers::pi)));
  CHECK(half.rx_bellman == doctest::Approx(rx_vi_rate(100, 0, 1.0)));
  CHECK(relaxed_bellman_rate(Schedule::constant(0.5), 100, 0, 1.0) == half.rx_bellman);
}

TEST_CASE("anchored fixed-gain form at k = 1 with lambda_0 = 1") {
  const GeneralRates r = general_rates(Schedule::anchor(), 1, 0, 1.0, 0.0);
  // 2((1 - lambda_1) lambda_0^2 + lambda_1^2) with lambda_1 = 2/3.
  CHECK(r.anc_bellman_fixed_gain == doctest::Approx(14.0 / 9));
  CHECK(r.anc_bellman == doctest::Approx(2.0 * (1.0 - (1.0 / 3) * (2.0 / 3))));
}

TEST_CASE("dropping the lambda_0 term would understate the k = 1 error") {
  // Rewardless 3-cycle: g* = 0, h* = 0, every policy fixes g*.
  const Mdp m = testutil::chain_mdp({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}, {0, 0, 0});
  const ValueVector v0 = vec({-1, 1, 1});
  const SolutionPair sol{ValueVector::Zero(3), ValueVector::Zero(3), DeterministicPolicy(3, 0)};
  const auto t = run_anc_vi(m, v0, Schedule::anchor(), 1, {sol, 1});
  const double err = *t.rows[1].bellman_sup_err;
  CHECK(err == doctest::Approx(4.0 / 3));
  CHECK(err > 8.0 / 9);
  CHECK(err <= general_rates(Schedule::anchor(), 1, 0, 1.0, 0.0).anc_bellman_fixed_gain);
}

TEST_CASE("anchored tail term shrinks under the Anchor schedule") {
  double prev = kInfinity;
  for (std::size_t k = 6; k <= 400; k += 10) {
    const GeneralRates r = general_rates(Schedule::anchor(), k, 5, 0.0, 1.0);
    CHECK(r.anc_bellman < prev);
    prev = r.anc_bellman;
  }
  CHECK(prev < 1e-3);
}

TEST_CASE("general rate preconditions") {
  CHECK_THROWS_AS(general_rates(Schedule::custom({0.2, 0.5}), 3, 0, 1, 1), SchedulePreconditionViolated);
  CHECK_NOTHROW(relaxed_bellman_rate(Schedule::custom({0.2, 0.5}), 3, 0, 1));
  CHECK_THROWS_AS(general_rates(Schedule::anchor(), 3, 3, 1, 1), OutOfRange);
  CHECK_THROWS_AS(general_rates(Schedule::anchor(), 0, 0, 1, 1), OutOfRange);
  CHECK(std::isinf(relaxed_bellman_rate(Schedule::zero(), 5, 0, 1)));
}

TEST_CASE("log-space products survive long anchored runs") {
  const GeneralRates r = general_rates(Schedule::custom({1e-9}), 100000, 10, 1.0, 1.0);
  CHECK(std::isfinite(r.anc_bellman));
  CHECK(std::isfinite(r.anc_bellman_fixed_gain));
}

TEST_CASE("km coefficient tables") {
  const KmTable half = km_coefficients(Schedule::constant(0.5), 200);
  CHECK(half.a[1][0] == 0.5);
  CHECK(half.a[1][1] == 0.5);
  CHECK(half.a[0][0] == 1.0);
  CHECK(half.c_next[0] == doctest::Approx(0.5));
  CHECK(half.max_row_sum_error <= 1e-12);
  REQUIRE(half.diagonal.size() == 200);
  for (const auto& row : half.diagonal) CHECK(row.lhs <= row.rhs);

  const KmTable anchor = km_coefficients(Schedule::anchor(), 200);
  CHECK(anchor.max_row_sum_error <= 1e-12);
  for (const auto& row : anchor.diagonal) CHECK(row.lhs <= row.rhs);

  // Direct evaluation of a^3_1 = lambda_2 lambda_3 (1 - lambda_1).
  const KmTable custom = km_coefficients(Schedule::custom({0.9, 0.6, 0.3}), 5);
  CHECK(custom.a[3][1] == doctest::Approx(0.6 * 0.3 * 0.1));
  CHECK(custom.max_row_sum_error <= 1e-12);
  CHECK_THROWS_AS(km_coefficients(Schedule::anchor(), kMaxKmOrder + 1), OutOfRange);
}
