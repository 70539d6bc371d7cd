#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "avgmdp/chain.hpp"
#include "avgmdp/exact_solver.hpp"
#include "avgmdp/harness/random_mdp.hpp"
#include "avgmdp/policy_enumeration.hpp"
#include "avgmdp/worst_case.hpp"
#include "test_util.hpp"

using namespace avgmdp;
using testutil::vec;

namespace {

Matrix power_average(const Matrix& p, int terms) {
  Matrix acc = Matrix::Zero(p.rows(), p.cols());
  Matrix power = Matrix::Identity(p.rows(), p.cols());
  for (int i = 0; i < terms; ++i) {
    acc += power;
    power = power * p;
  }
  return acc / terms;
}

std::vector<std::size_t> states(std::initializer_list<std::size_t> xs) { return xs; }

}  // namespace

TEST_CASE("policy_chain on the families and the identity") {
  const auto uni = policy_chain(make_unichain_family(4).mdp, DeterministicPolicy(4, 0));
  REQUIRE(uni.recurrent_classes.size() == 1);
  CHECK(uni.recurrent_classes[0] == states({0, 1, 2}));
  CHECK(uni.transient_states == states({3}));

  const auto multi = policy_chain(make_multichain_family(5).mdp, DeterministicPolicy(5, 0));
  REQUIRE(multi.recurrent_classes.size() == 2);
  CHECK(multi.recurrent_classes[0] == states({0}));
  CHECK(multi.recurrent_classes[1] == states({4}));
  CHECK(multi.transient_states == states({1, 2, 3}));

  const auto ident = decompose(Matrix::Identity(4, 4));
  CHECK(ident.recurrent_classes.size() == 4);
  CHECK(ident.transient_states.empty());
}

TEST_CASE("classify examples") {
  CHECK(classify(make_unichain_family(4).mdp) == MdpClass::Unichain);
  CHECK(classify(make_multichain_family(5).mdp) == MdpClass::MultichainGeneral);
  CHECK(classify(testutil::stay_or_switch_mdp()) == MdpClass::WeaklyCommunicatingNotUnichain);
  CHECK(classify(testutil::branch_mdp()) == MdpClass::MultichainGeneral);
  for (std::size_t n = 4; n <= 12; ++n) {
    CHECK(classify(make_unichain_family(n).mdp) == MdpClass::Unichain);
    CHECK(classify(make_multichain_family(n).mdp) == MdpClass::MultichainGeneral);
  }
  CHECK(to_string(MdpClass::WeaklyCommunicatingNotUnichain) == "weakly_communicating");
}

TEST_CASE("classify honors the enumeration guard") {
  const Mdp m = harness::random_mdp(harness::RandomKind::General, 8, 8, 1);
  CHECK_THROWS_AS(classify(m), TooManyPolicies);  // 8^8 > 10^7
}

TEST_CASE("cesaro_limit examples against oracles") {
  CHECK(cesaro_limit(Matrix::Identity(3, 3)) == Matrix::Identity(3, 3));

  Matrix swap(2, 2);
  swap << 0, 1, 1, 0;
  const Matrix oracle = power_average(swap, 10000);
  CHECK((cesaro_limit(swap) - oracle).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((cesaro_limit(swap).array() - 0.5).abs().maxCoeff() <= 1e-15);

  Matrix absorb(2, 2);
  absorb << 1, 0, 0.5, 0.5;
  Matrix expected(2, 2);
  expected << 1, 0, 1, 0;
  CHECK((cesaro_limit(absorb) - expected).cwiseAbs().maxCoeff() <= 1e-15);

  Matrix bad(2, 2);
  bad << 0.5, 0.4, 0, 1;
  CHECK_THROWS_AS(cesaro_limit(bad), NotStochastic);
}

TEST_CASE("cesaro_limit is stochastic, idempotent and commutes with P") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto kind = seed % 2 ? harness::RandomKind::WeaklyCommunicating : harness::RandomKind::General;
    const Mdp m = harness::random_mdp(kind, 7, 2, seed);
    const Matrix p = m.policy_matrix(DeterministicPolicy(7, seed % 2));
    const Matrix ps = cesaro_limit(p);
    CHECK((ps.rowwise().sum().array() - 1.0).abs().maxCoeff() <= 1e-10);
    CHECK((ps * p - ps).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK((p * ps - ps).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK((ps * ps - ps).cwiseAbs().maxCoeff() <= 1e-10);
    // Independent oracle: averaged powers converge at rate 1/terms, slowly on the ring-coupled chains.
    CHECK((ps - power_average(p, 400000)).cwiseAbs().maxCoeff() <= 1e-3);
  }
}

TEST_CASE("policy_gain on the families") {
  for (std::size_t n = 4; n <= 9; ++n) {
    const auto uni = make_unichain_family(n);
    CHECK(sup_error(policy_gain(uni.mdp, DeterministicPolicy(n, 0)),
                    ValueVector::Constant(n, 1.0 / (n - 1.0))) <= 1e-14);
    const auto multi = make_multichain_family(n);
    ValueVector e = ValueVector::Zero(n);
    e(n - 1) = 1.0;
    CHECK(sup_error(policy_gain(multi.mdp, DeterministicPolicy(n, 0)), e) <= 1e-14);
  }
  const Mdp zero = testutil::chain_mdp({{0.3, 0.7}, {1, 0}}, {0, 0});
  CHECK(policy_gain(zero, DeterministicPolicy(2, 0)) == ValueVector::Zero(2));
}

TEST_CASE("policy_gain matches Monte Carlo averages") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const Mdp m = harness::random_mdp(harness::RandomKind::Unichain, 5, 2, 40 + seed);
    const DeterministicPolicy pi(5, seed % 2);
    const ValueVector gain = policy_gain(m, pi);
    harness::Rng rng(seed + 99);
    for (std::size_t start = 0; start < 5; ++start) {
      constexpr int kSteps = 100000;
      std::size_t s = start;
      double total = 0.0;
      for (int t = 0; t < kSteps; ++t) {
        total += m.reward(s, pi[s]);
        double u = rng.uniform();
        std::size_t next = 0;
        while (next + 1 < 5 && u >= m.probability(s, pi[s], next)) u -= m.probability(s, pi[s], next++);
        s = next;
      }
      CHECK(std::abs(total / kSteps - gain(start)) <= 5e-3);
    }
  }
}

TEST_CASE("deviation_matrix examples") {
  const Mdp ident = testutil::chain_mdp({{1, 0}, {0, 1}}, {1, 2});
  CHECK(deviation_matrix(ident, DeterministicPolicy(2, 0)).cwiseAbs().maxCoeff() <= 1e-15);

  const Mdp swap = testutil::chain_mdp({{0, 1}, {1, 0}}, {1, 0});
  const ValueVector bias = deviation_matrix(swap, DeterministicPolicy(2, 0)) * vec({1, 0});
  // Direct solve of h + g = r + P h with g = 1/2 and h0 + h1 = 0.
  CHECK(sup_error(bias, vec({0.25, -0.25})) <= 1e-15);

  const auto fam = make_unichain_family(4);
  const DeterministicPolicy pi(4, 0);
  const ValueVector h = deviation_matrix(fam.mdp, pi) * fam.mdp.policy_reward(pi);
  const ValueVector diff = h - fam.solution.bias;
  CHECK(span_seminorm(diff) <= 1e-12);
  const Matrix ps = cesaro_limit(fam.mdp.policy_matrix(pi));
  CHECK((ps * h).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("policy_error examples") {
  const Mdp m = testutil::branch_mdp();
  const ValueVector g = vec({0, 1, 1});
  CHECK(policy_error(m, DeterministicPolicy(std::vector<std::size_t>{0, 0, 1}), g) == 0.0);
  CHECK(policy_error(m, DeterministicPolicy(std::vector<std::size_t>{0, 0, 0}), g) == 1.0);
}

TEST_CASE("epsilon_gap examples") {
  CHECK(std::isinf(epsilon_gap(make_unichain_family(5).mdp, ValueVector::Constant(5, 0.25))));
  CHECK(std::isinf(epsilon_gap(make_multichain_family(6).mdp, make_multichain_family(6).solution.gain)));
  CHECK(epsilon_gap(testutil::branch_mdp(), vec({0, 1, 1})) == 1.0);
}

TEST_CASE("weakly communicating instances have constant gain") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Mdp m = harness::random_mdp(harness::RandomKind::WeaklyCommunicating, 5, 2, seed);
    const MdpClass c = classify(m);
    CHECK(c != MdpClass::MultichainGeneral);
    if (c != MdpClass::MultichainGeneral) CHECK(span_seminorm(optimal_gain(m)) <= 1e-10);
  }
}

TEST_CASE("policy enumeration order and guard") {
  const Mdp m = testutil::branch_mdp();
  CHECK(count_policies(m) == 8);
  std::vector<std::vector<std::size_t>> seen;
  for_each_policy(m, [&](const DeterministicPolicy& pi) {
    seen.push_back(pi.actions());
    return seen.size() < 3;
  });
  REQUIRE(seen.size() == 3);
  CHECK(seen[0] == std::vector<std::size_t>{0, 0, 0});
  CHECK(seen[1] == std::vector<std::size_t>{0, 0, 1});
  CHECK(seen[2] == std::vector<std::size_t>{0, 1, 0});
}
