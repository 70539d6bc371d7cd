#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "avgmdp/chain.hpp"
#include "avgmdp/harness/certificates.hpp"
#include "avgmdp/harness/experiment.hpp"
#include "avgmdp/harness/mdp_io.hpp"
#include "avgmdp/harness/random_mdp.hpp"
#include "avgmdp/harness/specs.hpp"
#include "avgmdp/harness/trace_io.hpp"
#include "test_util.hpp"

using namespace avgmdp;
using namespace avgmdp::harness;

TEST_CASE("random generators are deterministic") {
  for (RandomKind kind : {RandomKind::General, RandomKind::Unichain, RandomKind::WeaklyCommunicating}) {
    CHECK(mdp_to_json(random_mdp(kind, 7, 3, 42)) == mdp_to_json(random_mdp(kind, 7, 3, 42)));
    CHECK(mdp_to_json(random_mdp(kind, 7, 3, 42)) != mdp_to_json(random_mdp(kind, 7, 3, 43)));
  }
  CHECK(random_vector(5, 9) == random_vector(5, 9));
  const ValueVector v = random_vector(100, 1);
  CHECK(v.maxCoeff() <= 1.0);
  CHECK(v.minCoeff() >= -1.0);
}

TEST_CASE("generated instances have the promised structure") {
  for (std::uint64_t seed = 0; seed < 100; ++seed)
    CHECK(classify(random_mdp(RandomKind::Unichain, 6, 2, seed)) == MdpClass::Unichain);
  for (std::uint64_t seed = 0; seed < 30; ++seed)
    CHECK(classify(random_mdp(RandomKind::WeaklyCommunicating, 6, 2, seed)) !=
          MdpClass::MultichainGeneral);
  const Mdp one = random_mdp(RandomKind::General, 1, 1, 5);
  CHECK(one.probability(0, 0, 0) == 1.0);
  const Mdp g = random_mdp(RandomKind::General, 6, 4, 3);
  for (std::size_t s = 0; s < 6; ++s)
    for (std::size_t a = 0; a < 4; ++a) {
      CHECK(std::abs(g.reward(s, a)) <= 1.0);
      CHECK(g.row(s, a).sum() == doctest::Approx(1.0).epsilon(1e-15));
    }
  CHECK_THROWS_AS(random_mdp(RandomKind::General, 0, 2, 1), BadSize);
  CHECK_THROWS_AS(random_mdp(RandomKind::General, 2, 0, 1), BadSize);
  CHECK(parse_random_kind("random_weakly_comm") == RandomKind::WeaklyCommunicating);
  CHECK(parse_random_kind("unichain") == RandomKind::Unichain);
  CHECK_FALSE(parse_random_kind("dense"));
}

TEST_CASE("MDP JSON round trip") {
  const Mdp m = random_mdp(RandomKind::General, 4, 2, 7);
  const Mdp back = Mdp::from_tables(parse_mdp_json(mdp_to_json(m)));
  for (std::size_t s = 0; s < 4; ++s)
    for (std::size_t a = 0; a < 2; ++a) {
      CHECK(back.reward(s, a) == m.reward(s, a));
      CHECK(back.row(s, a) == m.row(s, a));
    }
  CHECK_THROWS_AS(parse_mdp_json("{"), FormatError);
  CHECK_THROWS_AS(parse_mdp_json(R"({"n_states": 1})"), FormatError);
  const std::string bad = R"({"n_states":1,"n_actions":1,"transitions":[[[0.5]]],"rewards":[[0]]})";
  CHECK_THROWS_AS(Mdp::from_tables(parse_mdp_json(bad)), InvalidMdp);
  CHECK_THROWS_AS(load_mdp("/nonexistent/mdp.json"), FormatError);
}

TEST_CASE("spec parsing") {
  CHECK(parse_schedule("const:0.5").at(3) == 0.5);
  CHECK(parse_schedule("anchor").at(1) == doctest::Approx(2.0 / 3));
  CHECK(parse_schedule("zero").at(9) == 0.0);
  CHECK_THROWS_AS(parse_schedule("const:1"), ConfigError);
  CHECK_THROWS_AS(parse_schedule("const:abc"), ConfigError);
  CHECK_THROWS_AS(parse_schedule("geometric"), ConfigError);

  CHECK(parse_normalization("h:3").kind() == NormalizationFn::Kind::ComponentOfH);
  CHECK(parse_normalization("h:3").index() == 3);
  CHECK(parse_normalization("th:0").kind() == NormalizationFn::Kind::ComponentOfTh);
  CHECK(parse_normalization("mid").kind() == NormalizationFn::Kind::SpanMidpoint);
  CHECK_THROWS_AS(parse_normalization("h:-1"), ConfigError);
  CHECK_THROWS_AS(parse_normalization("median"), ConfigError);

  CHECK(parse_algorithm_or_throw("rx-vi") == Algorithm::RxVI);
  CHECK_THROWS_AS(parse_algorithm_or_throw("pi"), ConfigError);

  CHECK(resolve_v0(parse_v0("const:2.5"), 3) == ValueVector::Constant(3, 2.5));
  CHECK(resolve_v0(parse_v0("zero"), 2) == ValueVector::Zero(2));
  CHECK(resolve_v0(parse_v0("random:4"), 6) == random_vector(6, 4));
  CHECK_THROWS_AS(parse_v0("ones"), ConfigError);
  CHECK_THROWS_AS(parse_double("1.5x", "tol"), ConfigError);
  CHECK_THROWS_AS(parse_unsigned("-3", "iters"), ConfigError);
  CHECK(parse_unsigned("12", "iters") == 12);
}

TEST_CASE("bound columns on the unichain family") {
  const Problem p = family_problem(LowerBoundFamily::Unichain, 16, ValueVector());
  const GroundTruth truth = ground_truth(p, solve_problem(p), ValueVector::Zero(16));
  CHECK(truth.inputs.dist0 == 0.5);
  CHECK(truth.k_anc == 0.0);
  const auto e = run_experiment(p, truth, Algorithm::AncVI, Schedule::anchor(), std::nullopt,
                                ValueVector::Zero(16), 14);
  CHECK(*e.upper[1] == doctest::Approx(2.0));
  CHECK(*e.lower[1] == doctest::Approx(0.25));
  CHECK(e.lower[14].has_value());
  const auto longer = run_experiment(p, truth, Algorithm::AncVI, Schedule::anchor(), std::nullopt,
                                     ValueVector::Zero(16), 20);
  CHECK_FALSE(longer.lower[15].has_value());
  CHECK_FALSE(upper_bound_at(Algorithm::VI, Schedule::zero(), 3, truth));
  CHECK(*upper_bound_at(Algorithm::RxVI, Schedule::constant(0.5), 4, truth) ==
        doctest::Approx(rx_vi_rate(4, 0, 0.5)));
}

TEST_CASE("trace CSV round trip reproduces every metric") {
  const Problem p = random_problem(RandomKind::WeaklyCommunicating, 6, 2, 11);
  const ValueVector v0 = random_vector(6, 3);
  const GroundTruth truth = ground_truth(p, solve_problem(p), v0);
  for (Algorithm algo : {Algorithm::VI, Algorithm::AncVI, Algorithm::RxRVI}) {
    const auto f = is_relative(algo) ? std::optional(NormalizationFn::component_of_th(1)) : std::nullopt;
    const auto e = run_experiment(p, truth, algo, Schedule::constant(0.5), f, v0, 40);
    const CsvTable trace = parse_csv(trace_csv(e));
    const CsvTable iterates = parse_csv(iterates_csv(e.trace));
    CHECK(trace.header.size() == 9);
    REQUIRE(trace.rows.size() == 41);
    REQUIRE(iterates.rows.size() == 41);
    const auto& g = truth.solution.gain;
    for (std::size_t k = 0; k <= 40; ++k) {
      ValueVector v(6);
      for (Eigen::Index s = 0; s < 6; ++s) v(s) = *iterates.rows[k][static_cast<std::size_t>(s) + 1];
      const auto& row = trace.rows[k];
      CHECK(*row[0] == static_cast<double>(k));
      const auto step = bellman_optimality(p.mdp, v);
      const ValueVector res = step.tv - v;
      CHECK(std::abs(*row[trace.column("bellman_sup_err")] - sup_error(res, g)) <= 1e-12);
      CHECK(std::abs(*row[trace.column("bellman_span")] - span_seminorm(res)) <= 1e-12);
      CHECK(std::abs(*row[trace.column("policy_err")] - policy_error(p.mdp, step.greedy, g)) <= 1e-12);
      const auto norm = row[trace.column("normalized_err")];
      if (f) {
        CHECK(std::abs(*row[trace.column("f_value")] - f->eval(v, step.tv)) <= 1e-12);
        CHECK_FALSE(norm);
      } else if (k > 0) {
        const double alpha = *normalization_scale(algo, Schedule::constant(0.5), k);
        CHECK(std::abs(*norm - sup_error((v - v0) / alpha, g)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("certificates") {
  VerifyOptions km;
  km.cert = "km-diagonal";
  const auto f5 = run_certificates(km);
  REQUIRE(f5.size() == 1);
  CHECK(f5[0].pass());

  VerifyOptions anc;
  anc.cert = "anc-vi";
  anc.count = 5;
  anc.iters = 100;
  CHECK(run_certificates(anc)[0].pass());

  VerifyOptions negative;
  negative.cert = "anc-vi";
  negative.family = "unichain";
  negative.states = 16;
  negative.iters = 100;
  negative.schedule = Schedule::constant(0.99);
  const auto neg = run_certificates(negative);
  CHECK_FALSE(neg[0].pass());
  CHECK(neg[0].name == "anc-vi");
  CHECK(neg[0].violation_count > 0);
  CHECK(certificates_json(neg).find("\"verdict\": \"fail\"") != std::string::npos);

  VerifyOptions unknown;
  unknown.cert = "no-such-cert";
  CHECK_THROWS_AS(run_certificates(unknown), ConfigError);
  CHECK(certificate_names().size() == 10);
}
