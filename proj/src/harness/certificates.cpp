#include "avgmdp/harness/certificates.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include <json.hpp>

#include "avgmdp/harness/experiment.hpp"
#include "avgmdp/harness/specs.hpp"

namespace avgmdp::harness {

namespace {

constexpr std::size_t kStoredViolations = 10;
constexpr std::uint64_t kV0SeedMix = 0x5851F42D4C957F2DULL;

struct Instance {
  Problem problem;
  ValueVector v0;
  GroundTruth truth;
};

Certificate named(std::string name, std::string inequality) {
  Certificate c;
  c.name = std::move(name);
  c.inequality = std::move(inequality);
  return c;
}

bool fixes_gain(const Instance& in) { return std::isinf(in.truth.inputs.eps); }

struct Defaults {
  RandomKind kind;
  std::size_t count;
  std::size_t states;
  std::size_t actions;
  std::size_t iters;
};

class Runner {
 public:
  explicit Runner(const VerifyOptions& o) : o_(o) {}

  std::vector<Instance> instances(const Defaults& d) {
    std::vector<Instance> out;
    if (o_.family) {
      const LowerBoundFamily fam = family_kind();
      const std::size_t n = o_.states.value_or(16);
      Problem p = family_problem(fam, n, ValueVector::Zero(n));
      const ValueVector v0 = ValueVector::Zero(n);
      GroundTruth t = ground_truth(p, *p.known_solution, v0);
      out.push_back({std::move(p), v0, std::move(t)});
      return out;
    }
    const RandomKind kind = o_.random.value_or(d.kind);
    const std::size_t count = o_.count.value_or(d.count);
    const std::size_t n = o_.states.value_or(d.states);
    const std::size_t a = o_.actions.value_or(d.actions);
    for (std::size_t i = 0; i < count; ++i) {
      const std::uint64_t seed = o_.seed + i;
      Problem p = random_problem(kind, n, a, seed);
      const ValueVector v0 = random_vector(n, seed ^ kV0SeedMix);
      auto it = solved_.find(p.label);
      if (it == solved_.end()) it = solved_.emplace(p.label, solve_problem(p)).first;
      GroundTruth t = ground_truth(p, it->second, v0);
      out.push_back({std::move(p), v0, std::move(t)});
    }
    return out;
  }

  std::size_t iters(const Defaults& d) const { return o_.iters.value_or(d.iters); }
  Schedule schedule_or(Schedule fallback) const { return o_.schedule.value_or(fallback); }
  NormalizationFn normalization() const {
    return o_.normalization.value_or(NormalizationFn::component_of_h(0));
  }
  double tol() const { return o_.tol; }
  std::uint64_t seed() const { return o_.seed; }
  const VerifyOptions& options() const { return o_; }

  LowerBoundFamily family_kind() const {
    if (*o_.family == "unichain") return LowerBoundFamily::Unichain;
    if (*o_.family == "multichain") return LowerBoundFamily::Multichain;
    throw ConfigError("unknown family '" + *o_.family + "' (unichain|multichain)");
  }

 private:
  const VerifyOptions& o_;
  std::map<std::string, SolutionPair> solved_;
};

IterationTrace trace_for(const Instance& in, Algorithm algo, const Schedule& schedule,
                         const std::optional<NormalizationFn>& f, std::size_t iters) {
  RunOptions options;
  options.solution = in.truth.solution;
  options.stride = iters + 1;  // metrics only
  return run_algorithm(in.problem.mdp, algo, in.v0, schedule, f, iters, options);
}

Certificate vi_normalized(Runner& r) {
  const Defaults d{RandomKind::General, 50, 6, 2, 500};
  Certificate c = named("vi-normalized", "vi normalized_err(k) <= 2/k dist0");
  for (const auto& in : r.instances(d)) {
    ++c.instances;
    const auto trace = trace_for(in, Algorithm::VI, Schedule::zero(), std::nullopt, r.iters(d));
    for (const auto& row : trace.rows)
      if (row.k >= 1)
        c.check(in.problem.label, row.k, *row.normalized_err,
                vi_normalized_rate(row.k, in.truth.inputs.dist0), r.tol());
  }
  return c;
}

Certificate policy_error_cert(Runner& r) {
  const Defaults d{RandomKind::WeaklyCommunicating, 50, 8, 3, 500};
  Certificate c = named("policy-error", "policy_err(k) <= bellman_sup_err(k) for rx-vi and anc-vi");
  for (const auto& in : r.instances(d)) {
    if (!fixes_gain(in)) {
      ++c.skipped_instances;
      continue;
    }
    ++c.instances;
    for (auto [algo, sched] : {std::pair{Algorithm::RxVI, r.schedule_or(Schedule::constant(0.5))},
                               std::pair{Algorithm::AncVI, r.schedule_or(Schedule::anchor())}}) {
      const auto trace = trace_for(in, algo, sched, std::nullopt, r.iters(d));
      for (const auto& row : trace.rows)
        c.check(in.problem.label, row.k, *row.policy_err, *row.bellman_sup_err, r.tol());
    }
  }
  return c;
}

Certificate rx_vi_cert(Runner& r) {
  const Defaults d{RandomKind::WeaklyCommunicating, 50, 8, 3, 500};
  const Schedule sched = r.schedule_or(Schedule::constant(0.5));
  Certificate c = named("rx-vi", "rx-vi(" + sched.describe() +
                            ") bellman_sup_err(k) <= 4 dist0 / sqrt(pi (k - K_rx)) for k > ceil(K_rx)");
  for (const auto& in : r.instances(d)) {
    ++c.instances;
    const auto trace = trace_for(in, Algorithm::RxVI, sched, std::nullopt, r.iters(d));
    for (const auto& row : trace.rows)
      if (static_cast<double>(row.k) > std::ceil(in.truth.k_rx) && row.k >= 1)
        c.check(in.problem.label, row.k, *row.bellman_sup_err,
                rx_vi_rate(row.k, in.truth.k_rx, in.truth.inputs.dist0), r.tol());
  }
  return c;
}

Certificate anc_vi_cert(Runner& r) {
  const Defaults d{RandomKind::WeaklyCommunicating, 50, 8, 3, 500};
  const Schedule sched = r.schedule_or(Schedule::anchor());
  Certificate c = named("anc-vi", "anc-vi(" + sched.describe() +
                            ") bellman_sup_err(k) <= 8/(k+1) dist0 + K_anc/(k+1) |g*| for k > ceil(K_anc)");
  for (const auto& in : r.instances(d)) {
    ++c.instances;
    const auto trace = trace_for(in, Algorithm::AncVI, sched, std::nullopt, r.iters(d));
    for (const auto& row : trace.rows)
      if (static_cast<double>(row.k) > std::ceil(in.truth.k_anc) && row.k >= 1)
        c.check(in.problem.label, row.k, *row.bellman_sup_err,
                anc_vi_rate(row.k, in.truth.k_anc, in.truth.inputs.dist0, in.truth.inputs.gnorm),
                r.tol());
  }
  return c;
}

Certificate rx_rvi_cert(Runner& r) {
  const Defaults d{RandomKind::Unichain, 20, 6, 2, 1000};
  const Schedule sched = r.schedule_or(Schedule::constant(0.5));
  const NormalizationFn f = r.normalization();
  Certificate c = named("rx-rvi", "rx-rvi(" + sched.describe() + ", f=" + f.describe() +
                            ") bellman_sup_err(k) <= 2 dist0 / sqrt(pi sum lambda_i (1 - lambda_i))");
  for (const auto& in : r.instances(d)) {
    if (!fixes_gain(in)) {
      ++c.skipped_instances;
      continue;
    }
    ++c.instances;
    const auto trace = trace_for(in, Algorithm::RxRVI, sched, f, r.iters(d));
    for (const auto& row : trace.rows)
      if (row.k >= 1)
        c.check(in.problem.label, row.k, *row.bellman_sup_err,
                relaxed_bellman_rate(sched, row.k, 0, in.truth.inputs.dist0), r.tol());
  }
  return c;
}

Certificate anc_rvi_cert(Runner& r) {
  const Defaults d{RandomKind::WeaklyCommunicating, 20, 8, 3, 1000};
  const Schedule sched = r.schedule_or(Schedule::anchor());
  const NormalizationFn f = r.normalization();
  Certificate c = named("anc-rvi", "anc-rvi(" + sched.describe() + ", f=" + f.describe() +
                            ") bellman_sup_err(k) <= 2 sum_i prod_{j>i}(1 - lambda_j) lambda_i^2 dist0");
  for (const auto& in : r.instances(d)) {
    if (!fixes_gain(in)) {
      ++c.skipped_instances;
      continue;
    }
    ++c.instances;
    const auto trace = trace_for(in, Algorithm::AncRVI, sched, f, r.iters(d));
    for (const auto& row : trace.rows)
      if (row.k >= 1)
        c.check(in.problem.label, row.k, *row.bellman_sup_err,
                general_rates(sched, row.k, 0, in.truth.inputs.dist0, in.truth.inputs.gnorm)
                    .anc_bellman_fixed_gain,
                r.tol());
  }
  return c;
}

/// The three span-condition schemes a lower-bound certificate exercises.
std::vector<std::pair<Algorithm, Schedule>> span_schemes(const Runner& r) {
  return {{Algorithm::VI, Schedule::zero()},
          {Algorithm::RxVI, r.schedule_or(Schedule::constant(0.5))},
          {Algorithm::AncVI, r.schedule_or(Schedule::anchor())}};
}

std::vector<Instance> family_instances(Runner& r, LowerBoundFamily fam) {
  const std::size_t n = r.options().states.value_or(16);
  const std::size_t shifted = r.options().count.value_or(5);
  std::vector<Instance> out;
  for (std::size_t i = 0; i <= shifted; ++i) {
    const ValueVector v0 =
        i == 0 ? ValueVector::Zero(n) : random_vector(n, (r.seed() + i) ^ kV0SeedMix);
    Problem p = family_problem(fam, n, v0);
    if (i > 0) p.label += "+shift(seed=" + std::to_string(r.seed() + i) + ")";
    GroundTruth t = ground_truth(p, *p.known_solution, v0);
    out.push_back({std::move(p), v0, std::move(t)});
  }
  return out;
}

Certificate unichain_lower(Runner& r) {
  Certificate c = named("unichain-lower", "1/(k+1) dist0 <= bellman_sup_err(k) on the unichain family, k <= n-2");
  for (const auto& in : family_instances(r, LowerBoundFamily::Unichain)) {
    ++c.instances;
    const std::size_t n = in.problem.mdp.n_states();
    for (const auto& [algo, sched] : span_schemes(r)) {
      const auto trace = trace_for(in, algo, sched, std::nullopt, n - 2);
      for (const auto& row : trace.rows)
        c.check(in.problem.label + "/" + std::string(to_string(algo)), row.k,
                lower_bound(row.k, in.truth.inputs.dist0, LowerBoundFamily::Unichain),
                *row.bellman_sup_err, r.tol());
    }
  }
  return c;
}

Certificate multichain_lower(Runner& r) {
  Certificate c = named("multichain-lower",
                "2/(k+1) dist0 <= bellman_sup_err(k) and <= vi normalized_err(k+1) on the "
                "multichain family, k <= n-3");
  for (const auto& in : family_instances(r, LowerBoundFamily::Multichain)) {
    ++c.instances;
    const std::size_t n = in.problem.mdp.n_states();
    for (const auto& [algo, sched] : span_schemes(r)) {
      const auto trace = trace_for(in, algo, sched, std::nullopt, n - 2);
      const std::string label = in.problem.label + "/" + std::string(to_string(algo));
      for (std::size_t k = 0; k + 3 <= n; ++k) {
        const double bound = lower_bound(k, in.truth.inputs.dist0, LowerBoundFamily::Multichain);
        c.check(label, k, bound, *trace.rows[k].bellman_sup_err, r.tol());
        if (algo == Algorithm::VI)
          c.check(label + "/normalized", k, bound, *trace.rows[k + 1].normalized_err, r.tol());
      }
    }
  }
  return c;
}

Certificate km_diagonal(Runner& r) {
  const Schedule sched = r.schedule_or(Schedule::constant(0.5));
  const std::size_t k_max = r.options().iters.value_or(200);
  Certificate c = named("km-diagonal", "km(" + sched.describe() +
                             "): c_{k+1,k}/(1 - lambda_{k+1}) <= 2/sqrt(pi sum lambda_i (1 - lambda_i)) "
                             "and |sum_j a^k_j - 1| <= 1e-12");
  const KmTable table = km_coefficients(sched, k_max);
  c.instances = 1;
  for (std::size_t k = 0; k < table.a.size(); ++k) {
    double sum = 0.0;
    for (double v : table.a[k]) sum += v;
    c.check("row_sum", k, std::abs(sum - 1.0), 1e-12, 0.0);
  }
  for (const auto& row : table.diagonal) c.check("km-diagonal", row.k, row.lhs, row.rhs, r.tol());
  return c;
}

Certificate span_relation(Runner& r) {
  const Defaults d{RandomKind::WeaklyCommunicating, 50, 8, 3, 500};
  Certificate c = named("span-relation", "span(T V^k - V^k) <= 2 bellman_sup_err(k) when g* is constant");
  for (const auto& in : r.instances(d)) {
    if (span_seminorm(in.truth.solution.gain) > 1e-10) {
      ++c.skipped_instances;
      continue;
    }
    ++c.instances;
    for (const auto& [algo, sched] : span_schemes(r)) {
      const auto trace = trace_for(in, algo, sched, std::nullopt, r.iters(d));
      for (const auto& row : trace.rows)
        c.check(in.problem.label, row.k, row.residual_span, 2.0 * *row.bellman_sup_err, r.tol());
    }
  }
  return c;
}

using CertFn = Certificate (*)(Runner&);

const std::vector<std::pair<std::string, CertFn>>& registry() {
  static const std::vector<std::pair<std::string, CertFn>> table = {
      {"vi-normalized", vi_normalized},
      {"policy-error", policy_error_cert},
      {"rx-vi", rx_vi_cert},
      {"anc-vi", anc_vi_cert},
      {"rx-rvi", rx_rvi_cert},
      {"anc-rvi", anc_rvi_cert},
      {"unichain-lower", unichain_lower},
      {"multichain-lower", multichain_lower},
      {"km-diagonal", km_diagonal},
      {"span-relation", span_relation}};
  return table;
}

nlohmann::json finite_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

}  // namespace

void Certificate::check(const std::string& instance, std::size_t k, double lhs, double rhs,
                        double tol) {
  if (checks == 0) {
    k_min = k_max = k;
  } else {
    k_min = std::min(k_min, k);
    k_max = std::max(k_max, k);
  }
  ++checks;
  const double slack = rhs - lhs;
  min_slack = std::min(min_slack, slack);
  max_slack = std::max(max_slack, slack);
  if (!(lhs <= rhs + tol)) {
    ++violation_count;
    if (violations.size() < kStoredViolations) violations.push_back({instance, k, lhs, rhs});
  }
}

const std::vector<std::string>& certificate_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

std::vector<Certificate> run_certificates(const VerifyOptions& options) {
  Runner runner(options);
  std::vector<Certificate> out;
  for (const auto& [name, fn] : registry())
    if (options.cert == "all" || options.cert == name) out.push_back(fn(runner));
  if (out.empty()) throw ConfigError("unknown certificate '" + options.cert + "'");
  return out;
}

std::string certificates_json(const std::vector<Certificate>& certs) {
  nlohmann::json doc;
  bool all_pass = true;
  doc["certificates"] = nlohmann::json::array();
  for (const auto& c : certs) {
    nlohmann::json j;
    j["name"] = c.name;
    j["inequality"] = c.inequality;
    j["instances"] = c.instances;
    j["skipped_instances"] = c.skipped_instances;
    j["checks"] = c.checks;
    j["k_range"] = {c.k_min, c.k_max};
    j["min_slack"] = finite_or_null(c.min_slack);
    j["max_slack"] = finite_or_null(c.max_slack);
    j["violation_count"] = c.violation_count;
    j["violations"] = nlohmann::json::array();
    for (const auto& v : c.violations)
      j["violations"].push_back(
          {{"instance", v.instance}, {"k", v.k}, {"lhs", finite_or_null(v.lhs)}, {"rhs", finite_or_null(v.rhs)}});
    j["verdict"] = c.pass() ? "pass" : "fail";
    all_pass = all_pass && c.pass();
    doc["certificates"].push_back(j);
  }
  doc["verdict"] = all_pass ? "pass" : "fail";
  return doc.dump(2) + "\n";
}

}  // namespace avgmdp::harness
