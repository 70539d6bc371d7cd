#include "avgmdp/harness/experiment.hpp"

#include <cmath>

#include "avgmdp/chain.hpp"
#include "avgmdp/exact_solver.hpp"
#include "avgmdp/harness/mdp_io.hpp"
#include "avgmdp/worst_case.hpp"

namespace avgmdp::harness {

Problem family_problem(LowerBoundFamily family, std::size_t n, const ValueVector& v0) {
  FamilyInstance inst = family == LowerBoundFamily::Unichain ? make_unichain_family(n, v0)
                                                             : make_multichain_family(n, v0);
  const std::string label =
      std::string(family == LowerBoundFamily::Unichain ? "unichain" : "multichain") + "_family(" +
      std::to_string(n) + ")";
  return {std::move(inst.mdp), label, family, std::move(inst.solution)};
}

Problem random_problem(RandomKind kind, std::size_t n_states, std::size_t n_actions,
                       std::uint64_t seed) {
  return {random_mdp(kind, n_states, n_actions, seed),
          std::string(to_string(kind)) + "(" + std::to_string(n_states) + "," +
              std::to_string(n_actions) + ",seed=" + std::to_string(seed) + ")",
          std::nullopt, std::nullopt};
}

Problem file_problem(const std::string& path) { return {load_mdp(path), path, std::nullopt, std::nullopt}; }

SolutionPair solve_problem(const Problem& p) {
  if (p.known_solution) return *p.known_solution;
  return solve_modified_bellman(p.mdp);
}

GroundTruth ground_truth(const Problem& p, const SolutionPair& solution, const ValueVector& v0) {
  GroundTruth t;
  t.solution = solution;
  t.inputs.dist0 = sup_error(v0, solution.bias);
  t.inputs.gnorm = sup_norm(solution.gain);
  t.inputs.rnorm = p.mdp.reward_sup_norm();
  t.inputs.v0norm = sup_norm(v0);
  t.inputs.eps = epsilon_gap(p.mdp, solution.gain);
  t.k_rx = K_rx(t.inputs);
  t.k_anc = K_anc(t.inputs);
  return t;
}

namespace {

std::optional<double> applicable_bound(Algorithm algo, const Schedule& schedule, std::size_t k,
                                       const GroundTruth& truth) {
  if (k == 0 || algo == Algorithm::VI) return std::nullopt;
  const auto& in = truth.inputs;
  const bool fixes_gain = std::isinf(in.eps);
  if (algo == Algorithm::RxVI || algo == Algorithm::RxRVI) {
    const bool half = schedule.kind() == Schedule::Kind::Constant && schedule.at(1) == 0.5;
    if (half) {
      if (static_cast<double>(k) > std::ceil(truth.k_rx)) return rx_vi_rate(k, truth.k_rx, in.dist0);
      return std::nullopt;
    }
    if (fixes_gain) return relaxed_bellman_rate(schedule, k, 0, in.dist0);
    return std::nullopt;
  }
  if (schedule.kind() == Schedule::Kind::Anchor) {
    if (static_cast<double>(k) > std::ceil(truth.k_anc))
      return anc_vi_rate(k, truth.k_anc, in.dist0, in.gnorm);
    return std::nullopt;
  }
  if (fixes_gain && schedule.nonincreasing_through(k))
    return general_rates(schedule, k, 0, in.dist0, in.gnorm).anc_bellman_fixed_gain;
  return std::nullopt;
}

}  // namespace

std::optional<double> upper_bound_at(Algorithm algo, const Schedule& schedule, std::size_t k,
                                     const GroundTruth& truth) {
  const auto bound = applicable_bound(algo, schedule, k, truth);
  if (bound && std::isinf(*bound)) return std::nullopt;
  return bound;
}

std::optional<double> lower_bound_at(const Problem& p, std::size_t k, double dist0) {
  if (!p.family) return std::nullopt;
  const std::size_t n = p.mdp.n_states();
  const std::size_t reach = *p.family == LowerBoundFamily::Unichain ? 2 : 3;
  if (k + reach > n) return std::nullopt;
  return lower_bound(k, dist0, *p.family);
}

Experiment run_experiment(const Problem& p, const std::optional<GroundTruth>& truth, Algorithm algo,
                          const Schedule& schedule, const std::optional<NormalizationFn>& f,
                          const ValueVector& v0, std::size_t iters, std::size_t stride) {
  RunOptions options;
  options.stride = stride;
  if (truth) options.solution = truth->solution;
  Experiment e{run_algorithm(p.mdp, algo, v0, schedule, f, iters, options), {}, {}};
  for (const auto& row : e.trace.rows) {
    e.upper.push_back(truth ? upper_bound_at(algo, schedule, row.k, *truth) : std::nullopt);
    e.lower.push_back(truth ? lower_bound_at(p, row.k, truth->inputs.dist0) : std::nullopt);
  }
  return e;
}

}  // namespace avgmdp::harness
