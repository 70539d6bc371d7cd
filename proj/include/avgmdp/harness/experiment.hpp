#pragma once

#include <optional>
#include <string>
#include <vector>

#include "avgmdp/bounds.hpp"
#include "avgmdp/harness/random_mdp.hpp"
#include "avgmdp/iterative.hpp"

namespace avgmdp::harness {

/// An MDP plus what is known about it up front.
struct Problem {
  Mdp mdp;
  std::string label;
  std::optional<LowerBoundFamily> family;
  std::optional<SolutionPair> known_solution;  // closed form for the families
};

/// The family shift is applied with v0 so that runs start from the anchor of the construction.
Problem family_problem(LowerBoundFamily family, std::size_t n, const ValueVector& v0);
Problem random_problem(RandomKind kind, std::size_t n_states, std::size_t n_actions,
                       std::uint64_t seed);
Problem file_problem(const std::string& path);

/// Exact solution and the constants derived from it for one starting vector.
struct GroundTruth {
  SolutionPair solution;
  BoundInputs inputs;
  double k_rx = 0.0;
  double k_anc = 0.0;
};

/// Uses the closed form when the problem has one, the exact solver otherwise.
SolutionPair solve_problem(const Problem& p);
GroundTruth ground_truth(const Problem& p, const SolutionPair& solution, const ValueVector& v0);

/**
 * The bound on bellman_sup_err at row k that applies to this run, if any:
 * the lambda = 1/2 rate with K_rx (or the general relaxed rate when every
 * policy fixes g*), the anchored rate with K_anc (or the K = 0 monotone form),
 * nothing for plain VI. Relative schemes share their counterpart's bound.
 */
std::optional<double> upper_bound_at(Algorithm algo, const Schedule& schedule, std::size_t k,
                                     const GroundTruth& truth);

/// Lower bound on bellman_sup_err at row k for family instances within the theorem's range.
std::optional<double> lower_bound_at(const Problem& p, std::size_t k, double dist0);

struct Experiment {
  IterationTrace trace;
  std::vector<std::optional<double>> upper;
  std::vector<std::optional<double>> lower;
};

Experiment run_experiment(const Problem& p, const std::optional<GroundTruth>& truth, Algorithm algo,
                          const Schedule& schedule, const std::optional<NormalizationFn>& f,
                          const ValueVector& v0, std::size_t iters, std::size_t stride = 1);

}  // namespace avgmdp::harness
