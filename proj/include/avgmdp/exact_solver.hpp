#pragma once

#include <optional>

#include "avgmdp/mdp.hpp"

namespace avgmdp {

/// Default tolerance for certifying a solution of the modified Bellman equations.
inline constexpr double kVerifyTolerance = 1e-9;

struct SolutionVerdict {
  bool gain_equation = false;  // max_a P(s,a) g = g(s)
  bool bias_equation = false;  // max_a r(s,a) + P(s,a) h = h(s) + g(s)
  bool common_policy = false;  // one action per state attains both
  double gain_residual = 0.0;  // max_s |max_a P(s,a) g - g(s)|
  double bias_residual = 0.0;  // max_s |max_a q(s,a,h) - h(s) - g(s)|
  std::optional<DeterministicPolicy> policy;

  bool holds() const { return gain_equation && bias_equation && common_policy; }
};

SolutionVerdict verify_solution(const Mdp& m, const ValueVector& g, const ValueVector& h, double tol);

/// Componentwise maximum of policy_gain over every deterministic policy.
ValueVector optimal_gain(const Mdp& m);

/**
 * Ground-truth (g*, h*, pi*) by enumeration and verification.
 *
 * g* is the componentwise maximum of the enumerated policy gains. For each
 * gain-optimal policy (in enumeration order) the candidate bias is
 * D r^pi plus one free offset per recurrent class, extended harmonically to
 * transient states. The offsets come from a small LP enforcing the bias
 * equation at every state; among feasible offsets the one with the smallest
 * sup norm is taken, then the smallest l1 norm. The first candidate passing
 * verify_solution wins.
 *
 * Throws TooManyPolicies or NoVerifiedCandidate.
 */
SolutionPair solve_modified_bellman(const Mdp& m, double tol = kVerifyTolerance);

}  // namespace avgmdp
