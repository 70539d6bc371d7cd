#include "avgmdp/exact_solver.hpp"

#include <algorithm>
#include <cmath>

#include "avgmdp/chain.hpp"
#include "avgmdp/linprog.hpp"
#include "avgmdp/policy_enumeration.hpp"

namespace avgmdp {

SolutionVerdict verify_solution(const Mdp& m, const ValueVector& g, const ValueVector& h, double tol) {
  check_vector(m, g, "g");
  check_vector(m, h, "h");
  const std::size_t n = m.n_states();
  SolutionVerdict verdict;
  DeterministicPolicy policy(n, 0);
  bool every_state_attained = true;
  for (std::size_t s = 0; s < n; ++s) {
    double best_gain = -std::numeric_limits<double>::infinity();
    double best_bias = -std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < m.n_actions(); ++a) {
      best_gain = std::max(best_gain, m.row(s, a).dot(g));
      best_bias = std::max(best_bias, m.q_value(s, a, h));
    }
    verdict.gain_residual = std::max(verdict.gain_residual, std::abs(best_gain - g(s)));
    verdict.bias_residual = std::max(verdict.bias_residual, std::abs(best_bias - h(s) - g(s)));

    bool attained = false;
    for (std::size_t a = 0; a < m.n_actions() && !attained; ++a) {
      if (std::abs(m.row(s, a).dot(g) - g(s)) <= tol &&
          std::abs(m.q_value(s, a, h) - h(s) - g(s)) <= tol) {
        policy[s] = a;
        attained = true;
      }
    }
    every_state_attained = every_state_attained && attained;
  }
  verdict.gain_equation = verdict.gain_residual <= tol;
  verdict.bias_equation = verdict.bias_residual <= tol;
  verdict.common_policy = every_state_attained;
  if (every_state_attained) verdict.policy = policy;
  return verdict;
}

ValueVector optimal_gain(const Mdp& m) {
  ValueVector best = ValueVector::Constant(m.n_states(), -std::numeric_limits<double>::infinity());
  for_each_policy(m, [&](const DeterministicPolicy& pi) {
    best = best.cwiseMax(policy_gain(m, pi));
    return true;
  });
  return best;
}

namespace {

struct Candidate {
  ValueVector base;                  // D r^pi
  std::vector<ValueVector> harmonic;  // absorption probability into each recurrent class
};

Candidate candidate_family(const Mdp& m, const DeterministicPolicy& pi) {
  Candidate out;
  out.base = deviation_matrix(m, pi) * m.policy_reward(pi);
  const Matrix p = m.policy_matrix(pi);
  const Matrix limit = cesaro_limit(p);
  for (const auto& cls : decompose(p).recurrent_classes) {
    ValueVector phi = ValueVector::Zero(m.n_states());
    for (std::size_t s : cls) phi += limit.col(s);
    out.harmonic.push_back(phi);
  }
  return out;
}

/// Offsets making base + sum_c u_c phi_c satisfy the bias inequalities,
/// minimizing first the sup norm of h and then its l1 norm.
std::optional<ValueVector> fit_offsets(const Mdp& m, const ValueVector& g, const Candidate& cand) {
  const std::size_t n = m.n_states();
  const std::size_t n_classes = cand.harmonic.size();
  const std::size_t n_bellman = n * m.n_actions();
  constexpr double kSlack = 1e-10;

  // Bellman rows shared by both stages: coefficients on the offsets only.
  Matrix bellman(n_bellman, n_classes);
  ValueVector bellman_rhs(n_bellman);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t a = 0; a < m.n_actions(); ++a) {
      const std::size_t row = s * m.n_actions() + a;
      for (std::size_t c = 0; c < n_classes; ++c)
        bellman(row, c) = m.row(s, a).dot(cand.harmonic[c]) - cand.harmonic[c](s);
      bellman_rhs(row) = cand.base(s) + g(s) - m.q_value(s, a, cand.base) + kSlack;
    }
  Matrix phi(n, n_classes);
  for (std::size_t c = 0; c < n_classes; ++c) phi.col(c) = cand.harmonic[c];

  // Stage 1: variables [u, t], minimize t with |h(s)| <= t.
  const std::size_t v1 = n_classes + 1;
  Matrix a1 = Matrix::Zero(n_bellman + 2 * n, v1);
  ValueVector b1(n_bellman + 2 * n);
  a1.topLeftCorner(n_bellman, n_classes) = bellman;
  b1.head(n_bellman) = bellman_rhs;
  for (std::size_t s = 0; s < n; ++s) {
    const std::size_t up = n_bellman + 2 * s;
    a1.block(up, 0, 1, n_classes) = phi.row(s);
    a1(up, n_classes) = -1.0;
    b1(up) = -cand.base(s);
    a1.block(up + 1, 0, 1, n_classes) = -phi.row(s);
    a1(up + 1, n_classes) = -1.0;
    b1(up + 1) = cand.base(s);
  }
  ValueVector c1 = ValueVector::Zero(v1);
  c1(n_classes) = 1.0;
  const lp::Result stage1 = lp::minimize(a1, b1, c1);
  if (stage1.status != lp::Status::Optimal) return std::nullopt;
  const double radius = stage1.x(n_classes);

  // Stage 2: variables [u, w], minimize sum w with |h(s)| <= w(s) and |h(s)| <= radius.
  const std::size_t v2 = n_classes + n;
  Matrix a2 = Matrix::Zero(n_bellman + 4 * n, v2);
  ValueVector b2(n_bellman + 4 * n);
  a2.topLeftCorner(n_bellman, n_classes) = bellman;
  b2.head(n_bellman) = bellman_rhs;
  const double cap = radius + 1e-12 * (1.0 + std::abs(radius));
  for (std::size_t s = 0; s < n; ++s) {
    const std::size_t r = n_bellman + 4 * s;
    a2.block(r, 0, 1, n_classes) = phi.row(s);
    b2(r) = cap - cand.base(s);
    a2.block(r + 1, 0, 1, n_classes) = -phi.row(s);
    b2(r + 1) = cap + cand.base(s);
    a2.block(r + 2, 0, 1, n_classes) = phi.row(s);
    a2(r + 2, n_classes + s) = -1.0;
    b2(r + 2) = -cand.base(s);
    a2.block(r + 3, 0, 1, n_classes) = -phi.row(s);
    a2(r + 3, n_classes + s) = -1.0;
    b2(r + 3) = cand.base(s);
  }
  ValueVector c2 = ValueVector::Zero(v2);
  c2.tail(n).setOnes();
  const lp::Result stage2 = lp::minimize(a2, b2, c2);
  const ValueVector offsets = stage2.status == lp::Status::Optimal
                                  ? ValueVector(stage2.x.head(n_classes))
                                  : ValueVector(stage1.x.head(n_classes));
  return ValueVector(cand.base + phi * offsets);
}

}  // namespace

SolutionPair solve_modified_bellman(const Mdp& m, double tol) {
  // Gains are kept from the first pass when the enumeration is small enough.
  constexpr std::size_t kCacheLimit = 1'000'000;
  const bool cache = count_policies(m) <= kCacheLimit;
  std::vector<ValueVector> gains;
  ValueVector g_star = ValueVector::Constant(m.n_states(), -std::numeric_limits<double>::infinity());
  for_each_policy(m, [&](const DeterministicPolicy& pi) {
    ValueVector g = policy_gain(m, pi);
    g_star = g_star.cwiseMax(g);
    if (cache) gains.push_back(std::move(g));
    return true;
  });

  std::optional<SolutionPair> found;
  std::size_t index = 0;
  for_each_policy(m, [&](const DeterministicPolicy& pi) {
    const std::size_t i = index++;
    const Matrix p = m.policy_matrix(pi);
    if (sup_error(p * g_star, g_star) > tol) return true;
    if (sup_error(cache ? gains[i] : policy_gain(m, pi), g_star) > tol) return true;
    const auto h = fit_offsets(m, g_star, candidate_family(m, pi));
    if (!h) return true;
    const SolutionVerdict verdict = verify_solution(m, g_star, *h, tol);
    if (!verdict.holds()) return true;
    found = SolutionPair{g_star, *h, *verdict.policy};
    return false;
  });
  if (!found)
    throw NoVerifiedCandidate(
        "no gain-optimal policy yielded a bias satisfying the modified Bellman equations");
  return *found;
}

}  // namespace avgmdp
