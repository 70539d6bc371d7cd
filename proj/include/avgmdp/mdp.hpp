#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "avgmdp/errors.hpp"

namespace avgmdp {

/// Real vector indexed by states: iterates, gains, biases.
using ValueVector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Row-stochastic tolerance applied when an Mdp is loaded.
inline constexpr double kStochasticTolerance = 1e-12;

/// Maps each state index to an action index.
class DeterministicPolicy {
 public:
  DeterministicPolicy() = default;
  explicit DeterministicPolicy(std::vector<std::size_t> action_of)
      : action_of_(std::move(action_of)) {}
  DeterministicPolicy(std::size_t n_states, std::size_t action)
      : action_of_(n_states, action) {}

  std::size_t size() const { return action_of_.size(); }
  std::size_t operator[](std::size_t s) const { return action_of_[s]; }
  std::size_t& operator[](std::size_t s) { return action_of_[s]; }
  const std::vector<std::size_t>& actions() const { return action_of_; }

  friend bool operator==(const DeterministicPolicy&,
                         const DeterministicPolicy&) = default;

 private:
  std::vector<std::size_t> action_of_;
};

/// One entry of a validation report.
struct ValidationIssue {
  enum class Kind { RowNotStochastic, NegativeProbability, NonFiniteReward, BadShape };
  Kind kind;
  std::size_t state = 0;
  std::size_t action = 0;
  std::size_t next_state = 0;
  double value = 0.0;

  std::string describe() const;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
  std::string describe() const;
};

/// Raw nested tables as read from a file: transition[s][a][s'], reward[s][a].
struct MdpTables {
  std::vector<std::vector<std::vector<double>>> transition;
  std::vector<std::vector<double>> reward;
};

/// Checks the Mdp invariants on raw tables without constructing anything.
ValidationReport validate_mdp(const MdpTables& tables);

/**
 * Finite average-reward MDP. Immutable after construction.
 *
 * Transition rows are validated to 1e-12 and renormalized once, so every
 * row of a constructed Mdp sums to one up to a single rounding.
 */
class Mdp {
 public:
  /// Throws InvalidMdp carrying the full validation report.
  static Mdp from_tables(const MdpTables& tables);

  std::size_t n_states() const { return n_states_; }
  std::size_t n_actions() const { return n_actions_; }

  double probability(std::size_t s, std::size_t a, std::size_t next) const {
    return transition_(row_index(s, a), next);
  }
  double reward(std::size_t s, std::size_t a) const { return reward_(s, a); }

  /// Distribution over next states for the pair (s, a).
  auto row(std::size_t s, std::size_t a) const { return transition_.row(row_index(s, a)); }

  /// r(s,a) + sum_s' P(s'|s,a) v(s'). Every operator goes through this.
  double q_value(std::size_t s, std::size_t a, const ValueVector& v) const;

  /// P^pi as a dense n x n matrix.
  Matrix policy_matrix(const DeterministicPolicy& pi) const;
  /// r^pi.
  ValueVector policy_reward(const DeterministicPolicy& pi) const;

  /// max |r(s,a)|.
  double reward_sup_norm() const;

  MdpTables to_tables() const;

 private:
  Mdp(std::size_t n_states, std::size_t n_actions, Matrix transition, Matrix reward)
      : n_states_(n_states),
        n_actions_(n_actions),
        transition_(std::move(transition)),
        reward_(std::move(reward)) {}

  std::size_t row_index(std::size_t s, std::size_t a) const { return s * n_actions_ + a; }

  std::size_t n_states_;
  std::size_t n_actions_;
  Matrix transition_;  // (n_states * n_actions) x n_states
  Matrix reward_;      // n_states x n_actions
};

/// Optimal gain, a bias solving the modified Bellman equations and a policy
/// attaining both maxima.
struct SolutionPair {
  ValueVector gain;
  ValueVector bias;
  DeterministicPolicy attaining_policy;
};

void check_policy(const Mdp& m, const DeterministicPolicy& pi);
void check_vector(const Mdp& m, const ValueVector& v, const char* what);

/// T^pi v = r^pi + P^pi v.
ValueVector bellman_consistency(const Mdp& m, const DeterministicPolicy& pi, const ValueVector& v);

struct OptimalityResult {
  ValueVector tv;
  DeterministicPolicy greedy;
};

/// T v with the greedy policy; ties go to the lowest action index.
OptimalityResult bellman_optimality(const Mdp& m, const ValueVector& v);

/// T v - v.
ValueVector bellman_residual(const Mdp& m, const ValueVector& v);

/// max_s |x[s] - target[s]|.
double sup_error(const ValueVector& x, const ValueVector& target);

/// max_i x_i - min_i x_i.
double span_seminorm(const ValueVector& x);

double sup_norm(const ValueVector& x);

}  // namespace avgmdp
