#include "avgmdp/mdp.hpp"

#include <cmath>
#include <sstream>

namespace avgmdp {

std::string ValidationIssue::describe() const {
  std::ostringstream out;
  out.precision(17);
  switch (kind) {
    case Kind::RowNotStochastic:
      out << "RowNotStochastic(s=" << state << ", a=" << action << ", sum=" << value << ")";
      break;
    case Kind::NegativeProbability:
      out << "NegativeProbability(s=" << state << ", a=" << action << ", s'=" << next_state
          << ", p=" << value << ")";
      break;
    case Kind::NonFiniteReward:
      out << "NonFiniteReward(s=" << state << ", a=" << action << ")";
      break;
    case Kind::BadShape:
      out << "BadShape(s=" << state << ", a=" << action << ")";
      break;
  }
  return out.str();
}

std::string ValidationReport::describe() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < issues.size(); ++i) {
    if (i) out << "; ";
    out << issues[i].describe();
  }
  return out.str();
}

ValidationReport validate_mdp(const MdpTables& t) {
  using Kind = ValidationIssue::Kind;
  ValidationReport report;
  const std::size_t n = t.transition.size();
  if (n == 0 || t.reward.size() != n) {
    report.issues.push_back({Kind::BadShape});
    return report;
  }
  const std::size_t n_actions = t.transition[0].size();
  if (n_actions == 0) {
    report.issues.push_back({Kind::BadShape});
    return report;
  }
  for (std::size_t s = 0; s < n; ++s) {
    if (t.transition[s].size() != n_actions || t.reward[s].size() != n_actions) {
      report.issues.push_back({Kind::BadShape, s});
      continue;
    }
    for (std::size_t a = 0; a < n_actions; ++a) {
      const auto& row = t.transition[s][a];
      if (row.size() != n) {
        report.issues.push_back({Kind::BadShape, s, a});
        continue;
      }
      double sum = 0.0;
      bool finite = true;
      for (std::size_t next = 0; next < n; ++next) {
        const double p = row[next];
        if (!std::isfinite(p)) finite = false;
        if (p < 0.0) report.issues.push_back({Kind::NegativeProbability, s, a, next, p});
        sum += p;
      }
      if (!finite || std::abs(sum - 1.0) > kStochasticTolerance)
        report.issues.push_back({Kind::RowNotStochastic, s, a, 0, sum});
      if (!std::isfinite(t.reward[s][a]))
        report.issues.push_back({Kind::NonFiniteReward, s, a, 0, t.reward[s][a]});
    }
  }
  return report;
}

Mdp Mdp::from_tables(const MdpTables& t) {
  const ValidationReport report = validate_mdp(t);
  if (!report.ok()) throw InvalidMdp("invalid MDP: " + report.describe());

  const std::size_t n = t.transition.size();
  const std::size_t n_actions = t.transition[0].size();
  Matrix transition(n * n_actions, n);
  Matrix reward(n, n_actions);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t a = 0; a < n_actions; ++a) {
      const auto& row = t.transition[s][a];
      double sum = 0.0;
      for (double p : row) sum += p;
      for (std::size_t next = 0; next < n; ++next)
        transition(s * n_actions + a, next) = row[next] / sum;
      reward(s, a) = t.reward[s][a];
    }
  }
  return Mdp(n, n_actions, std::move(transition), std::move(reward));
}

double Mdp::q_value(std::size_t s, std::size_t a, const ValueVector& v) const {
  const auto p = transition_.row(row_index(s, a));
  double acc = 0.0;
  for (std::size_t next = 0; next < n_states_; ++next) acc += p(next) * v(next);
  return reward_(s, a) + acc;
}

Matrix Mdp::policy_matrix(const DeterministicPolicy& pi) const {
  check_policy(*this, pi);
  Matrix p(n_states_, n_states_);
  for (std::size_t s = 0; s < n_states_; ++s) p.row(s) = transition_.row(row_index(s, pi[s]));
  return p;
}

ValueVector Mdp::policy_reward(const DeterministicPolicy& pi) const {
  check_policy(*this, pi);
  ValueVector r(n_states_);
  for (std::size_t s = 0; s < n_states_; ++s) r(s) = reward_(s, pi[s]);
  return r;
}

double Mdp::reward_sup_norm() const { return reward_.cwiseAbs().maxCoeff(); }

MdpTables Mdp::to_tables() const {
  MdpTables t;
  t.transition.assign(n_states_, std::vector<std::vector<double>>(n_actions_));
  t.reward.assign(n_states_, std::vector<double>(n_actions_));
  for (std::size_t s = 0; s < n_states_; ++s) {
    for (std::size_t a = 0; a < n_actions_; ++a) {
      auto& row = t.transition[s][a];
      row.resize(n_states_);
      for (std::size_t next = 0; next < n_states_; ++next) row[next] = probability(s, a, next);
      t.reward[s][a] = reward_(s, a);
    }
  }
  return t;
}

void check_policy(const Mdp& m, const DeterministicPolicy& pi) {
  if (pi.size() != m.n_states())
    throw DimensionMismatch("policy covers " + std::to_string(pi.size()) + " states, MDP has " +
                            std::to_string(m.n_states()));
  for (std::size_t s = 0; s < pi.size(); ++s)
    if (pi[s] >= m.n_actions())
      throw DimensionMismatch("policy action " + std::to_string(pi[s]) + " at state " +
                              std::to_string(s) + " out of range");
}

void check_vector(const Mdp& m, const ValueVector& v, const char* what) {
  if (static_cast<std::size_t>(v.size()) != m.n_states())
    throw DimensionMismatch(std::string(what) + " has length " + std::to_string(v.size()) +
                            ", MDP has " + std::to_string(m.n_states()) + " states");
}

ValueVector bellman_consistency(const Mdp& m, const DeterministicPolicy& pi, const ValueVector& v) {
  check_policy(m, pi);
  check_vector(m, v, "value vector");
  ValueVector out(m.n_states());
  for (std::size_t s = 0; s < m.n_states(); ++s) out(s) = m.q_value(s, pi[s], v);
  return out;
}

OptimalityResult bellman_optimality(const Mdp& m, const ValueVector& v) {
  check_vector(m, v, "value vector");
  const std::size_t n = m.n_states();
  OptimalityResult result{ValueVector(n), DeterministicPolicy(n, 0)};
  for (std::size_t s = 0; s < n; ++s) {
    double best = m.q_value(s, 0, v);
    std::size_t arg = 0;
    for (std::size_t a = 1; a < m.n_actions(); ++a) {
      const double q = m.q_value(s, a, v);
      if (q > best) {
        best = q;
        arg = a;
      }
    }
    result.tv(s) = best;
    result.greedy[s] = arg;
  }
  return result;
}

ValueVector bellman_residual(const Mdp& m, const ValueVector& v) {
  return bellman_optimality(m, v).tv - v;
}

double sup_error(const ValueVector& x, const ValueVector& target) {
  if (x.size() != target.size())
    throw DimensionMismatch("sup_error: lengths " + std::to_string(x.size()) + " and " +
                            std::to_string(target.size()));
  return (x - target).cwiseAbs().maxCoeff();
}

double span_seminorm(const ValueVector& x) { return x.maxCoeff() - x.minCoeff(); }

double sup_norm(const ValueVector& x) { return x.cwiseAbs().maxCoeff(); }

}  // namespace avgmdp
