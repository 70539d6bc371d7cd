#pragma once

#include <vector>

#include "avgmdp/mdp.hpp"

namespace testutil {

using avgmdp::Mdp;
using avgmdp::MdpTables;
using avgmdp::ValueVector;

inline ValueVector vec(std::initializer_list<double> xs) {
  ValueVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

/// Single-action MDP from a row-stochastic matrix and a reward vector.
inline Mdp chain_mdp(const std::vector<std::vector<double>>& p, const std::vector<double>& r) {
  MdpTables t;
  for (std::size_t s = 0; s < p.size(); ++s) {
    t.transition.push_back({p[s]});
    t.reward.push_back({r[s]});
  }
  return Mdp::from_tables(t);
}

/// s0 absorbing (r=0), s1 absorbing (r=1), s2 chooses s0 (action 0) or s1 (action 1), r=0.
inline Mdp branch_mdp() {
  MdpTables t;
  t.transition = {{{1, 0, 0}, {1, 0, 0}}, {{0, 1, 0}, {0, 1, 0}}, {{1, 0, 0}, {0, 1, 0}}};
  t.reward = {{0, 0}, {1, 1}, {0, 0}};
  return Mdp::from_tables(t);
}

/// Two states, each can stay (action 0) or switch (action 1); reward 1 for staying in s1.
inline Mdp stay_or_switch_mdp() {
  MdpTables t;
  t.transition = {{{1, 0}, {0, 1}}, {{0, 1}, {1, 0}}};
  t.reward = {{0, 0}, {1, 0}};
  return Mdp::from_tables(t);
}

}  // namespace testutil
