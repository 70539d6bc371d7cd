#include "avgmdp/worst_case.hpp"

#include <string>

namespace avgmdp {

namespace {

/// Builds the single-action instance with successor next[s] and base reward,
/// applying the v0 shift to rewards and bias.
FamilyInstance build(const std::vector<std::size_t>& next, ValueVector reward, ValueVector gain,
                     ValueVector bias, const ValueVector& v0) {
  const std::size_t n = next.size();
  if (v0.size() != 0 && static_cast<std::size_t>(v0.size()) != n)
    throw DimensionMismatch("v0 has length " + std::to_string(v0.size()) + ", family has " +
                            std::to_string(n) + " states");
  if (v0.size() != 0) {
    for (std::size_t s = 0; s < n; ++s) reward(s) += v0(s) - v0(next[s]);
    bias += v0;
  }
  MdpTables t;
  t.transition.assign(n, std::vector<std::vector<double>>(1, std::vector<double>(n, 0.0)));
  t.reward.assign(n, std::vector<double>(1, 0.0));
  for (std::size_t s = 0; s < n; ++s) {
    t.transition[s][0][next[s]] = 1.0;
    t.reward[s][0] = reward(s);
  }
  return {Mdp::from_tables(t), SolutionPair{std::move(gain), std::move(bias), DeterministicPolicy(n, 0)}};
}

}  // namespace

FamilyInstance make_unichain_family(std::size_t n, const ValueVector& v0) {
  if (n < 3) throw BadSize("unichain family needs n >= 3, got " + std::to_string(n));
  std::vector<std::size_t> next(n);
  next[0] = n - 2;
  for (std::size_t s = 1; s < n; ++s) next[s] = s - 1;
  ValueVector reward = ValueVector::Zero(n);
  reward(0) = 1.0;
  const double denom = 2.0 * static_cast<double>(n) - 2.0;
  ValueVector bias(n);
  for (std::size_t i = 0; i < n; ++i)
    bias(i) = (static_cast<double>(n) - 1.0 - 2.0 * static_cast<double>(i)) / denom;
  const ValueVector gain = ValueVector::Constant(n, 1.0 / (static_cast<double>(n) - 1.0));
  return build(next, reward, gain, bias, v0);
}

FamilyInstance make_multichain_family(std::size_t n, const ValueVector& v0) {
  if (n < 4) throw BadSize("multichain family needs n >= 4, got " + std::to_string(n));
  std::vector<std::size_t> next(n);
  next[0] = 0;
  next[n - 1] = n - 1;
  for (std::size_t s = 1; s + 1 < n; ++s) next[s] = s - 1;
  ValueVector reward = ValueVector::Zero(n);
  reward(1) = 1.0;
  reward(n - 1) = 1.0;
  ValueVector gain = ValueVector::Zero(n);
  gain(n - 1) = 1.0;
  ValueVector bias = ValueVector::Constant(n, 0.5);
  bias(0) = -0.5;
  bias(n - 1) = 0.0;
  return build(next, reward, gain, bias, v0);
}

}  // namespace avgmdp
