#pragma once

#include <cstdint>
#include <functional>

#include "avgmdp/mdp.hpp"

namespace avgmdp {

/// Default cap on |A|^|S| for exhaustive enumeration.
inline constexpr std::uint64_t kDefaultMaxPolicies = 10'000'000;

/// Enumeration cap; AVGMDP_MAX_POLICIES overrides the default.
std::uint64_t max_policies();

/// |A|^|S|, throwing TooManyPolicies when it exceeds max_policies().
std::uint64_t count_policies(const Mdp& m);

/// Visits every deterministic policy in lexicographic order of the action
/// vector (state 0 most significant). The visitor returns false to stop.
void for_each_policy(const Mdp& m, const std::function<bool(const DeterministicPolicy&)>& visit);

}  // namespace avgmdp
