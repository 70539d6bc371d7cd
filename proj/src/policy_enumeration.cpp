#include "avgmdp/policy_enumeration.hpp"

#include <cstdlib>
#include <string>

namespace avgmdp {

std::uint64_t max_policies() {
  if (const char* env = std::getenv("AVGMDP_MAX_POLICIES")) {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return value;
  }
  return kDefaultMaxPolicies;
}

std::uint64_t count_policies(const Mdp& m) {
  const std::uint64_t cap = max_policies();
  std::uint64_t count = 1;
  for (std::size_t s = 0; s < m.n_states(); ++s) {
    count *= m.n_actions();
    if (count > cap)
      throw TooManyPolicies(std::to_string(m.n_actions()) + "^" + std::to_string(m.n_states()) +
                            " deterministic policies exceed the cap of " + std::to_string(cap));
  }
  return count;
}

void for_each_policy(const Mdp& m, const std::function<bool(const DeterministicPolicy&)>& visit) {
  count_policies(m);
  const std::size_t n = m.n_states();
  DeterministicPolicy pi(n, 0);
  while (true) {
    if (!visit(pi)) return;
    std::size_t s = n;
    while (s > 0) {
      --s;
      if (++pi[s] < m.n_actions()) break;
      pi[s] = 0;
      if (s == 0) return;
    }
  }
}

}  // namespace avgmdp
