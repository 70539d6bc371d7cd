#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>

#include "avgmdp/mdp.hpp"

namespace avgmdp::harness {

/// mt19937_64 with explicit transforms so draws match across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// 53-bit uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard exponential, -log(1 - u).
  double exponential();
  std::size_t index(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

enum class RandomKind { General, Unichain, WeaklyCommunicating };

std::string_view to_string(RandomKind k);
std::optional<RandomKind> parse_random_kind(std::string_view name);

/**
 * random_general: every row uniform on the simplex, rewards uniform in [-1, 1].
 * random_unichain: each row is 0.95 * simplex + 0.05 * e_0.
 * random_weakly_comm: the first ceil(n/2) states form a closed block whose
 * rows are sparse simplices over the block; action 0 also sends 0.05 mass
 * around a ring through the block. Every row sends 0.05 mass to a uniformly
 * chosen block state, and rows outside the block are sparse over all states.
 * Throws BadSize when a dimension is zero.
 */
Mdp random_mdp(RandomKind kind, std::size_t n_states, std::size_t n_actions, std::uint64_t seed);

/// Uniform in [-1, 1]^n.
ValueVector random_vector(std::size_t n, std::uint64_t seed);

}  // namespace avgmdp::harness
