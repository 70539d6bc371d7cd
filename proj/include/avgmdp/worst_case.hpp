#pragma once

#include <cstddef>

#include "avgmdp/mdp.hpp"

namespace avgmdp {

/// A lower-bound instance with its closed-form solution.
struct FamilyInstance {
  Mdp mdp;
  SolutionPair solution;
};

/**
 * Single-action chain on states 0..n-1 (docs number them 1..n):
 * state j moves to j-1, state 0 moves to n-2, state n-1 is transient.
 * Reward 1 at state 0, so g* = 1/(n-1) and h*_i = (n-1-2i)/(2n-2) for 0-based i.
 *
 * A nonempty v0 shifts the rewards to r = (v0 - P v0) + e_0 and h* to v0 + h*,
 * so T V = T_0(V - v0) + v0 with T_0 the unshifted operator.
 * Throws BadSize for n < 3, DimensionMismatch for a v0 of the wrong length.
 */
FamilyInstance make_unichain_family(std::size_t n, const ValueVector& v0 = ValueVector());

/**
 * Single-action chain with absorbing states 0 and n-1 and j -> j-1 for
 * 1 <= j <= n-2. Reward 1 at states 1 and n-1, so g* = e_{n-1} and
 * h* = [-1/2, 1/2, ..., 1/2, 0]. Same v0 shift as the unichain family.
 * Throws BadSize for n < 4.
 */
FamilyInstance make_multichain_family(std::size_t n, const ValueVector& v0 = ValueVector());

}  // namespace avgmdp
