#pragma once

#include <limits>
#include <string_view>
#include <vector>

#include "avgmdp/mdp.hpp"

namespace avgmdp {

/// Recurrent classes and transient states of a stochastic matrix. Classes are
/// sorted by their smallest state; states inside a class are ascending.
struct ChainDecomposition {
  std::vector<std::vector<std::size_t>> recurrent_classes;
  std::vector<std::size_t> transient_states;
};

enum class MdpClass { Unichain, WeaklyCommunicatingNotUnichain, MultichainGeneral };

std::string_view to_string(MdpClass c);

/// SCCs of the positive-probability graph of p; closed SCCs are recurrent.
ChainDecomposition decompose(const Matrix& p);

ChainDecomposition policy_chain(const Mdp& m, const DeterministicPolicy& pi);

/// Exhaustive over deterministic policies; throws TooManyPolicies past the guard.
MdpClass classify(const Mdp& m);

/**
 * Cesaro limit P* of a row-stochastic matrix, built structurally: each
 * recurrent class contributes its stationary row, transient rows mix those
 * rows with their absorption probabilities.
 */
Matrix cesaro_limit(const Matrix& p);

/// g^pi = P*^pi r^pi.
ValueVector policy_gain(const Mdp& m, const DeterministicPolicy& pi);

/// D = (I - P + P*)^{-1} (I - P*) for P = P^pi.
Matrix deviation_matrix(const Mdp& m, const DeterministicPolicy& pi);

/// sup_error(policy_gain(m, pi), g_star).
double policy_error(const Mdp& m, const DeterministicPolicy& pi, const ValueVector& g_star);

/// Threshold below which ||P^pi g* - g*|| counts as fixing g*.
inline constexpr double kGainFixTolerance = 1e-10;

/// inf over deterministic pi with P^pi g* != g* of ||P^pi g* - g*||_inf;
/// +infinity when every policy fixes g*.
double epsilon_gap(const Mdp& m, const ValueVector& g_star);

}  // namespace avgmdp
