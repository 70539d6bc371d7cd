#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "avgmdp/bounds.hpp"
#include "avgmdp/harness/random_mdp.hpp"
#include "avgmdp/schedule.hpp"

namespace avgmdp::harness {

struct Violation {
  std::string instance;
  std::size_t k;
  double lhs;
  double rhs;
};

/// Outcome of checking one inequality lhs <= rhs + tol over many (instance, k) pairs.
struct Certificate {
  std::string name;
  std::string inequality;
  std::size_t instances = 0;
  std::size_t skipped_instances = 0;
  std::size_t checks = 0;
  std::size_t k_min = 0;
  std::size_t k_max = 0;
  double min_slack = kInfinity;   // min of rhs - lhs
  double max_slack = -kInfinity;  // max of rhs - lhs
  std::size_t violation_count = 0;
  std::vector<Violation> violations;  // first few, for diagnostics

  void check(const std::string& instance, std::size_t k, double lhs, double rhs, double tol);
  bool pass() const { return violation_count == 0 && checks > 0; }
};

struct VerifyOptions {
  std::string cert = "all";
  std::optional<RandomKind> random;     // instance kind override
  std::optional<std::size_t> count;     // number of random instances
  std::optional<std::size_t> states;    // states (or family size)
  std::optional<std::size_t> actions;
  std::optional<std::size_t> iters;     // iterations, or k_max for km-diagonal
  std::optional<Schedule> schedule;     // overrides the schedule a certificate runs
  std::optional<std::string> family;    // run on a lower-bound family instead of random MDPs
  std::optional<NormalizationFn> normalization;
  std::uint64_t seed = 1;
  double tol = 1e-12;
};

/// vi-normalized policy-error rx-vi anc-vi rx-rvi anc-rvi unichain-lower multichain-lower
/// km-diagonal span-relation.
const std::vector<std::string>& certificate_names();

/// Throws ConfigError for an unknown name. "all" runs every certificate with its defaults.
std::vector<Certificate> run_certificates(const VerifyOptions& options);

/// {"certificates": [...], "verdict": "pass"|"fail"}.
std::string certificates_json(const std::vector<Certificate>& certs);

}  // namespace avgmdp::harness
