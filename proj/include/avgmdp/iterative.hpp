#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "avgmdp/mdp.hpp"
#include "avgmdp/schedule.hpp"

namespace avgmdp {

enum class Algorithm { VI, RxVI, AncVI, RxRVI, AncRVI };

/// "vi", "rx-vi", "anc-vi", "rx-rvi", "anc-rvi".
std::string_view to_string(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view name);
bool is_relative(Algorithm a);

struct TraceRow {
  std::size_t k = 0;
  std::optional<double> lambda;  // absent at k = 0
  ValueVector iterate;           // V^k or h^k; empty when thinned out
  ValueVector residual;          // T V^k - V^k; empty when thinned out
  DeterministicPolicy greedy;
  double residual_span = 0.0;
  std::optional<double> f_value;  // relative schemes only
  std::optional<double> drift;    // ||V^k - V^{k-1}||, k >= 1

  // Filled only when the run was given a SolutionPair.
  std::optional<double> bellman_sup_err;  // ||T V^k - V^k - g*||
  std::optional<double> normalized_err;   // ||(V^k - V^0)/alpha_k - g*||, non-relative schemes, k >= 1
  std::optional<double> policy_err;       // ||g^{pi_k} - g*||
};

struct IterationTrace {
  Algorithm algorithm;
  Schedule schedule;
  std::optional<NormalizationFn> normalization;
  ValueVector v0;
  std::size_t stride = 1;
  std::vector<TraceRow> rows;  // k = 0..iters
};

struct RunOptions {
  std::optional<SolutionPair> solution;
  /// Keep iterate and residual only on rows with k % stride == 0 and on the last row.
  std::size_t stride = 1;
};

/// V^k = T V^{k-1}.
IterationTrace run_vi(const Mdp& m, const ValueVector& v0, std::size_t iters,
                      const RunOptions& options = {});
/// V^k = lambda_k V^{k-1} + (1 - lambda_k) T V^{k-1}.
IterationTrace run_rx_vi(const Mdp& m, const ValueVector& v0, const Schedule& schedule,
                         std::size_t iters, const RunOptions& options = {});
/// V^k = lambda_k V^0 + (1 - lambda_k) T V^{k-1}.
IterationTrace run_anc_vi(const Mdp& m, const ValueVector& v0, const Schedule& schedule,
                          std::size_t iters, const RunOptions& options = {});
/// h^k = lambda_k h^{k-1} + (1 - lambda_k)(T h^{k-1} - f(h^{k-1}) 1).
IterationTrace run_rx_rvi(const Mdp& m, const ValueVector& h0, const Schedule& schedule,
                          const NormalizationFn& f, std::size_t iters,
                          const RunOptions& options = {});
/// h^k = lambda_k h^0 + (1 - lambda_k)(T h^{k-1} - f(h^{k-1}) 1).
IterationTrace run_anc_rvi(const Mdp& m, const ValueVector& h0, const Schedule& schedule,
                           const NormalizationFn& f, std::size_t iters,
                           const RunOptions& options = {});

/// Dispatches on the algorithm; f is required for the relative schemes.
IterationTrace run_algorithm(const Mdp& m, Algorithm algo, const ValueVector& v0,
                             const Schedule& schedule, const std::optional<NormalizationFn>& f,
                             std::size_t iters, const RunOptions& options = {});

/// alpha_k of the normalized iterates: k for VI, sum(1 - lambda_i) for the
/// relaxed scheme, sum_i prod_{j=i..k}(1 - lambda_j) for the anchored one.
/// Empty for the relative schemes and for k = 0.
std::optional<double> normalization_scale(Algorithm a, const Schedule& schedule, std::size_t k);

struct SpanConditionRow {
  std::size_t k;
  double remainder;  // ||(V^{k+1} - V^0) - projection|| / ||V^{k+1} - V^0||
  bool holds;
};

struct SpanConditionVerdict {
  std::vector<SpanConditionRow> rows;
  bool holds() const;
};

/**
 * Checks V^{k+1} - V^0 against the span of T V^i - V^i, i <= k, by least
 * squares. Residuals are recomputed from m. Rows whose iterates were thinned
 * out are skipped.
 */
SpanConditionVerdict check_span_condition(const Mdp& m, const IterationTrace& trace, double tol);

}  // namespace avgmdp
