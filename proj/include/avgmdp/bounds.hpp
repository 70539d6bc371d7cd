#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "avgmdp/schedule.hpp"

namespace avgmdp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Norms entering the burn-in constants. eps = kInfinity when every policy fixes g*.
struct BoundInputs {
  double dist0 = 0.0;   // ||V0 - h*||
  double gnorm = 0.0;   // ||g*||
  double rnorm = 0.0;   // ||r||
  double v0norm = 0.0;  // ||V0||
  double eps = kInfinity;
};

/// (2||r|| + 4||V0|| + 16 dist0 + 2||g*||) / eps; 0 when eps is infinite.
double K_rx(const BoundInputs& b);
/// (3||r|| + 12 dist0 + 3||g*||) / eps; 0 when eps is infinite.
double K_anc(const BoundInputs& b);

/// 4 dist0 / sqrt(pi (k - K)) for the relaxed scheme at lambda = 1/2. OutOfRange unless k > K.
double rx_vi_rate(std::size_t k, double K, double dist0);
/// 8/(k+1) dist0 + K/(k+1) gnorm for the anchored scheme. OutOfRange unless k > K.
double anc_vi_rate(std::size_t k, double K, double dist0, double gnorm);
/// 2/k dist0 for the normalized VI iterates. OutOfRange for k = 0.
double vi_normalized_rate(std::size_t k, double dist0);

/// Rates for arbitrary schedules, all evaluated at the same k.
struct GeneralRates {
  double rx_normalized;   // 2(1 - prod lambda_i) / sum(1 - lambda_i) dist0
  double rx_bellman;      // 2 dist0 / sqrt(pi sum_{i>K} lambda_i (1 - lambda_i))
  double anc_normalized;  // 2(1 - lambda_k) / sum_i prod_{j>=i}(1 - lambda_j) dist0
  double anc_bellman;     // monotone schedules only, see general_rates
  double anc_bellman_fixed_gain;  // the K = 0 form for MDPs where every policy fixes g*
};

/**
 * All general-schedule rates at iteration k >= 1 with integer burn-in K < k.
 * The anchored Bellman forms take lambda_0 = 1, so their g* term vanishes
 * at K = 0. Throws SchedulePreconditionViolated when the schedule increases
 * somewhere in 1..k, OutOfRange unless 0 <= K < k.
 */
GeneralRates general_rates(const Schedule& schedule, std::size_t k, std::size_t K, double dist0,
                           double gnorm);

/// 2 dist0 / sqrt(pi sum_{K<i<=k} lambda_i (1 - lambda_i)); infinite when the sum is 0.
/// Needs no monotonicity. OutOfRange unless K < k.
double relaxed_bellman_rate(const Schedule& schedule, std::size_t k, std::size_t K, double dist0);

enum class LowerBoundFamily { Unichain, Multichain };

/// 1/(k+1) dist0 (unichain) or 2/(k+1) dist0 (multichain).
double lower_bound(std::size_t k, double dist0, LowerBoundFamily family);

/// a^k_j table and the diagonal c_{k+1,k} of the c recursion, with lambda_0 = 0.
struct KmTable {
  std::size_t k_max = 0;
  std::vector<std::vector<double>> a;  // a[k][j], 0 <= j <= k <= k_max
  std::vector<double> c_next;          // c_next[k] = c_{k+1,k}, 0 <= k <= k_max
  double max_row_sum_error = 0.0;      // max_k |sum_j a[k][j] - 1|

  struct DiagonalRow {
    std::size_t k;
    double lhs;  // c_{k+1,k} / (1 - lambda_{k+1})
    double rhs;  // 2 / sqrt(pi sum_{i<=k} lambda_i (1 - lambda_i))
  };
  std::vector<DiagonalRow> diagonal;  // 1 <= k <= k_max
};

inline constexpr std::size_t kMaxKmOrder = 300;

/// O(k_max^3). Throws OutOfRange past kMaxKmOrder.
KmTable km_coefficients(const Schedule& schedule, std::size_t k_max);

}  // namespace avgmdp
