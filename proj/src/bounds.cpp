#include "avgmdp/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>

namespace avgmdp {

namespace {

constexpr double kLogSpaceThreshold = 1e-8;

/// Product of the factors, switching to a log-space sum once any factor is tiny.
double stable_product(const std::vector<double>& factors) {
  bool tiny = false;
  for (double f : factors)
    if (f < kLogSpaceThreshold) tiny = true;
  if (!tiny) {
    double p = 1.0;
    for (double f : factors) p *= f;
    return p;
  }
  double log_sum = 0.0;
  for (double f : factors) {
    if (f <= 0.0) return 0.0;
    log_sum += std::log(f);
  }
  return std::exp(log_sum);
}

void require_after_burn_in(std::size_t k, double K) {
  if (!(static_cast<double>(k) > K))
    throw OutOfRange("rate needs k > K, got k = " + std::to_string(k) + ", K = " + std::to_string(K));
}

}  // namespace

double K_rx(const BoundInputs& b) {
  if (std::isinf(b.eps)) return 0.0;
  return (2.0 * b.rnorm + 4.0 * b.v0norm + 16.0 * b.dist0 + 2.0 * b.gnorm) / b.eps;
}

double K_anc(const BoundInputs& b) {
  if (std::isinf(b.eps)) return 0.0;
  return (3.0 * b.rnorm + 12.0 * b.dist0 + 3.0 * b.gnorm) / b.eps;
}

double rx_vi_rate(std::size_t k, double K, double dist0) {
  require_after_burn_in(k, K);
  return 4.0 * dist0 / std::sqrt(std::numbers::pi * (static_cast<double>(k) - K));
}

double anc_vi_rate(std::size_t k, double K, double dist0, double gnorm) {
  require_after_burn_in(k, K);
  const double k1 = static_cast<double>(k) + 1.0;
  return 8.0 / k1 * dist0 + K / k1 * gnorm;
}

double vi_normalized_rate(std::size_t k, double dist0) {
  if (k == 0) throw OutOfRange("normalized rate needs k >= 1");
  return 2.0 * dist0 / static_cast<double>(k);
}

GeneralRates general_rates(const Schedule& schedule, std::size_t k, std::size_t K, double dist0,
                           double gnorm) {
  if (k == 0 || K >= k)
    throw OutOfRange("general rates need 0 <= K < k, got k = " + std::to_string(k) +
                     ", K = " + std::to_string(K));
  if (!schedule.nonincreasing_through(k))
    throw SchedulePreconditionViolated("anchored rates need a nonincreasing schedule through k = " +
                                       std::to_string(k));

  std::vector<double> lambdas;
  std::vector<double> complements_from_K;
  double relax_sum = 0.0;       // sum_{i<=k} (1 - lambda_i)
  double anchor_mass = 0.0;     // sum_i lambda_i prod_{j=i..k} (1 - lambda_j)
  double anchor_alpha = 0.0;    // sum_i prod_{j=i..k} (1 - lambda_j)
  double squared_weights = 1.0; // sum_{i=0..k} prod_{j>i} (1 - lambda_j) lambda_i^2, lambda_0 = 1
  for (std::size_t i = 1; i <= k; ++i) {
    const double l = schedule.at(i);
    lambdas.push_back(l);
    relax_sum += 1.0 - l;
    if (i >= K) complements_from_K.push_back(1.0 - l);
    anchor_mass = (1.0 - l) * (anchor_mass + l);
    anchor_alpha = (1.0 - l) * (anchor_alpha + 1.0);
    squared_weights = (1.0 - l) * squared_weights + l * l;
  }
  // lambda_0 = 1 makes the j = 0 factor vanish.
  const double tail = K == 0 ? 0.0 : stable_product(complements_from_K);

  GeneralRates out;
  out.rx_normalized = 2.0 * (1.0 - stable_product(lambdas)) * dist0 / relax_sum;
  out.rx_bellman = relaxed_bellman_rate(schedule, k, K, dist0);
  out.anc_normalized = 2.0 * (1.0 - lambdas.back()) / anchor_alpha * dist0;
  out.anc_bellman = 2.0 * (1.0 - anchor_mass) * dist0 + 2.0 * tail * gnorm;
  out.anc_bellman_fixed_gain = 2.0 * squared_weights * dist0;
  return out;
}

double relaxed_bellman_rate(const Schedule& schedule, std::size_t k, std::size_t K, double dist0) {
  if (K >= k)
    throw OutOfRange("relaxed rate needs K < k, got k = " + std::to_string(k) + ", K = " +
                     std::to_string(K));
  double variance_sum = 0.0;
  for (std::size_t i = K + 1; i <= k; ++i) {
    const double l = schedule.at(i);
    variance_sum += l * (1.0 - l);
  }
  if (variance_sum <= 0.0) return kInfinity;
  return 2.0 * dist0 / std::sqrt(std::numbers::pi * variance_sum);
}

double lower_bound(std::size_t k, double dist0, LowerBoundFamily family) {
  const double k1 = static_cast<double>(k) + 1.0;
  return family == LowerBoundFamily::Unichain ? dist0 / k1 : 2.0 / k1 * dist0;
}

KmTable km_coefficients(const Schedule& schedule, std::size_t k_max) {
  if (k_max > kMaxKmOrder)
    throw OutOfRange("km_coefficients supports k_max <= " + std::to_string(kMaxKmOrder));
  const std::size_t n = k_max + 1;  // c_{k+1,k} needs rows up to k_max + 1
  std::vector<double> lambda(n + 1);
  lambda[0] = 0.0;
  for (std::size_t i = 1; i <= n; ++i) lambda[i] = schedule.at(i);

  std::vector<std::vector<double>> a(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    a[k].assign(k + 1, 0.0);
    double prod = 1.0;
    for (std::size_t j = k + 1; j-- > 0;) {
      a[k][j] = prod * (1.0 - lambda[j]);
      prod *= lambda[j];
    }
  }
  a[0][0] = 1.0;

  // c[k1][k2 + 1] holds c_{k1,k2}; column 0 is c_{k1,-1} = 1.
  // e[m][k2] = sum_{j<=k2} a^{k2}_j c_{m,j-1}, so c_{k1,k2} = sum_{i>k2} a^{k1}_i e[i-1][k2].
  std::vector<std::vector<double>> c(n + 1, std::vector<double>(n + 2, 0.0));
  std::vector<std::vector<double>> e(n + 1, std::vector<double>(n + 1, 0.0));
  for (std::size_t k1 = 0; k1 <= n; ++k1) c[k1][0] = 1.0;
  for (std::size_t k1 = 1; k1 <= n; ++k1) {
    const std::size_t m = k1 - 1;
    for (std::size_t k2 = 0; k2 <= m; ++k2) {
      double acc = 0.0;
      for (std::size_t j = 0; j <= k2; ++j) acc += a[k2][j] * c[m][j];
      e[m][k2] = acc;
    }
    for (std::size_t k2 = 0; k2 < k1; ++k2) {
      double acc = 0.0;
      for (std::size_t i = k2 + 1; i <= k1; ++i) acc += a[k1][i] * e[i - 1][k2];
      c[k1][k2 + 1] = acc;
    }
  }

  KmTable out;
  out.k_max = k_max;
  out.a.assign(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(k_max + 1));
  for (const auto& row : out.a) {
    double sum = 0.0;
    for (double v : row) sum += v;
    out.max_row_sum_error = std::max(out.max_row_sum_error, std::abs(sum - 1.0));
  }
  double variance_sum = 0.0;
  for (std::size_t k = 0; k <= k_max; ++k) {
    out.c_next.push_back(c[k + 1][k + 1]);
    if (k == 0) continue;
    variance_sum += lambda[k] * (1.0 - lambda[k]);
    const double rhs =
        variance_sum > 0.0 ? 2.0 / std::sqrt(std::numbers::pi * variance_sum) : kInfinity;
    out.diagonal.push_back({k, c[k + 1][k + 1] / (1.0 - lambda[k + 1]), rhs});
  }
  return out;
}

}  // namespace avgmdp
