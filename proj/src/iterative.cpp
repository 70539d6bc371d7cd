#include "avgmdp/iterative.hpp"

#include <map>

#include "avgmdp/chain.hpp"

namespace avgmdp {

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::VI:
      return "vi";
    case Algorithm::RxVI:
      return "rx-vi";
    case Algorithm::AncVI:
      return "anc-vi";
    case Algorithm::RxRVI:
      return "rx-rvi";
    case Algorithm::AncRVI:
      return "anc-rvi";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (Algorithm a : {Algorithm::VI, Algorithm::RxVI, Algorithm::AncVI, Algorithm::RxRVI,
                      Algorithm::AncRVI})
    if (to_string(a) == name) return a;
  return std::nullopt;
}

bool is_relative(Algorithm a) { return a == Algorithm::RxRVI || a == Algorithm::AncRVI; }

std::optional<double> normalization_scale(Algorithm a, const Schedule& schedule, std::size_t k) {
  if (k == 0 || is_relative(a)) return std::nullopt;
  if (a == Algorithm::VI) return static_cast<double>(k);
  double alpha = 0.0;
  for (std::size_t i = 1; i <= k; ++i) {
    const double l = schedule.at(i);
    alpha = a == Algorithm::RxVI ? alpha + (1.0 - l) : (1.0 - l) * (alpha + 1.0);
  }
  return alpha;
}

namespace {

class GainCache {
 public:
  explicit GainCache(const Mdp& m) : m_(m) {}
  const ValueVector& gain(const DeterministicPolicy& pi) {
    auto it = cache_.find(pi.actions());
    if (it == cache_.end()) it = cache_.emplace(pi.actions(), policy_gain(m_, pi)).first;
    return it->second;
  }

 private:
  const Mdp& m_;
  std::map<std::vector<std::size_t>, ValueVector> cache_;
};

IterationTrace run_scheme(const Mdp& m, Algorithm algo, const ValueVector& v0,
                          const Schedule& schedule, const std::optional<NormalizationFn>& f,
                          std::size_t iters, const RunOptions& options) {
  check_vector(m, v0, "initial vector");
  if (is_relative(algo)) {
    if (!f) throw InvalidSchedule("relative schemes need a normalization function");
    f->check(m.n_states());
  }
  if (options.solution) {
    check_vector(m, options.solution->gain, "g*");
    check_vector(m, options.solution->bias, "h*");
  }
  const std::size_t stride = std::max<std::size_t>(options.stride, 1);

  IterationTrace trace{algo, schedule, is_relative(algo) ? f : std::nullopt, v0, stride, {}};
  trace.rows.reserve(iters + 1);
  GainCache gains(m);

  ValueVector current = v0;
  ValueVector previous;
  OptimalityResult step = bellman_optimality(m, current);
  double alpha = 0.0;
  for (std::size_t k = 0;; ++k) {
    TraceRow row;
    row.k = k;
    ValueVector residual = step.tv - current;
    row.residual_span = span_seminorm(residual);
    row.greedy = step.greedy;
    if (f) row.f_value = f->eval(current, step.tv);
    if (k > 0) {
      row.lambda = schedule.at(k);
      row.drift = sup_error(current, previous);
      const double l = *row.lambda;
      if (algo == Algorithm::VI)
        alpha = static_cast<double>(k);
      else if (algo == Algorithm::RxVI)
        alpha += 1.0 - l;
      else if (algo == Algorithm::AncVI)
        alpha = (1.0 - l) * (alpha + 1.0);
    }
    if (options.solution) {
      const ValueVector& g = options.solution->gain;
      row.bellman_sup_err = sup_error(residual, g);
      row.policy_err = sup_error(gains.gain(step.greedy), g);
      if (k > 0 && !is_relative(algo))
        row.normalized_err = sup_error((current - v0) / alpha, g);
    }
    const bool last = k == iters;
    if (last || k % stride == 0) {
      row.iterate = current;
      row.residual = std::move(residual);
    }
    trace.rows.push_back(std::move(row));
    if (last) break;

    const double l = schedule.at(k + 1);
    previous = current;
    switch (algo) {
      case Algorithm::VI:
        current = step.tv;
        break;
      case Algorithm::RxVI:
        current = l * previous + (1.0 - l) * step.tv;
        break;
      case Algorithm::AncVI:
        current = l * v0 + (1.0 - l) * step.tv;
        break;
      case Algorithm::RxRVI:
        current = l * previous +
                  (1.0 - l) * (step.tv.array() - *trace.rows.back().f_value).matrix();
        break;
      case Algorithm::AncRVI:
        current = l * v0 + (1.0 - l) * (step.tv.array() - *trace.rows.back().f_value).matrix();
        break;
    }
    step = bellman_optimality(m, current);
  }
  return trace;
}

}  // namespace

IterationTrace run_vi(const Mdp& m, const ValueVector& v0, std::size_t iters,
                      const RunOptions& options) {
  return run_scheme(m, Algorithm::VI, v0, Schedule::zero(), std::nullopt, iters, options);
}

IterationTrace run_rx_vi(const Mdp& m, const ValueVector& v0, const Schedule& schedule,
                         std::size_t iters, const RunOptions& options) {
  return run_scheme(m, Algorithm::RxVI, v0, schedule, std::nullopt, iters, options);
}

IterationTrace run_anc_vi(const Mdp& m, const ValueVector& v0, const Schedule& schedule,
                          std::size_t iters, const RunOptions& options) {
  return run_scheme(m, Algorithm::AncVI, v0, schedule, std::nullopt, iters, options);
}

IterationTrace run_rx_rvi(const Mdp& m, const ValueVector& h0, const Schedule& schedule,
                          const NormalizationFn& f, std::size_t iters,
                          const RunOptions& options) {
  return run_scheme(m, Algorithm::RxRVI, h0, schedule, f, iters, options);
}

IterationTrace run_anc_rvi(const Mdp& m, const ValueVector& h0, const Schedule& schedule,
                           const NormalizationFn& f, std::size_t iters,
                           const RunOptions& options) {
  return run_scheme(m, Algorithm::AncRVI, h0, schedule, f, iters, options);
}

IterationTrace run_algorithm(const Mdp& m, Algorithm algo, const ValueVector& v0,
                             const Schedule& schedule, const std::optional<NormalizationFn>& f,
                             std::size_t iters, const RunOptions& options) {
  if (algo == Algorithm::VI) return run_vi(m, v0, iters, options);
  return run_scheme(m, algo, v0, schedule, f, iters, options);
}

bool SpanConditionVerdict::holds() const {
  for (const auto& r : rows)
    if (!r.holds) return false;
  return true;
}

SpanConditionVerdict check_span_condition(const Mdp& m, const IterationTrace& trace, double tol) {
  SpanConditionVerdict verdict;
  const auto& rows = trace.rows;
  const Eigen::Index n = static_cast<Eigen::Index>(m.n_states());
  Matrix basis(n, 0);
  for (std::size_t k = 0; k + 1 < rows.size(); ++k) {
    if (rows[k].iterate.size() != n) break;
    basis.conservativeResize(n, basis.cols() + 1);
    basis.col(basis.cols() - 1) = bellman_residual(m, rows[k].iterate);
    if (rows[k + 1].iterate.size() != n) continue;

    const ValueVector target = rows[k + 1].iterate - trace.v0;
    const double scale = target.norm();
    double remainder = 0.0;
    if (scale > 0.0) {
      const ValueVector coeffs = basis.completeOrthogonalDecomposition().solve(target);
      remainder = (target - basis * coeffs).norm() / scale;
    }
    verdict.rows.push_back({k, remainder, remainder <= tol});
  }
  return verdict;
}

}  // namespace avgmdp
