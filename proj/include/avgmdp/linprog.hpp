#pragma once

#include "avgmdp/mdp.hpp"

namespace avgmdp::lp {

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
  Status status = Status::Infeasible;
  ValueVector x;
  double objective = 0.0;
};

/// minimize c^T x  subject to  A x <= b, with x free. Dense two-phase simplex
/// with Bland's rule; intended for the handful of variables the exact solver
/// needs, not for large programs.
Result minimize(const Matrix& a, const ValueVector& b, const ValueVector& c, double tol = 1e-11);

}  // namespace avgmdp::lp
