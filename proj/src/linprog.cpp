#include "avgmdp/linprog.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace avgmdp::lp {

namespace {

// Tableau in standard form: rows 0..m-1 are constraints, last column is the
// right-hand side. `basis[i]` is the basic column of row i.
class Tableau {
 public:
  Tableau(Matrix t, std::vector<Eigen::Index> basis, double tol)
      : t_(std::move(t)), basis_(std::move(basis)), tol_(tol) {}

  // Minimizes cost^T y over the current feasible basis. Columns flagged in
  // `blocked` never enter.
  Status run(const ValueVector& cost, const std::vector<bool>& blocked) {
    const Eigen::Index m = t_.rows();
    const Eigen::Index cols = t_.cols() - 1;
    for (int guard = 0; guard < 100000; ++guard) {
      // reduced costs
      Eigen::Index entering = -1;
      for (Eigen::Index j = 0; j < cols; ++j) {
        if (blocked[j] || is_basic(j)) continue;
        double reduced = cost(j);
        for (Eigen::Index i = 0; i < m; ++i) reduced -= cost(basis_[i]) * t_(i, j);
        if (reduced < -tol_) {
          entering = j;
          break;
        }
      }
      if (entering < 0) return Status::Optimal;

      Eigen::Index leaving = -1;
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < m; ++i) {
        if (t_(i, entering) <= tol_) continue;
        const double ratio = t_(i, cols) / t_(i, entering);
        if (ratio < best - tol_ || (std::abs(ratio - best) <= tol_ && leaving >= 0 &&
                                    basis_[i] < basis_[leaving])) {
          best = ratio;
          leaving = i;
        }
      }
      if (leaving < 0) return Status::Unbounded;
      pivot(leaving, entering);
    }
    return Status::Unbounded;
  }

  void pivot(Eigen::Index row, Eigen::Index col) {
    t_.row(row) /= t_(row, col);
    for (Eigen::Index i = 0; i < t_.rows(); ++i) {
      if (i == row) continue;
      const double factor = t_(i, col);
      if (factor != 0.0) t_.row(i) -= factor * t_.row(row);
    }
    basis_[row] = col;
  }

  bool is_basic(Eigen::Index j) const {
    for (Eigen::Index b : basis_)
      if (b == j) return true;
    return false;
  }

  ValueVector solution() const {
    ValueVector y = ValueVector::Zero(t_.cols() - 1);
    for (Eigen::Index i = 0; i < t_.rows(); ++i) y(basis_[i]) = t_(i, t_.cols() - 1);
    return y;
  }

  const Matrix& table() const { return t_; }
  const std::vector<Eigen::Index>& basis() const { return basis_; }

 private:
  Matrix t_;
  std::vector<Eigen::Index> basis_;
  double tol_;
};

}  // namespace

Result minimize(const Matrix& a, const ValueVector& b, const ValueVector& c, double tol) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  // columns: x+ (n), x- (n), slack (m), artificial (m), rhs
  const Eigen::Index n_struct = 2 * n + m;
  const Eigen::Index n_cols = n_struct + m;
  Matrix t = Matrix::Zero(m, n_cols + 1);
  std::vector<Eigen::Index> basis(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double sign = b(i) < 0.0 ? -1.0 : 1.0;
    t.block(i, 0, 1, n) = sign * a.row(i);
    t.block(i, n, 1, n) = -sign * a.row(i);
    t(i, 2 * n + i) = sign;
    t(i, n_struct + i) = 1.0;
    t(i, n_cols) = sign * b(i);
    basis[i] = n_struct + i;
  }
  Tableau tableau(std::move(t), std::move(basis), tol);

  ValueVector phase1 = ValueVector::Zero(n_cols);
  phase1.tail(m).setOnes();
  std::vector<bool> blocked(n_cols, false);
  tableau.run(phase1, blocked);
  const ValueVector y1 = tableau.solution();
  if (y1.tail(m).sum() > 1e-9 * (1.0 + b.cwiseAbs().maxCoeff())) return {Status::Infeasible, {}, 0.0};

  // Drive remaining artificials out of the basis where possible.
  for (Eigen::Index i = 0; i < m; ++i) {
    if (tableau.basis()[i] < n_struct) continue;
    for (Eigen::Index j = 0; j < n_struct; ++j) {
      if (std::abs(tableau.table()(i, j)) > tol && !tableau.is_basic(j)) {
        tableau.pivot(i, j);
        break;
      }
    }
  }
  for (Eigen::Index j = n_struct; j < n_cols; ++j) blocked[j] = true;

  ValueVector phase2 = ValueVector::Zero(n_cols);
  phase2.head(n) = c;
  phase2.segment(n, n) = -c;
  const Status status = tableau.run(phase2, blocked);
  if (status == Status::Unbounded) return {Status::Unbounded, {}, 0.0};
  const ValueVector y = tableau.solution();
  ValueVector x = y.head(n) - y.segment(n, n);
  return {Status::Optimal, x, c.dot(x)};
}

}  // namespace avgmdp::lp
