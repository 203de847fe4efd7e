#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>

namespace wsnacc {

/// Cholesky factor of a symmetric positive (semi)definite matrix.
///
/// If the plain factorization fails, a diagonal jitter of
/// 1e-10 * trace / n is added and escalated by x10 up to 1e-6 * trace / n.
/// Past that budget NumericalError is thrown.
class SpdFactor {
public:
  explicit SpdFactor(const Eigen::MatrixXd &matrix);

  Eigen::VectorXd solve(const Eigen::VectorXd &rhs) const;
  Eigen::MatrixXd lower() const { return llt_.matrixL(); }
  /// Diagonal shift that was needed, 0 if none.
  double jitter() const noexcept { return jitter_; }
  Eigen::Index size() const noexcept { return llt_.rows(); }

private:
  Eigen::LLT<Eigen::MatrixXd> llt_;
  double jitter_ = 0.0;
};

/// Square root F with F F^T = C of a symmetric positive semidefinite matrix,
/// from a pivoted LDL^T factorization. Exactly singular directions (e.g.
/// coincident nodes) get zero weight instead of a jitter floor. Pivots below
/// -1e-10 * trace / n mean the matrix is indefinite: NumericalError.
Eigen::MatrixXd psd_square_root(const Eigen::MatrixXd &matrix);

} // namespace wsnacc
