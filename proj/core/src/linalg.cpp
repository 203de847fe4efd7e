#include "wsnacc/linalg.hpp"

#include "wsnacc/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace wsnacc {

SpdFactor::SpdFactor(const Eigen::MatrixXd &matrix) {
  if (matrix.rows() != matrix.cols() || matrix.rows() == 0)
    throw DomainError("SpdFactor: matrix must be square and non-empty");
  if (!matrix.allFinite())
    throw NumericalError("SpdFactor: matrix has non-finite entries");

  llt_.compute(matrix);
  if (llt_.info() == Eigen::Success)
    return;

  const double scale = matrix.trace() / static_cast<double>(matrix.rows());
  for (double factor = 1e-10; factor <= 1e-6 * (1.0 + 1e-9); factor *= 10.0) {
    jitter_ = factor * scale;
    Eigen::MatrixXd shifted = matrix;
    shifted.diagonal().array() += jitter_;
    llt_.compute(shifted);
    if (llt_.info() == Eigen::Success)
      return;
  }
  throw NumericalError("SpdFactor: matrix of size " +
                       std::to_string(matrix.rows()) +
                       " is not positive definite within the jitter budget");
}

Eigen::VectorXd SpdFactor::solve(const Eigen::VectorXd &rhs) const {
  if (rhs.size() != llt_.rows())
    throw DomainError("SpdFactor::solve: dimension mismatch");
  return llt_.solve(rhs);
}

Eigen::MatrixXd psd_square_root(const Eigen::MatrixXd &matrix) {
  if (matrix.rows() != matrix.cols() || matrix.rows() == 0)
    throw DomainError("psd_square_root: matrix must be square and non-empty");
  if (!matrix.allFinite())
    throw NumericalError("psd_square_root: matrix has non-finite entries");
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(matrix);
  const auto n = matrix.rows();
  const double floor = -1e-10 * matrix.trace() / static_cast<double>(n);
  Eigen::VectorXd d = ldlt.vectorD();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (d(i) < floor)
      throw NumericalError("psd_square_root: matrix is indefinite");
    d(i) = std::sqrt(std::max(d(i), 0.0));
  }
  // C = P^T L D L^T P
  Eigen::MatrixXd l = ldlt.matrixL();
  Eigen::MatrixXd root = ldlt.transpositionsP().transpose() * (l * d.asDiagonal());
  if (!root.allFinite() ||
      (root * root.transpose() - matrix).cwiseAbs().maxCoeff() >
          1e-8 * matrix.diagonal().cwiseAbs().maxCoeff())
    throw NumericalError("psd_square_root: factorization failed");
  return root;
}

} // namespace wsnacc
