// SPDX-License-Identifier: Apache-2.0

#include "eimkit/linalg.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/LU>
#include <Eigen/SVD>

namespace eimkit {

Matrix inverse_transpose(const Matrix& F, long step) {
  if (F.rows() != F.cols()) {
    std::ostringstream msg;
    msg << "inverse_transpose: matrix is " << F.rows() << "x" << F.cols()
        << ", expected square";
    throw DimensionError(msg.str());
  }
  const Index d = F.rows();
  if (d == 0) return Matrix(0, 0);

  Eigen::PartialPivLU<Matrix> lu(F.transpose());
  const Vector pivots = lu.matrixLU().diagonal().cwiseAbs();
  const double pivot_max = pivots.maxCoeff();
  const double pivot_min = pivots.minCoeff();
  if (!(pivot_min > pivot_max * kPivotRatioFloor) || pivot_max == 0.0) {
    std::ostringstream msg;
    msg << "inverse_transpose: singular matrix (pivot ratio "
        << (pivot_max > 0.0 ? pivot_min / pivot_max : 0.0) << ", d = " << d;
    if (step >= 0) msg << ", step " << step;
    msg << ")";
    throw SingularMatrix(msg.str(), step);
  }
  return lu.solve(Matrix::Identity(d, d));
}

Pinv pseudo_inverse(const Matrix& A, double cutoff_rel) {
  if (!(cutoff_rel >= 0.0 && cutoff_rel < 1.0)) {
    std::ostringstream msg;
    msg << "pseudo_inverse: cutoff_rel " << cutoff_rel << " outside [0, 1)";
    throw InvalidConfig(msg.str());
  }
  if (!A.allFinite()) {
    throw ValueError("pseudo_inverse: input has non-finite entries");
  }

  Pinv result;
  result.source = A;
  if (A.size() == 0) {
    result.pinv = Matrix::Zero(A.cols(), A.rows());
    return result;
  }

  Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& sigma = svd.singularValues();
  const double sigma_max = sigma.size() > 0 ? sigma(0) : 0.0;
  result.cutoff = cutoff_rel * sigma_max;

  Vector inv_sigma = Vector::Zero(sigma.size());
  for (Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > result.cutoff && sigma(i) > 0.0) {
      inv_sigma(i) = 1.0 / sigma(i);
      ++result.effective_rank;
    }
  }
  result.pinv =
      svd.matrixV() * inv_sigma.asDiagonal() * svd.matrixU().transpose();
  return result;
}

double condition_estimate(const Matrix& F) {
  if (F.rows() != F.cols()) {
    std::ostringstream msg;
    msg << "condition_estimate: matrix is " << F.rows() << "x" << F.cols()
        << ", expected square";
    throw DimensionError(msg.str());
  }
  if (F.size() == 0) return 1.0;

  Eigen::JacobiSVD<Matrix> svd(F);
  const Vector& sigma = svd.singularValues();
  const double sigma_max = sigma(0);
  const double sigma_min = sigma(sigma.size() - 1);
  // Singular means singular in the same sense the factorization uses:
  // an exactly rank-deficient matrix carries roundoff-sized trailing
  // singular values, not exact zeros.
  if (!(sigma_min > sigma_max * kPivotRatioFloor) || sigma_max == 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  return sigma_max / sigma_min;
}

}  // namespace eimkit
