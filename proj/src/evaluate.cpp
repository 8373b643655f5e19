// SPDX-License-Identifier: Apache-2.0

#include "eimkit/evaluate.hpp"

#include <sstream>

#include "eimkit/greedy.hpp"

namespace eimkit {

namespace {

void check_cell(const SnapshotMatrix& A, Index i, Index j) {
  if (i < 0 || i >= A.nx() || j < 0 || j >= A.ny()) {
    std::ostringstream msg;
    msg << "evaluate: cell (" << i << ", " << j << ") outside the " << A.nx()
        << "x" << A.ny() << " grid";
    throw DimensionError(msg.str());
  }
}

}  // namespace

double evaluate_symmetric(const SeparatedModel& model, const SnapshotMatrix& A,
                          Index i, Index j) {
  check_cell(A, i, j);
  if (model.d == 0) return 0.0;
  Vector u(model.d);  // A(x_l, j)
  Vector w(model.d);  // A(i, y_m)
  for (Index l = 0; l < model.d; ++l) {
    u(l) = A(model.x_idx[static_cast<std::size_t>(l)], j);
    w(l) = A(i, model.y_idx[static_cast<std::size_t>(l)]);
  }
  return u.dot(model.D * w);
}

ClassicalModel build_classical(const SeparatedModel& model,
                               const SnapshotMatrix& A) {
  ClassicalModel out;
  out.d = model.d;
  out.y_idx = model.y_idx;
  out.B = Matrix::Zero(model.d, model.d);
  out.q_vals = Matrix::Zero(model.d, A.ny());

  for (Index l = 0; l < model.d; ++l) {
    const Index xl = model.x_idx[static_cast<std::size_t>(l)];
    Eigen::RowVectorXd r = A.values().row(xl);
    if (l > 0) {
      Vector rhs(l);
      for (Index m = 0; m < l; ++m) {
        rhs(m) = A(xl, model.y_idx[static_cast<std::size_t>(m)]);
      }
      const Vector lambda = out.B.topLeftCorner(l, l)
                                .triangularView<Eigen::Lower>()
                                .solve(rhs);
      r -= lambda.transpose() * out.q_vals.topRows(l);
    }
    const double pivot = r(model.y_idx[static_cast<std::size_t>(l)]);
    if (pivot == 0.0) {
      std::ostringstream msg;
      msg << "classical construction: residual pivot vanished at step " << l + 1
          << "; the model is corrupted";
      throw DegeneratePivot(msg.str());
    }
    out.q_vals.row(l) = r / pivot;
    for (Index m = 0; m <= l; ++m) {
      out.B(l, m) = out.q_vals(m, model.y_idx[static_cast<std::size_t>(l)]);
    }
  }
  return out;
}

double evaluate_classical(const ClassicalModel& model, const SnapshotMatrix& A,
                          Index i, Index j) {
  check_cell(A, i, j);
  if (model.d == 0) return 0.0;
  Vector rhs(model.d);
  for (Index l = 0; l < model.d; ++l) {
    rhs(l) = A(i, model.y_idx[static_cast<std::size_t>(l)]);
  }
  const Vector lambda = model.B.triangularView<Eigen::Lower>().solve(rhs);
  return lambda.dot(model.q_vals.col(j));
}

namespace {

InterpolationReport report_from_residual(const Matrix& R, double scale,
                                         const std::vector<Index>& rows,
                                         const std::vector<Index>& cols) {
  InterpolationReport report;
  if (scale <= 0.0) return report;
  for (const Index l : rows) {
    report.max_row_violation =
        std::max(report.max_row_violation, R.row(l).cwiseAbs().maxCoeff());
  }
  for (const Index m : cols) {
    report.max_col_violation =
        std::max(report.max_col_violation, R.col(m).cwiseAbs().maxCoeff());
  }
  report.max_row_violation /= scale;
  report.max_col_violation /= scale;
  return report;
}

}  // namespace

InterpolationReport interpolation_report(const SeparatedModel& model,
                                         const SnapshotMatrix& A) {
  if (model.d == 0) return {};
  const Matrix R = residual_matrix(A, &model);
  return report_from_residual(R, A.max_abs(), model.x_idx, model.y_idx);
}

InterpolationReport interpolation_report(const RectangularModel& model,
                                         const SnapshotMatrix& A) {
  if (model.x_idx.empty()) return {};
  const Index d = static_cast<Index>(model.x_idx.size());
  const Index d0 = static_cast<Index>(model.y_idx_kept.size());
  const Matrix& full = A.values();

  Matrix Ax(d, full.cols());
  for (Index l = 0; l < d; ++l) {
    Ax.row(l) = full.row(model.x_idx[static_cast<std::size_t>(l)]);
  }
  Matrix Ay(full.rows(), d0);
  for (Index m = 0; m < d0; ++m) {
    Ay.col(m) = full.col(model.y_idx_kept[static_cast<std::size_t>(m)]);
  }
  const Matrix R = full - Ay * model.D.transpose() * Ax;
  return report_from_residual(R, A.max_abs(), model.x_idx, model.y_idx_kept);
}

}  // namespace eimkit
