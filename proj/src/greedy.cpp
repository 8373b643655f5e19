// SPDX-License-Identifier: Apache-2.0

#include "eimkit/greedy.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "eimkit/linalg.hpp"
#include "eimkit/parallel_for.hpp"

namespace eimkit {

namespace {

// Largest |v(k)|, smallest index wins ties.
void abs_argmax(const Eigen::Ref<const Vector>& v, Index& arg, double& value) {
  arg = 0;
  value = -1.0;
  for (Index k = 0; k < v.size(); ++k) {
    const double a = std::abs(v(k));
    if (a > value) {
      value = a;
      arg = k;
    }
  }
}

double inner_norm_value(const Eigen::Ref<const Vector>& v, const NormSpec& norm) {
  switch (norm.inner) {
    case InnerNorm::Linf:
      return v.cwiseAbs().maxCoeff();
    case InnerNorm::L2:
      return v.norm();
    case InnerNorm::Weighted:
      return (*norm.weights * v).norm();
  }
  return 0.0;
}

Matrix gather(const Matrix& A, const std::vector<Index>& rows,
              const std::vector<Index>& cols) {
  Matrix out(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
  for (Index l = 0; l < out.rows(); ++l) {
    for (Index m = 0; m < out.cols(); ++m) {
      out(l, m) = A(rows[static_cast<std::size_t>(l)],
                    cols[static_cast<std::size_t>(m)]);
    }
  }
  return out;
}

}  // namespace

void validate_norm_spec(const NormSpec& norm, Index nx, Index ny) {
  if (norm.variant == SelectionVariant::LinfJoint &&
      norm.inner != InnerNorm::Linf) {
    throw InvalidConfig(
        "norm spec: the joint variant scans |R| directly; combine "
        "l2/weighted inner norms with y-norm-first or x-norm-first");
  }
  if (norm.inner == InnerNorm::Weighted) {
    if (!norm.weights.has_value()) {
      throw InvalidConfig("norm spec: weighted inner norm needs a weight matrix");
    }
    if (!norm.weights->allFinite()) {
      throw ValueError("norm spec: weight matrix has non-finite entries");
    }
    if (norm.weights->rows() < 1) {
      throw InvalidConfig("norm spec: weight matrix needs at least one row");
    }
    const Index over = norm.variant == SelectionVariant::XNormFirst ? nx : ny;
    if (norm.weights->cols() != over) {
      std::ostringstream msg;
      msg << "norm spec: weight matrix has " << norm.weights->cols()
          << " columns but the " << to_string(norm.variant)
          << " norm runs over a candidate set of size " << over;
      throw InvalidConfig(msg.str());
    }
  }
}

double default_pivot_tolerance(const SnapshotMatrix& A) {
  return kDefaultPivotTolRel * A.max_abs();
}

Matrix residual_matrix(const SnapshotMatrix& A, const SeparatedModel* model,
                       int threads) {
  if (model == nullptr || model->d == 0) return A.values();

  const Matrix& full = A.values();
  Matrix Ax(model->d, full.cols());  // selected rows A(x_l, .)
  for (Index l = 0; l < model->d; ++l) {
    Ax.row(l) = full.row(model->x_idx[static_cast<std::size_t>(l)]);
  }
  const Matrix T = model->D.transpose() * Ax;  // d x ny, shared by every row

  Matrix R(full.rows(), full.cols());
  parallel_for(full.rows(), threads, [&](long begin, long end) {
    Vector w(model->d);
    for (long i = begin; i < end; ++i) {
      for (Index m = 0; m < model->d; ++m) {
        w(m) = full(i, model->y_idx[static_cast<std::size_t>(m)]);
      }
      R.row(i) = full.row(i) - w.transpose() * T;
    }
  });
  return R;
}

Selection select_next(const Matrix& R, const NormSpec& norm, int threads) {
  const Index nx = R.rows();
  const Index ny = R.cols();
  Selection sel;

  switch (norm.variant) {
    case SelectionVariant::LinfJoint: {
      // Per-row maxima in parallel, then a sequential merge in row order so
      // the (row, col) tie-break is lexicographic.
      std::vector<Index> best_col(static_cast<std::size_t>(nx));
      std::vector<double> best_val(static_cast<std::size_t>(nx));
      parallel_for(nx, threads, [&](long begin, long end) {
        for (long i = begin; i < end; ++i) {
          abs_argmax(R.row(i).transpose(), best_col[static_cast<std::size_t>(i)],
                     best_val[static_cast<std::size_t>(i)]);
        }
      });
      double best = -1.0;
      for (Index i = 0; i < nx; ++i) {
        if (best_val[static_cast<std::size_t>(i)] > best) {
          best = best_val[static_cast<std::size_t>(i)];
          sel.row = i;
          sel.col = best_col[static_cast<std::size_t>(i)];
        }
      }
      sel.pivot = best;
      return sel;
    }
    case SelectionVariant::YNormFirst: {
      std::vector<double> score(static_cast<std::size_t>(nx));
      parallel_for(nx, threads, [&](long begin, long end) {
        for (long i = begin; i < end; ++i) {
          score[static_cast<std::size_t>(i)] =
              inner_norm_value(R.row(i).transpose(), norm);
        }
      });
      double best = -1.0;
      for (Index i = 0; i < nx; ++i) {
        if (score[static_cast<std::size_t>(i)] > best) {
          best = score[static_cast<std::size_t>(i)];
          sel.row = i;
        }
      }
      abs_argmax(R.row(sel.row).transpose(), sel.col, sel.pivot);
      return sel;
    }
    case SelectionVariant::XNormFirst: {
      std::vector<double> score(static_cast<std::size_t>(ny));
      parallel_for(ny, threads, [&](long begin, long end) {
        for (long j = begin; j < end; ++j) {
          score[static_cast<std::size_t>(j)] = inner_norm_value(R.col(j), norm);
        }
      });
      double best = -1.0;
      for (Index j = 0; j < ny; ++j) {
        if (score[static_cast<std::size_t>(j)] > best) {
          best = score[static_cast<std::size_t>(j)];
          sel.col = j;
        }
      }
      abs_argmax(R.col(sel.col), sel.row, sel.pivot);
      return sel;
    }
  }
  return sel;
}

SeparatedModel build(const SnapshotMatrix& A, const GreedyConfig& cfg,
                     int threads) {
  if (cfg.d_max < 1) {
    throw InvalidConfig("greedy: d_max must be >= 1");
  }
  if (cfg.d_max > std::min(A.nx(), A.ny())) {
    std::ostringstream msg;
    msg << "greedy: d_max " << cfg.d_max << " exceeds min(nx, ny) = "
        << std::min(A.nx(), A.ny());
    throw InvalidConfig(msg.str());
  }
  validate_norm_spec(cfg.norm, A.nx(), A.ny());
  const double tol = cfg.tol_abs.value_or(default_pivot_tolerance(A));
  if (!(tol >= 0.0)) {
    throw InvalidConfig("greedy: tol_abs must be >= 0");
  }

  SeparatedModel model;
  model.trace.norm_used = cfg.norm;

  while (model.d < cfg.d_max) {
    const Matrix R = residual_matrix(A, &model, threads);
    const Selection sel = select_next(R, cfg.norm, threads);
    if (sel.pivot <= tol) break;  // zero pivot means f = I_k(f) on the grid

    model.x_idx.push_back(sel.row);
    model.y_idx.push_back(sel.col);
    model.d += 1;
    model.F = gather(A.values(), model.x_idx, model.y_idx);
    try {
      model.D = inverse_transpose(model.F, model.d);
    } catch (const SingularMatrix&) {
      const double cond = condition_estimate(model.F);
      std::ostringstream msg;
      msg << "greedy: interpolation matrix turned singular at step " << model.d
          << " while the pivot " << sel.pivot << " still exceeds the stopping "
          << "threshold " << tol << " (condition estimate " << cond << ")";
      throw NumericalBreakdown(msg.str(), model.d, sel.pivot, cond);
    }
    model.trace.residuals.push_back(sel.pivot);
    model.trace.condition_estimates.push_back(condition_estimate(model.F));
  }
  return model;
}

}  // namespace eimkit
