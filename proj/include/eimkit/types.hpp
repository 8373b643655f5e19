// SPDX-License-Identifier: Apache-2.0
//
// Core domain types shared by all modules: candidate sample sets, the dense
// snapshot table, norm specifications for the greedy selection, and the
// separated models produced by the offline stage.
//
// All types are immutable after construction and safe to share across
// threads read-only.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "eimkit/errors.hpp"

namespace eimkit {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Ordered finite candidate set discretizing one side of the domain.
// Indices into the point list are the stable identity of a sample;
// coordinates are metadata carried along for reporting and for analytic
// off-grid evaluation.
class SampleSet {
 public:
  SampleSet(std::string label, std::vector<std::vector<double>> points);

  const std::string& label() const { return label_; }
  Index size() const { return static_cast<Index>(points_.size()); }
  Index dimension() const {
    return static_cast<Index>(points_.front().size());
  }
  const std::vector<double>& point(Index i) const {
    return points_[static_cast<std::size_t>(i)];
  }
  const std::vector<std::vector<double>>& points() const { return points_; }

 private:
  std::string label_;
  std::vector<std::vector<double>> points_;
};

// Dense tabulation A(i, j) = f(x_i, y_j) over the candidate grids; the sole
// access path to f for the grid-based modules. Entries are validated finite
// at construction.
class SnapshotMatrix {
 public:
  explicit SnapshotMatrix(Matrix values);

  Index nx() const { return values_.rows(); }
  Index ny() const { return values_.cols(); }
  double operator()(Index i, Index j) const { return values_(i, j); }
  const Matrix& values() const { return values_; }
  double max_abs() const { return max_abs_; }

 private:
  Matrix values_;
  double max_abs_ = 0.0;
};

// Candidate sets plus the snapshot table they index. Construction checks the
// size coupling between the three.
struct SnapshotData {
  SampleSet xs;
  SampleSet ys;
  SnapshotMatrix matrix;

  SnapshotData(SampleSet xs_arg, SampleSet ys_arg, SnapshotMatrix matrix_arg);
};

enum class SelectionVariant { LinfJoint, YNormFirst, XNormFirst };
enum class InnerNorm { Linf, L2, Weighted };

const char* to_string(SelectionVariant v);
const char* to_string(InnerNorm n);
SelectionVariant selection_variant_from_string(const std::string& s);
InnerNorm inner_norm_from_string(const std::string& s);

// How the greedy scores residuals. `variant` fixes which side is reduced by
// a norm first; `inner` is the norm applied to that residual row/column.
// The weighted norm computes ||W r||_2, with one functional per row of W and
// as many columns as the candidate set the norm runs over.
struct NormSpec {
  SelectionVariant variant = SelectionVariant::LinfJoint;
  InnerNorm inner = InnerNorm::Linf;
  std::optional<Matrix> weights;

  static NormSpec linf_joint() { return {}; }
  static NormSpec y_norm_first(InnerNorm inner_arg = InnerNorm::Linf) {
    return {SelectionVariant::YNormFirst, inner_arg, std::nullopt};
  }
  static NormSpec x_norm_first(InnerNorm inner_arg = InnerNorm::Linf) {
    return {SelectionVariant::XNormFirst, inner_arg, std::nullopt};
  }
  static NormSpec weighted(SelectionVariant variant_arg, Matrix weights_arg) {
    return {variant_arg, InnerNorm::Weighted, std::move(weights_arg)};
  }
};

// Diagnostics of a completed greedy run: the pivot magnitude
// |(f - I_k(f))(x_{k+1}, y_{k+1})| of each accepted step (strictly positive
// by the stopping rule) and a condition estimate of each F^k.
struct GreedyTrace {
  std::vector<double> residuals;
  NormSpec norm_used;
  std::vector<double> condition_estimates;
};

// Separated representation in symmetric form:
//   I_d(f)(x, y) = sum_{l,m} D(l, m) f(x_l, y) f(x, y_m),   D = F^{-T}.
struct SeparatedModel {
  Index d = 0;
  std::vector<Index> x_idx;  // pairwise distinct selected row indices
  std::vector<Index> y_idx;  // pairwise distinct selected column indices
  Matrix F;                  // F(l, m) = A(x_idx[l], y_idx[m])
  Matrix D;                  // solves F^T D = Id
  GreedyTrace trace;
};

// Rectangular extension: every selected x row is kept while a subset of the
// y columns survives; D is the Moore-Penrose pseudo-inverse of F^T. An
// approximation, not an interpolation.
struct RectangularModel {
  std::vector<Index> x_idx;       // all d rows of the parent
  std::vector<Index> y_idx_kept;  // d0 <= d columns, parent order preserved
  Matrix F;                       // d x d0
  Matrix D;                       // d x d0, (F^T)^dagger
  SeparatedModel parent;
};

}  // namespace eimkit
