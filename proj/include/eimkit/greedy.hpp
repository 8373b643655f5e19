// SPDX-License-Identifier: Apache-2.0
//
// Offline stage: greedy selection of interpolation couples under a NormSpec,
// incremental construction of F and D = F^{-T}, and the stopping logic.
//
// The residual scan and the selection scan may run data-parallel over rows;
// results are bit-identical for any thread count (argmax reductions compare
// (value, index) pairs and merge in index order).

#pragma once

#include <optional>

#include "eimkit/types.hpp"

namespace eimkit {

// Relative factor applied to max|A| when no absolute pivot tolerance is
// configured.
inline constexpr double kDefaultPivotTolRel = 1e-12;

struct GreedyConfig {
  Index d_max = 1;
  // Absolute stopping threshold on the pivot residual. Unset means
  // kDefaultPivotTolRel * max|A|, resolved when the build starts.
  std::optional<double> tol_abs;
  NormSpec norm;
};

struct Selection {
  Index row = 0;
  Index col = 0;
  double pivot = 0.0;
};

// Checks a norm spec against the grid it will scan. Weighted norms need a
// weight matrix whose column count equals the size of the candidate set the
// norm runs over; the joint variant admits no inner norm but linf.
void validate_norm_spec(const NormSpec& norm, Index nx, Index ny);

double default_pivot_tolerance(const SnapshotMatrix& A);

// Residual f - I_k(f) tabulated on the full grid:
//   R(i, j) = A(i, j) - sum_{l,m} D(l, m) A(x_l, j) A(i, y_m).
// A null (or empty) model means I_0 = 0, i.e. R = A.
Matrix residual_matrix(const SnapshotMatrix& A, const SeparatedModel* model,
                       int threads = 1);

// Next interpolation couple under the given norm. Ties break to the smallest
// index, row before column.
Selection select_next(const Matrix& R, const NormSpec& norm, int threads = 1);

// Runs the greedy until the pivot drops to the stopping threshold or d_max
// couples are selected. Throws NumericalBreakdown if F turns numerically
// singular while the pivot is still above the threshold (impossible in exact
// arithmetic).
SeparatedModel build(const SnapshotMatrix& A, const GreedyConfig& cfg,
                     int threads = 1);

}  // namespace eimkit
