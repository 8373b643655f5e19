// SPDX-License-Identifier: Apache-2.0
//
// Evaluation of the separated models on the grid: the symmetric double-sum
// form, the classical lambda/q/B formulation, and the interpolation-property
// report. The two forms are algebraically equivalent; keeping both gives a
// cross-check at roundoff level.

#pragma once

#include "eimkit/types.hpp"

namespace eimkit {

// I_d(f)(x_i, y_j) = sum_{l,m} D(l, m) A(x_l, j) A(i, y_m).
double evaluate_symmetric(const SeparatedModel& model, const SnapshotMatrix& A,
                          Index i, Index j);

// Classical formulation: I_d(f)(x, y) = sum_l lambda_l(x) q_l(y), with the
// lambda solving the unit lower-triangular system B lambda = (f(x, y_l))_l.
// q_l is the step-l residual row normalized by its pivot, so B(l, m) =
// q_m(y_l) is unit lower-triangular by the interpolation property.
struct ClassicalModel {
  Index d = 0;
  Matrix B;                  // d x d, unit lower-triangular
  Matrix q_vals;             // d x ny, q_l tabulated on the Y grid
  std::vector<Index> y_idx;  // interpolation columns, for the rhs of B
};

// Rebuilds the classical data from a greedy-built model. Throws
// DegeneratePivot when a normalization pivot is exactly zero, which signals
// a corrupted model (a completed greedy step guarantees a nonzero pivot).
ClassicalModel build_classical(const SeparatedModel& model,
                               const SnapshotMatrix& A);

double evaluate_classical(const ClassicalModel& model, const SnapshotMatrix& A,
                          Index i, Index j);

// Worst violation of the interpolation property over the grid, normalized by
// max|A|: rows are scanned at the selected x indices, columns at the selected
// (or surviving) y indices.
struct InterpolationReport {
  double max_row_violation = 0.0;  // max_l max_j |(f - I)(x_l, j)| / max|A|
  double max_col_violation = 0.0;  // max_m max_i |(f - I)(i, y_m)| / max|A|
};

InterpolationReport interpolation_report(const SeparatedModel& model,
                                         const SnapshotMatrix& A);

// Rectangular models are approximations, not interpolants: the report is
// still produced (over kept columns only; discarded y points are exempt)
// but no bound is promised.
InterpolationReport interpolation_report(const RectangularModel& model,
                                         const SnapshotMatrix& A);

}  // namespace eimkit
