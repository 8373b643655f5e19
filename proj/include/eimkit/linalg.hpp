// SPDX-License-Identifier: Apache-2.0
//
// Dense linear-algebra kernels: the F^{-T} solve behind the interpolation
// matrix D, the SVD-based Moore-Penrose pseudo-inverse for the rectangular
// case, and condition estimation for greedy diagnostics.

#pragma once

#include "eimkit/types.hpp"

namespace eimkit {

// Relative singular-value cutoff applied by default when forming a
// pseudo-inverse.
inline constexpr double kDefaultSvdCutoff = 1e-12;

// A pivot of the row-pivoted factorization below this fraction of the
// largest pivot is treated as singular.
inline constexpr double kPivotRatioFloor = 1e-14;

// Pseudo-inverse together with the truncation actually applied.
// The four Penrose identities hold against `source` up to roundoff relative
// to its largest singular value.
struct Pinv {
  Matrix source;         // d1 x d2
  Matrix pinv;           // d2 x d1
  double cutoff = 0.0;   // absolute singular-value threshold used
  Index effective_rank = 0;
};

// Solves F^T D = Id column-wise through a row-pivoted LU factorization of
// F^T; never forms an explicit inverse via determinant formulas.
// Throws SingularMatrix when a pivot falls below kPivotRatioFloor times the
// largest pivot; `step` is attached for greedy diagnostics.
Matrix inverse_transpose(const Matrix& F, long step = -1);

// SVD-based pseudo-inverse. Singular values sigma_i <= cutoff_rel * sigma_max
// are treated as zero; a rank-0 input yields the zero matrix.
Pinv pseudo_inverse(const Matrix& A, double cutoff_rel = kDefaultSvdCutoff);

// Estimate of sigma_max / sigma_min for a square matrix. Returns +infinity
// as the sentinel for singular input.
double condition_estimate(const Matrix& F);

}  // namespace eimkit
