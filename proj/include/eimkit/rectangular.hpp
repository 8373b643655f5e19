// SPDX-License-Identifier: Apache-2.0
//
// Rectangular extension of the symmetric form: a subset of the selected y
// interpolation points (sensors) is discarded a posteriori while every
// selected x point is kept. D becomes the Moore-Penrose pseudo-inverse of
// F^T, and the separated form turns from an interpolant into an
// approximation.

#pragma once

#include <vector>

#include "eimkit/linalg.hpp"
#include "eimkit/types.hpp"

namespace eimkit {

// Drops the y points at the given selection positions (0-based positions in
// the parent's index lists, not grid indices). An empty set reduces to the
// square model; dropping every position throws AllDropped.
RectangularModel discard(const SeparatedModel& parent,
                         const std::vector<Index>& dropped_positions,
                         const SnapshotMatrix& A,
                         double cutoff_rel = kDefaultSvdCutoff);

// sum_{l in N} sum_{m in N0} D(l, m) A(x_l, j) A(i, y_m).
double evaluate_rectangular(const RectangularModel& model,
                            const SnapshotMatrix& A, Index i, Index j);

}  // namespace eimkit
