// SPDX-License-Identifier: Apache-2.0

#include "eimkit/rectangular.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace eimkit {

RectangularModel discard(const SeparatedModel& parent,
                         const std::vector<Index>& dropped_positions,
                         const SnapshotMatrix& A, double cutoff_rel) {
  if (parent.d < 1) {
    throw InvalidConfig("discard: parent model is empty");
  }
  std::set<Index> dropped;
  for (const Index p : dropped_positions) {
    if (p < 0 || p >= parent.d) {
      std::ostringstream msg;
      msg << "discard: position " << p << " outside [0, " << parent.d << ")";
      throw InvalidConfig(msg.str());
    }
    dropped.insert(p);
  }
  if (static_cast<Index>(dropped.size()) == parent.d) {
    throw AllDropped("discard: every y point was dropped; keep at least one");
  }

  RectangularModel model;
  model.x_idx = parent.x_idx;
  for (Index p = 0; p < parent.d; ++p) {
    if (dropped.count(p) == 0) {
      model.y_idx_kept.push_back(parent.y_idx[static_cast<std::size_t>(p)]);
    }
  }

  const Index d = parent.d;
  const Index d0 = static_cast<Index>(model.y_idx_kept.size());
  model.F.resize(d, d0);
  for (Index l = 0; l < d; ++l) {
    for (Index m = 0; m < d0; ++m) {
      model.F(l, m) = A(model.x_idx[static_cast<std::size_t>(l)],
                        model.y_idx_kept[static_cast<std::size_t>(m)]);
    }
  }
  model.D = pseudo_inverse(model.F.transpose(), cutoff_rel).pinv;  // d x d0
  model.parent = parent;
  return model;
}

double evaluate_rectangular(const RectangularModel& model,
                            const SnapshotMatrix& A, Index i, Index j) {
  if (i < 0 || i >= A.nx() || j < 0 || j >= A.ny()) {
    std::ostringstream msg;
    msg << "evaluate_rectangular: cell (" << i << ", " << j << ") outside the "
        << A.nx() << "x" << A.ny() << " grid";
    throw DimensionError(msg.str());
  }
  const Index d = static_cast<Index>(model.x_idx.size());
  const Index d0 = static_cast<Index>(model.y_idx_kept.size());
  if (d == 0) return 0.0;
  Vector u(d);   // A(x_l, j)
  Vector w(d0);  // A(i, y_m)
  for (Index l = 0; l < d; ++l) {
    u(l) = A(model.x_idx[static_cast<std::size_t>(l)], j);
  }
  for (Index m = 0; m < d0; ++m) {
    w(m) = A(i, model.y_idx_kept[static_cast<std::size_t>(m)]);
  }
  return u.dot(model.D * w);
}

}  // namespace eimkit
