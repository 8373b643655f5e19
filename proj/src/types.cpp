// SPDX-License-Identifier: Apache-2.0

#include "eimkit/types.hpp"

#include <cmath>
#include <sstream>

namespace eimkit {

SampleSet::SampleSet(std::string label, std::vector<std::vector<double>> points)
    : label_(std::move(label)), points_(std::move(points)) {
  if (points_.empty()) {
    throw DimensionError("sample set '" + label_ + "': needs at least one point");
  }
  const std::size_t p = points_.front().size();
  if (p == 0) {
    throw DimensionError("sample set '" + label_ +
                         "': coordinate dimension must be >= 1");
  }
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].size() != p) {
      std::ostringstream msg;
      msg << "sample set '" << label_ << "': point " << i << " has dimension "
          << points_[i].size() << ", expected " << p;
      throw DimensionError(msg.str());
    }
    for (std::size_t c = 0; c < p; ++c) {
      if (!std::isfinite(points_[i][c])) {
        std::ostringstream msg;
        msg << "sample set '" << label_ << "': point " << i << ", coordinate "
            << c << " is not finite";
        throw ValueError(msg.str());
      }
    }
  }
}

SnapshotMatrix::SnapshotMatrix(Matrix values) : values_(std::move(values)) {
  if (values_.rows() < 1 || values_.cols() < 1) {
    throw DimensionError("snapshot matrix: needs at least one row and column");
  }
  for (Index j = 0; j < values_.cols(); ++j) {
    for (Index i = 0; i < values_.rows(); ++i) {
      const double v = values_(i, j);
      if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << "snapshot matrix: entry (" << i << ", " << j << ") is not finite";
        throw ValueError(msg.str());
      }
    }
  }
  max_abs_ = values_.cwiseAbs().maxCoeff();
}

SnapshotData::SnapshotData(SampleSet xs_arg, SampleSet ys_arg,
                           SnapshotMatrix matrix_arg)
    : xs(std::move(xs_arg)), ys(std::move(ys_arg)), matrix(std::move(matrix_arg)) {
  if (xs.size() != matrix.nx() || ys.size() != matrix.ny()) {
    std::ostringstream msg;
    msg << "snapshot data: matrix is " << matrix.nx() << "x" << matrix.ny()
        << " but sample sets have " << xs.size() << " / " << ys.size()
        << " points";
    throw DimensionError(msg.str());
  }
}

const char* to_string(SelectionVariant v) {
  switch (v) {
    case SelectionVariant::LinfJoint:
      return "linf-joint";
    case SelectionVariant::YNormFirst:
      return "y-norm-first";
    case SelectionVariant::XNormFirst:
      return "x-norm-first";
  }
  return "unknown";
}

const char* to_string(InnerNorm n) {
  switch (n) {
    case InnerNorm::Linf:
      return "linf";
    case InnerNorm::L2:
      return "l2";
    case InnerNorm::Weighted:
      return "weighted";
  }
  return "unknown";
}

SelectionVariant selection_variant_from_string(const std::string& s) {
  if (s == "linf-joint") return SelectionVariant::LinfJoint;
  if (s == "y-norm-first") return SelectionVariant::YNormFirst;
  if (s == "x-norm-first") return SelectionVariant::XNormFirst;
  throw InvalidConfig("unknown selection variant '" + s + "'");
}

InnerNorm inner_norm_from_string(const std::string& s) {
  if (s == "linf") return InnerNorm::Linf;
  if (s == "l2") return InnerNorm::L2;
  if (s == "weighted") return InnerNorm::Weighted;
  throw InvalidConfig("unknown inner norm '" + s + "'");
}

}  // namespace eimkit
