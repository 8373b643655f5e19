// SPDX-License-Identifier: Apache-2.0
//
// Shared fixtures for the test suites: seeded generators (platform-stable,
// no std::uniform_real_distribution) and small independent oracles.

#pragma once

#include <random>
#include <vector>

#include "eimkit/types.hpp"

namespace testkit {

using eimkit::Index;
using eimkit::Matrix;
using eimkit::Vector;

// 53-bit uniform in [0, 1).
inline double unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform in [-1, 1).
inline double symmetric_unit(std::mt19937_64& rng) {
  return 2.0 * unit(rng) - 1.0;
}

inline Matrix random_matrix(std::mt19937_64& rng, Index rows, Index cols) {
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) m(i, j) = symmetric_unit(rng);
  }
  return m;
}

inline Vector random_vector(std::mt19937_64& rng, Index n) {
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = symmetric_unit(rng);
  return v;
}

// Sum of k outer products; rank exactly k with probability one.
inline Matrix random_rank_k(std::mt19937_64& rng, Index rows, Index cols,
                            Index k) {
  Matrix m = Matrix::Zero(rows, cols);
  for (Index r = 0; r < k; ++r) {
    m += random_vector(rng, rows) * random_vector(rng, cols).transpose();
  }
  return m;
}

inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  return max_abs(a - b);
}

inline bool bitwise_equal(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      if (a(i, j) != b(i, j)) return false;
    }
  }
  return true;
}

}  // namespace testkit
