// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <Eigen/SVD>
#include <limits>

#include "eimkit/linalg.hpp"
#include "helpers.hpp"

using namespace eimkit;
using testkit::max_abs;
using testkit::max_abs_diff;

namespace {

// Independent 2x2 oracle: adjugate over determinant, then transpose.
Matrix inverse_transpose_2x2(const Matrix& F) {
  const double det = F(0, 0) * F(1, 1) - F(0, 1) * F(1, 0);
  Matrix inv(2, 2);
  inv << F(1, 1), -F(0, 1), -F(1, 0), F(0, 0);
  inv /= det;
  return inv.transpose();
}

double sigma_max(const Matrix& A) {
  if (A.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Matrix>(A).singularValues()(0);
}

// The four Penrose identities are themselves the oracle. (i) is normalized
// by sigma_max(A) as pinned; (ii) by the pseudo-inverse's own magnitude and
// (iii)/(iv) by 1 (projector entries are O(1)), which keeps the bounds
// scale-invariant.
void check_penrose(const Matrix& A, const Matrix& Ap, double tol = 1e-10) {
  const double sa = sigma_max(A);
  const double sp = std::max(sigma_max(Ap), 1.0);
  if (sa == 0.0) {
    CHECK(max_abs(Ap) == 0.0);
    return;
  }
  CHECK(max_abs(A * Ap * A - A) <= tol * sa);            // (i)
  CHECK(max_abs(Ap * A * Ap - Ap) <= tol * sp);          // (ii)
  const Matrix P = A * Ap;
  const Matrix Q = Ap * A;
  CHECK(max_abs(P - P.transpose()) <= tol);              // (iii)
  CHECK(max_abs(Q - Q.transpose()) <= tol);              // (iv)
}

}  // namespace

TEST_SUITE("linalg") {

TEST_CASE("inverse_transpose of the identity is the identity") {
  for (const Index d : {1, 3, 5}) {
    const Matrix D = inverse_transpose(Matrix::Identity(d, d));
    CHECK(max_abs_diff(D, Matrix::Identity(d, d)) <= 1e-14);
  }
}

TEST_CASE("inverse_transpose matches the 2x2 oracle") {
  Matrix F(2, 2);
  F << 2, 0, 1, 1;
  const Matrix D = inverse_transpose(F);
  CHECK(max_abs_diff(D, inverse_transpose_2x2(F)) <= 1e-14);

  Matrix expected(2, 2);  // frozen from the oracle
  expected << 0.5, -0.5, 0.0, 1.0;
  CHECK(max_abs_diff(D, expected) <= 1e-15);

  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 25; ++rep) {
    const Matrix G = testkit::random_matrix(rng, 2, 2);
    if (std::abs(G.determinant()) < 0.05) continue;
    CHECK(max_abs_diff(inverse_transpose(G), inverse_transpose_2x2(G)) <= 1e-12);
  }
}

TEST_CASE("inverse_transpose rejects a rank-deficient snapshot block") {
  std::mt19937_64 rng(7);
  const Matrix F = testkit::random_rank_k(rng, 3, 3, 2);
  CHECK_THROWS_AS(inverse_transpose(F), SingularMatrix);
  try {
    inverse_transpose(F, 4);
  } catch (const SingularMatrix& e) {
    CHECK(e.step == 4);
  }
}

TEST_CASE("inverse_transpose rejects non-square input") {
  CHECK_THROWS_AS(inverse_transpose(Matrix::Zero(2, 3)), DimensionError);
}

TEST_CASE("solved D satisfies F^T D = Id at the pinned scale bound") {
  std::mt19937_64 rng(21);
  for (const Index d : {2, 5, 9, 17}) {
    const Matrix F = testkit::random_matrix(rng, d, d);
    const Matrix D = inverse_transpose(F);
    const double bound = 1e-10 * max_abs(F) * max_abs(D);
    CHECK(max_abs(F.transpose() * D - Matrix::Identity(d, d)) <= bound);
    CHECK(max_abs(D * F.transpose() - Matrix::Identity(d, d)) <= bound);
  }
}

TEST_CASE("pseudo_inverse of the identity is the identity") {
  const Pinv p = pseudo_inverse(Matrix::Identity(4, 4), 0.0);
  CHECK(max_abs_diff(p.pinv, Matrix::Identity(4, 4)) <= 1e-14);
  CHECK(p.effective_rank == 4);
}

TEST_CASE("pseudo_inverse truncates an exactly singular diagonal") {
  Matrix A(2, 2);
  A << 1, 0, 0, 0;
  const Pinv p = pseudo_inverse(A, 0.0);
  CHECK(max_abs_diff(p.pinv, A) <= 1e-14);
  CHECK(p.effective_rank == 1);
}

TEST_CASE("pseudo_inverse cutoff drops small singular values") {
  Matrix A = Matrix::Zero(2, 2);
  A(0, 0) = 1.0;
  A(1, 1) = 1e-13;
  const Pinv truncated = pseudo_inverse(A, 1e-12);
  CHECK(truncated.effective_rank == 1);
  CHECK(truncated.pinv(1, 1) == 0.0);
  CHECK(truncated.cutoff == doctest::Approx(1e-12).epsilon(1e-10));
  const Pinv full = pseudo_inverse(A, 0.0);
  CHECK(full.effective_rank == 2);
  CHECK(full.pinv(1, 1) == doctest::Approx(1e13).epsilon(1e-10));
}

TEST_CASE("pseudo_inverse of a seeded 8x6 matrix satisfies Penrose") {
  std::mt19937_64 rng(8642);
  const Matrix A = testkit::random_matrix(rng, 8, 6);
  const Pinv p = pseudo_inverse(A);
  CHECK(p.effective_rank == 6);
  CHECK(testkit::bitwise_equal(p.source, A));
  CHECK(p.pinv.rows() == 6);
  CHECK(p.pinv.cols() == 8);
  check_penrose(A, p.pinv);
}

TEST_CASE("pseudo_inverse of the zero matrix is the zero matrix") {
  const Pinv p = pseudo_inverse(Matrix::Zero(3, 5), 1e-12);
  CHECK(p.pinv.rows() == 5);
  CHECK(p.pinv.cols() == 3);
  CHECK(max_abs(p.pinv) == 0.0);
  CHECK(p.effective_rank == 0);
  CHECK(p.cutoff == 0.0);
}

TEST_CASE("pseudo_inverse validates its inputs") {
  CHECK_THROWS_AS(pseudo_inverse(Matrix::Identity(2, 2), -0.1), InvalidConfig);
  CHECK_THROWS_AS(pseudo_inverse(Matrix::Identity(2, 2), 1.0), InvalidConfig);
  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(pseudo_inverse(bad), ValueError);
}

TEST_CASE("condition_estimate basics") {
  CHECK(condition_estimate(Matrix::Identity(6, 6)) == doctest::Approx(1.0));
  Matrix D2 = Matrix::Zero(2, 2);
  D2(0, 0) = 10.0;
  D2(1, 1) = 0.1;
  CHECK(condition_estimate(D2) == doctest::Approx(100.0).epsilon(1e-8));
  std::mt19937_64 rng(3);
  const Matrix singular = testkit::random_rank_k(rng, 4, 4, 2);
  CHECK(std::isinf(condition_estimate(singular)));
}

TEST_CASE("inverse_transpose agrees with pseudo_inverse(F^T, 0)") {
  std::mt19937_64 rng(99);
  for (int rep = 0; rep < 20; ++rep) {
    const Index d = 1 + static_cast<Index>(rng() % 32);
    const Matrix F =
        testkit::random_matrix(rng, d, d) + 2.0 * Matrix::Identity(d, d);
    const Matrix D = inverse_transpose(F);
    const Matrix Dsvd = pseudo_inverse(F.transpose(), 0.0).pinv;
    CHECK(max_abs_diff(D, Dsvd) <= 1e-8 * max_abs(Dsvd));
  }
}

TEST_CASE("pseudo_inverse of a square invertible matrix is its inverse") {
  std::mt19937_64 rng(100);
  for (int rep = 0; rep < 20; ++rep) {
    const Index d = 1 + static_cast<Index>(rng() % 16);
    const Matrix F =
        testkit::random_matrix(rng, d, d) + 2.0 * Matrix::Identity(d, d);
    const Matrix inv = F.inverse();  // independent route
    CHECK(max_abs_diff(pseudo_inverse(F, 0.0).pinv, inv) <= 1e-8 * max_abs(inv));
  }
}

TEST_CASE("Penrose suite over mixed seeded shapes") {
  std::mt19937_64 rng(2024);
  for (int rep = 0; rep < 60; ++rep) {
    const Index r = 1 + static_cast<Index>(rng() % 32);
    const Index c = 1 + static_cast<Index>(rng() % 32);
    Matrix A;
    switch (rep % 3) {
      case 0:
        A = testkit::random_matrix(rng, r, c);
        break;
      case 1:  // rank-deficient
        A = testkit::random_rank_k(rng, r, c, std::max<Index>(1, std::min(r, c) / 2));
        break;
      default:  // badly scaled
        A = testkit::random_matrix(rng, r, c) * 1e8;
        break;
    }
    check_penrose(A, pseudo_inverse(A).pinv);
  }
}

}  // TEST_SUITE
