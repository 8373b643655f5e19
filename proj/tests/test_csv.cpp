// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>
#include <sstream>
#include <string>

#include "eimkit/csv_io.hpp"
#include "eimkit/sensor_study.hpp"
#include "helpers.hpp"

using namespace eimkit;

namespace {

SnapshotData ingest_text(const std::string& text) {
  std::istringstream in(text);
  return ingest_snapshots(in);
}

}  // namespace

TEST_SUITE("csv") {

TEST_CASE("2x2 snapshot echoes its values") {
  const SnapshotData data =
      ingest_text("x\\y,0.1,0.9\n0.25,1,2\n0.75,3,4\n");
  CHECK(data.matrix.nx() == 2);
  CHECK(data.matrix.ny() == 2);
  CHECK(data.matrix(0, 0) == 1.0);
  CHECK(data.matrix(0, 1) == 2.0);
  CHECK(data.matrix(1, 0) == 3.0);
  CHECK(data.matrix(1, 1) == 4.0);
  CHECK(data.xs.size() == 2);
  CHECK(data.ys.point(1)[0] == 0.9);
}

TEST_CASE("multi-dimensional labels parse through ';'") {
  const SnapshotData data =
      ingest_text("x\\y,0.5;0.25,0.5;0.75\n0.1;0.2;0.3,7,8\n");
  CHECK(data.xs.dimension() == 3);
  CHECK(data.ys.dimension() == 2);
  CHECK(data.xs.point(0)[2] == 0.3);
  CHECK(data.ys.point(1)[1] == 0.75);
}

TEST_CASE("a NaN cell is rejected naming the cell") {
  try {
    ingest_text("x\\y,0.1,0.9\n0.25,1,nan\n0.75,3,4\n");
    FAIL("expected ValueError");
  } catch (const ValueError& e) {
    const std::string what = e.what();
    CHECK(what.find("line 2") != std::string::npos);
    CHECK(what.find("field 3") != std::string::npos);
  }
  CHECK_THROWS_AS(ingest_text("x\\y,0.1\n0.25,inf\n"), ValueError);
}

TEST_CASE("ragged rows are rejected naming the row") {
  try {
    ingest_text("x\\y,0.1,0.9\n0.25,1\n");
    FAIL("expected DimensionError");
  } catch (const DimensionError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("malformed input raises ParseError") {
  CHECK_THROWS_AS(ingest_text(""), ParseError);
  CHECK_THROWS_AS(ingest_text("a,b\n1,2\n"), ParseError);      // bad header
  CHECK_THROWS_AS(ingest_text("x\\y,0.1\n"), ParseError);      // no data rows
  CHECK_THROWS_AS(ingest_text("x\\y,0.1\n0.5,12x\n"), ParseError);
  CHECK_THROWS_AS(ingest_text("x\\y,oops\n0.5,1\n"), ParseError);
}

TEST_CASE("benchmark grid of 1000x1000 ingests finite in (-1, 1]") {
  StudyConfig cfg;
  cfg.train_nx = 1000;
  cfg.train_ny = 1000;
  cfg.seed = 5;
  const SnapshotData data = benchmark_training_data(cfg);
  std::ostringstream text;
  write_snapshot_csv(text, data);
  const SnapshotData parsed = ingest_text(text.str());
  CHECK(parsed.matrix.nx() == 1000);
  CHECK(parsed.matrix.ny() == 1000);
  double lo = 1.0, hi = -1.0;
  for (Index i = 0; i < parsed.matrix.nx(); i += 13) {
    for (Index j = 0; j < parsed.matrix.ny(); j += 11) {
      lo = std::min(lo, parsed.matrix(i, j));
      hi = std::max(hi, parsed.matrix(i, j));
    }
  }
  CHECK(lo > -1.0);
  CHECK(hi <= 1.0);
  CHECK(parsed.matrix.max_abs() <= 1.0);
}

TEST_CASE("snapshot round-trip reproduces values and coordinates exactly") {
  std::mt19937_64 rng(77);
  std::vector<std::vector<double>> xp, yp;
  for (int i = 0; i < 7; ++i) xp.push_back({testkit::unit(rng), testkit::unit(rng)});
  for (int j = 0; j < 5; ++j) yp.push_back({testkit::unit(rng)});
  const SnapshotData data(SampleSet("X", xp), SampleSet("Y", yp),
                          SnapshotMatrix(testkit::random_matrix(rng, 7, 5)));
  std::ostringstream text;
  write_snapshot_csv(text, data);
  const SnapshotData parsed = ingest_text(text.str());
  CHECK(testkit::bitwise_equal(parsed.matrix.values(), data.matrix.values()));
  for (Index i = 0; i < 7; ++i) {
    CHECK(parsed.xs.point(i) == data.xs.point(i));
  }
  for (Index j = 0; j < 5; ++j) {
    CHECK(parsed.ys.point(j) == data.ys.point(j));
  }
}

TEST_CASE("headerless matrix tables") {
  std::istringstream in("1,2,3\n4,5,6\n");
  const Matrix m = read_matrix_csv(in);
  CHECK(m.rows() == 2);
  CHECK(m.cols() == 3);
  CHECK(m(1, 2) == 6.0);

  std::istringstream ragged("1,2\n3\n");
  CHECK_THROWS_AS(read_matrix_csv(ragged), DimensionError);
  std::istringstream empty("");
  CHECK_THROWS_AS(read_matrix_csv(empty), ParseError);

  std::mt19937_64 rng(5);
  const Matrix w = testkit::random_matrix(rng, 4, 9);
  std::ostringstream out;
  write_matrix_csv(out, w);
  std::istringstream back(out.str());
  CHECK(testkit::bitwise_equal(read_matrix_csv(back), w));
}

TEST_CASE("sample set and snapshot invariants") {
  CHECK_THROWS_AS((SampleSet("X", {})), DimensionError);
  CHECK_THROWS_AS((SampleSet("X", {{1.0}, {1.0, 2.0}})), DimensionError);
  CHECK_THROWS_AS((SnapshotMatrix(Matrix(0, 3))), DimensionError);
  Matrix bad = Matrix::Zero(2, 2);
  bad(1, 1) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS((SnapshotMatrix(bad)), ValueError);
  CHECK_THROWS_AS((SnapshotData(SampleSet("X", {{0.0}}), SampleSet("Y", {{0.0}}),
                                SnapshotMatrix(Matrix::Ones(2, 1)))),
                  DimensionError);
}

}  // TEST_SUITE
