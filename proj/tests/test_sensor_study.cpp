// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "eimkit/sensor_study.hpp"
#include "helpers.hpp"

using namespace eimkit;

TEST_SUITE("sensor_study") {

TEST_CASE("benchmark field values") {
  CHECK(benchmark_field(0, 0, 0, 0.5) == 1.0);
  CHECK(benchmark_field(1, 0, 0, 0.0) == 1.0);
  // scalar cosine oracle at (1,1,1) x 1: cos(6)
  CHECK(benchmark_field(1, 1, 1, 1.0) == std::cos(6.0));
  CHECK(benchmark_field(1, 1, 1, 1.0) ==
        doctest::Approx(0.96017028665036602).epsilon(1e-12));
  CHECK(benchmark_field(0.5, 0.25, 0.125, 0.8) ==
        std::cos((0.5 + 0.5 + 0.375) * 0.8));
}

TEST_CASE("training data is shaped and bounded as configured") {
  StudyConfig cfg;
  cfg.train_nx = 60;
  cfg.train_ny = 25;
  cfg.seed = 17;
  const SnapshotData data = benchmark_training_data(cfg);
  CHECK(data.xs.size() == 60);
  CHECK(data.xs.dimension() == 3);
  CHECK(data.ys.size() == 25);
  CHECK(data.ys.dimension() == 1);
  CHECK(data.matrix.max_abs() <= 1.0);
  for (Index j = 0; j + 1 < data.ys.size(); ++j) {
    CHECK(data.ys.point(j)[0] < data.ys.point(j + 1)[0]);  // uniform ascending
  }
  for (Index i = 0; i < data.xs.size(); ++i) {
    for (double c : data.xs.point(i)) {
      CHECK(c >= 0.0);
      CHECK(c < 1.0);
    }
  }
}

TEST_CASE("the default study produces 28 dominated pairs") {
  StudyConfig cfg;  // defaults: 200 x 100 grid, seed 0, 1000 samples
  const StudyReport report = run_sensor_failure_study(cfg);
  REQUIRE(report.pairs.size() == 28);
  for (const PairStudy& p : report.pairs) {
    CHECK(p.i < p.j);
    CHECK(p.square_error >= 0.0);
    CHECK(std::isfinite(p.square_error));
    CHECK(std::isfinite(p.rect_error));
    CHECK(p.rect_error < p.square_error);
  }
  CHECK(report.square_stats.min > 0.0);
  CHECK(report.square_stats.min <= report.square_stats.mean);
  CHECK(report.square_stats.mean <= report.square_stats.max);
  CHECK(report.rect_stats.mean * 2.0 <= report.square_stats.mean);
  CHECK(report.pivots.size() == 8);
}

TEST_CASE("reports are bit-identical across reruns and thread counts") {
  StudyConfig cfg;
  cfg.train_nx = 120;
  cfg.train_ny = 40;
  cfg.n_eval = 300;
  cfg.seed = 21;
  cfg.threads = 1;
  const std::string first = study_to_json(run_sensor_failure_study(cfg)).dump();
  const std::string second = study_to_json(run_sensor_failure_study(cfg)).dump();
  CHECK(first == second);
  cfg.threads = 4;
  const std::string threaded = study_to_json(run_sensor_failure_study(cfg)).dump();
  CHECK(first == threaded);
}

TEST_CASE("a rank-deficient field cannot reach d = 8") {
  // f(x, y) = g(y): every snapshot row is identical, rank 1.
  std::vector<std::vector<double>> xp, yp;
  std::mt19937_64 rng(5);
  for (int i = 0; i < 30; ++i) {
    xp.push_back({testkit::unit(rng), testkit::unit(rng), testkit::unit(rng)});
  }
  Matrix values(30, 20);
  for (int j = 0; j < 20; ++j) {
    const double y = (j + 0.5) / 20.0;
    yp.push_back({y});
    values.col(j).setConstant(std::cos(y));
  }
  const SnapshotData data(SampleSet("X", xp), SampleSet("Y", yp),
                          SnapshotMatrix(values));
  StudyConfig cfg;
  CHECK_THROWS_AS(run_sensor_failure_study(data, cfg), BuildFailure);
}

TEST_CASE("report serializations carry the full pair table") {
  StudyConfig cfg;
  cfg.train_nx = 100;
  cfg.train_ny = 30;
  cfg.n_eval = 200;
  cfg.seed = 13;
  const StudyReport report = run_sensor_failure_study(cfg);
  const nlohmann::json j = study_to_json(report);
  CHECK(j["pairs"].size() == 28);
  CHECK(j["seed"] == 13);
  CHECK(j["nEval"] == 200);
  CHECK(j["squareStats"].contains("mean"));

  const std::string table = study_to_table(report);
  CHECK(table.find("{0,1}") != std::string::npos);
  CHECK(table.find("square:") != std::string::npos);

  const std::string csv = study_to_csv(report);
  CHECK(csv.rfind("i,j,square,rect\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 29);
}

TEST_CASE("study validation") {
  StudyConfig cfg;
  cfg.d = 0;
  CHECK_THROWS_AS(run_sensor_failure_study(cfg), InvalidConfig);
  StudyConfig bad_grid;
  bad_grid.train_nx = 0;
  CHECK_THROWS_AS(benchmark_training_data(bad_grid), InvalidConfig);
}

}  // TEST_SUITE
