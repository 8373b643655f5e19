// SPDX-License-Identifier: Apache-2.0

#include "eimkit/sensor_study.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>

#include "eimkit/greedy.hpp"
#include "eimkit/linalg.hpp"
#include "eimkit/parallel_for.hpp"
#include "eimkit/rectangular.hpp"

namespace eimkit {

namespace {

// 53-bit uniform in [0, 1), identical on every platform for a given engine
// state (no distribution-object implementation dependence).
double next_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::string format_stat(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6e", v);
  return buf;
}

}  // namespace

double benchmark_field(double x1, double x2, double x3, double y) {
  return std::cos((x1 + 2.0 * x2 + 3.0 * x3) * y);
}

SnapshotData benchmark_training_data(const StudyConfig& cfg) {
  if (cfg.train_nx < 1 || cfg.train_ny < 1) {
    throw InvalidConfig("study: training grid sizes must be >= 1");
  }
  std::mt19937_64 rng(cfg.seed);
  std::vector<std::vector<double>> x_points;
  x_points.reserve(static_cast<std::size_t>(cfg.train_nx));
  for (Index i = 0; i < cfg.train_nx; ++i) {
    x_points.push_back({next_unit(rng), next_unit(rng), next_unit(rng)});
  }
  std::vector<std::vector<double>> y_points;
  y_points.reserve(static_cast<std::size_t>(cfg.train_ny));
  for (Index j = 0; j < cfg.train_ny; ++j) {
    y_points.push_back({(static_cast<double>(j) + 0.5) /
                        static_cast<double>(cfg.train_ny)});
  }

  Matrix values(cfg.train_nx, cfg.train_ny);
  for (Index i = 0; i < cfg.train_nx; ++i) {
    const auto& x = x_points[static_cast<std::size_t>(i)];
    for (Index j = 0; j < cfg.train_ny; ++j) {
      values(i, j) = benchmark_field(x[0], x[1], x[2],
                                     y_points[static_cast<std::size_t>(j)][0]);
    }
  }
  return SnapshotData(SampleSet("X", std::move(x_points)),
                      SampleSet("Y", std::move(y_points)),
                      SnapshotMatrix(std::move(values)));
}

StudyReport run_sensor_failure_study(const SnapshotData& data,
                                     const StudyConfig& cfg) {
  if (cfg.d < 1) throw InvalidConfig("study: d must be >= 1");
  if (cfg.n_eval < 1) throw InvalidConfig("study: n_eval must be >= 1");
  if (data.xs.dimension() != 3 || data.ys.dimension() != 1) {
    throw InvalidConfig(
        "study: the benchmark field expects 3-d x candidates and 1-d y "
        "candidates");
  }

  GreedyConfig greedy_cfg;
  greedy_cfg.d_max = cfg.d;
  greedy_cfg.norm = NormSpec::linf_joint();
  const SeparatedModel model = build(data.matrix, greedy_cfg, cfg.threads);
  if (model.d < cfg.d) {
    std::ostringstream msg;
    msg << "study: greedy stopped at d = " << model.d << " before reaching "
        << cfg.d << "; enlarge the training grids";
    throw BuildFailure(msg.str());
  }

  // Off-grid evaluation samples from a stream decoupled from the training
  // draw, so custom training data sees the same samples.
  std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  const Index n = cfg.n_eval;
  const Index d = cfg.d;

  Vector f_vals(n);
  Matrix U(n, d);  // f(x_l, y_s): selected x couples against sample y
  Matrix W(n, d);  // f(x_s, y_m): sample x against selected y couples
  for (Index s = 0; s < n; ++s) {
    const double x1 = next_unit(rng);
    const double x2 = next_unit(rng);
    const double x3 = next_unit(rng);
    const double y = next_unit(rng);
    f_vals(s) = benchmark_field(x1, x2, x3, y);
    for (Index l = 0; l < d; ++l) {
      const auto& xl = data.xs.point(model.x_idx[static_cast<std::size_t>(l)]);
      U(s, l) = benchmark_field(xl[0], xl[1], xl[2], y);
    }
    for (Index m = 0; m < d; ++m) {
      const double ym =
          data.ys.point(model.y_idx[static_cast<std::size_t>(m)])[0];
      W(s, m) = benchmark_field(x1, x2, x3, ym);
    }
  }
  const double f_norm = f_vals.norm();

  StudyReport report;
  report.config = cfg;
  report.pivots = model.trace.residuals;
  for (Index i = 0; i < d; ++i) {
    for (Index j = i + 1; j < d; ++j) {
      report.pairs.push_back({i, j, 0.0, 0.0});
    }
  }

  parallel_for(static_cast<long>(report.pairs.size()), cfg.threads,
               [&](long begin, long end) {
    for (long idx = begin; idx < end; ++idx) {
      PairStudy& pair = report.pairs[static_cast<std::size_t>(idx)];
      std::vector<Index> kept;
      for (Index p = 0; p < d; ++p) {
        if (p != pair.i && p != pair.j) kept.push_back(p);
      }
      const Index d0 = static_cast<Index>(kept.size());

      // (i) square model restricted to the surviving couples.
      Matrix F6(d0, d0);
      for (Index l = 0; l < d0; ++l) {
        for (Index m = 0; m < d0; ++m) {
          F6(l, m) = model.F(kept[static_cast<std::size_t>(l)],
                             kept[static_cast<std::size_t>(m)]);
        }
      }
      const Matrix D6 = inverse_transpose(F6);

      // (ii) rectangular model keeping every x point.
      const RectangularModel rect =
          discard(model, {pair.i, pair.j}, data.matrix);

      double sq_err2 = 0.0;
      double rect_err2 = 0.0;
      for (Index s = 0; s < n; ++s) {
        Vector u_kept(d0), w_kept(d0);
        for (Index k = 0; k < d0; ++k) {
          u_kept(k) = U(s, kept[static_cast<std::size_t>(k)]);
          w_kept(k) = W(s, kept[static_cast<std::size_t>(k)]);
        }
        const double sq = u_kept.dot(D6 * w_kept);
        const double rc = U.row(s).dot(rect.D * w_kept);
        sq_err2 += (f_vals(s) - sq) * (f_vals(s) - sq);
        rect_err2 += (f_vals(s) - rc) * (f_vals(s) - rc);
      }
      pair.square_error = std::sqrt(sq_err2) / f_norm;
      pair.rect_error = std::sqrt(rect_err2) / f_norm;
    }
  });

  auto stats = [](const std::vector<PairStudy>& pairs, bool rect) {
    ErrorStats s;
    if (pairs.empty()) return s;
    double sum = 0.0;
    s.min = std::numeric_limits<double>::infinity();
    for (const PairStudy& p : pairs) {
      const double e = rect ? p.rect_error : p.square_error;
      s.max = std::max(s.max, e);
      s.min = std::min(s.min, e);
      sum += e;
    }
    s.mean = sum / static_cast<double>(pairs.size());
    return s;
  };
  report.square_stats = stats(report.pairs, false);
  report.rect_stats = stats(report.pairs, true);
  return report;
}

StudyReport run_sensor_failure_study(const StudyConfig& cfg) {
  return run_sensor_failure_study(benchmark_training_data(cfg), cfg);
}

nlohmann::json study_to_json(const StudyReport& report) {
  nlohmann::json j;
  j["seed"] = report.config.seed;
  j["nEval"] = report.config.n_eval;
  j["trainNx"] = report.config.train_nx;
  j["trainNy"] = report.config.train_ny;
  j["d"] = report.config.d;
  j["pivots"] = report.pivots;
  nlohmann::json pairs = nlohmann::json::array();
  for (const PairStudy& p : report.pairs) {
    pairs.push_back({{"i", p.i},
                     {"j", p.j},
                     {"square", p.square_error},
                     {"rect", p.rect_error}});
  }
  j["pairs"] = std::move(pairs);
  j["squareStats"] = {{"max", report.square_stats.max},
                      {"min", report.square_stats.min},
                      {"mean", report.square_stats.mean}};
  j["rectStats"] = {{"max", report.rect_stats.max},
                    {"min", report.rect_stats.min},
                    {"mean", report.rect_stats.mean}};
  return j;
}

std::string study_to_table(const StudyReport& report) {
  std::ostringstream out;
  out << "pair        square-error    rect-error      ratio\n";
  for (const PairStudy& p : report.pairs) {
    char label[32];
    std::snprintf(label, sizeof(label), "{%ld,%ld}", static_cast<long>(p.i),
                  static_cast<long>(p.j));
    char line[128];
    const double ratio =
        p.rect_error > 0.0 ? p.square_error / p.rect_error : 0.0;
    std::snprintf(line, sizeof(line), "%-10s%14.6e  %14.6e  %9.2f\n", label,
                  p.square_error, p.rect_error, ratio);
    out << line;
  }
  out << "\n";
  out << "square: max " << format_stat(report.square_stats.max) << "  min "
      << format_stat(report.square_stats.min) << "  mean "
      << format_stat(report.square_stats.mean) << "\n";
  out << "rect:   max " << format_stat(report.rect_stats.max) << "  min "
      << format_stat(report.rect_stats.min) << "  mean "
      << format_stat(report.rect_stats.mean) << "\n";
  return out.str();
}

std::string study_to_csv(const StudyReport& report) {
  std::ostringstream out;
  out << "i,j,square,rect\n";
  for (const PairStudy& p : report.pairs) {
    char line[128];
    std::snprintf(line, sizeof(line), "%ld,%ld,%.17g,%.17g\n",
                  static_cast<long>(p.i), static_cast<long>(p.j),
                  p.square_error, p.rect_error);
    out << line;
  }
  return out.str();
}

}  // namespace eimkit
