// SPDX-License-Identifier: Apache-2.0
//
// Command-line entry point: snapshot ingestion, greedy builds, discard
// studies, the generalized variant, and the sensor-failure benchmark study.
//
// Exit codes: 0 success, 1 usage error, 2 data or numerical error.
// Diagnostics go to stderr; results go to stdout or to --out files.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "eimkit/csv_io.hpp"
#include "eimkit/evaluate.hpp"
#include "eimkit/geim.hpp"
#include "eimkit/greedy.hpp"
#include "eimkit/model_json.hpp"
#include "eimkit/rectangular.hpp"
#include "eimkit/sensor_study.hpp"

namespace {

using eimkit::Index;

int thread_count(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("EIMKIT_THREADS")) {
    const int parsed = std::atoi(env);
    if (parsed > 0) return parsed;
  }
  return 1;
}

std::vector<Index> parse_index_list(const std::string& text) {
  std::vector<Index> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const long value = std::stol(item, &used);
    if (used != item.size() || value < 0) {
      throw eimkit::InvalidConfig("cannot parse '" + item +
                                  "' as a selection position");
    }
    out.push_back(static_cast<Index>(value));
  }
  if (out.empty()) {
    throw eimkit::InvalidConfig("expected a comma-separated position list");
  }
  return out;
}

eimkit::NormSpec make_norm_spec(const std::string& variant,
                                const std::string& inner,
                                const std::string& weights_path) {
  eimkit::NormSpec norm;
  norm.variant = eimkit::selection_variant_from_string(variant);
  norm.inner = eimkit::inner_norm_from_string(inner);
  if (!weights_path.empty()) {
    norm.weights = eimkit::load_matrix_csv(weights_path);
  }
  return norm;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw eimkit::Error("cannot open '" + path + "' for writing");
  out << text;
}

void emit_result(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_text(out_path, text);
  }
}

std::string pivot_table(const eimkit::GreedyTrace& trace) {
  std::ostringstream out;
  out << "step          pivot      cond(F)\n";
  for (std::size_t k = 0; k < trace.residuals.size(); ++k) {
    char line[96];
    std::snprintf(line, sizeof(line), "%4zu  %14.6e  %11.4e\n", k + 1,
                  trace.residuals[k], trace.condition_estimates[k]);
    out << line;
  }
  return out.str();
}

nlohmann::json interpolation_json(const eimkit::InterpolationReport& report) {
  return {{"maxRowViolation", report.max_row_violation},
          {"maxColViolation", report.max_col_violation}};
}

int cmd_build(const std::string& snapshots, Index dmax,
              const std::string& variant, const std::string& inner,
              const std::string& weights, std::optional<double> tol,
              const std::string& out, int threads) {
  const eimkit::SnapshotData data = eimkit::load_snapshot_csv(snapshots);
  eimkit::GreedyConfig cfg;
  cfg.d_max = dmax;
  cfg.tol_abs = tol;
  cfg.norm = make_norm_spec(variant, inner, weights);
  const eimkit::SeparatedModel model = eimkit::build(data.matrix, cfg, threads);

  // The pivot table is the stdout result when the model goes to a file;
  // otherwise the JSON owns stdout and the table is a diagnostic.
  std::ostream& table = out.empty() ? std::cerr : std::cout;
  table << pivot_table(model.trace);
  {
    char line[96];
    std::snprintf(line, sizeof(line), "d = %ld, stop tolerance %.6e\n",
                  static_cast<long>(model.d),
                  cfg.tol_abs.value_or(eimkit::default_pivot_tolerance(data.matrix)));
    table << line;
  }
  emit_result(out, eimkit::serialize_model(model) + "\n");
  return 0;
}

int cmd_evaluate(const std::string& model_path, const std::string& snapshots,
                 std::optional<Index> row, std::optional<Index> col) {
  const eimkit::SnapshotData data = eimkit::load_snapshot_csv(snapshots);
  const eimkit::AnyModel any = eimkit::load_model_json(model_path);

  if (row.has_value() != col.has_value()) {
    throw eimkit::InvalidConfig("evaluate: pass both --row and --col or neither");
  }
  if (row.has_value()) {
    double value = 0.0;
    if (const auto* square = std::get_if<eimkit::SeparatedModel>(&any)) {
      value = eimkit::evaluate_symmetric(*square, data.matrix, *row, *col);
    } else if (const auto* rect = std::get_if<eimkit::RectangularModel>(&any)) {
      value = eimkit::evaluate_rectangular(*rect, data.matrix, *row, *col);
    } else {
      throw eimkit::InvalidConfig(
          "evaluate: grid evaluation applies to square and rectangular "
          "models; use geim-reconstruct for generalized models");
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g\n", value);
    std::cout << buf;
    return 0;
  }

  nlohmann::json j;
  if (const auto* square = std::get_if<eimkit::SeparatedModel>(&any)) {
    j["kind"] = "square";
    j["d"] = square->d;
    j["interpolation"] =
        interpolation_json(eimkit::interpolation_report(*square, data.matrix));
  } else if (const auto* rect = std::get_if<eimkit::RectangularModel>(&any)) {
    j["kind"] = "rectangular";
    j["d"] = static_cast<Index>(rect->x_idx.size());
    j["d0"] = static_cast<Index>(rect->y_idx_kept.size());
    j["interpolation"] =
        interpolation_json(eimkit::interpolation_report(*rect, data.matrix));
  } else {
    throw eimkit::InvalidConfig(
        "evaluate: grid evaluation applies to square and rectangular models");
  }
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_discard(const std::string& model_path, const std::string& snapshots,
                const std::string& drop, double cutoff,
                const std::string& out) {
  const eimkit::SnapshotData data = eimkit::load_snapshot_csv(snapshots);
  const eimkit::AnyModel any = eimkit::load_model_json(model_path);
  const auto* square = std::get_if<eimkit::SeparatedModel>(&any);
  if (square == nullptr) {
    throw eimkit::InvalidConfig("discard: --model must be a square model");
  }
  const eimkit::RectangularModel rect =
      eimkit::discard(*square, parse_index_list(drop), data.matrix, cutoff);
  emit_result(out, eimkit::serialize_model(rect) + "\n");
  return 0;
}

int cmd_geim_build(const std::string& library_path, const std::string& dict_path,
                   Index dmax, const std::string& inner,
                   const std::string& weights, std::optional<double> tol,
                   const std::string& out) {
  const eimkit::Matrix library = eimkit::load_matrix_csv(library_path);
  const eimkit::LinearFormDictionary dict(eimkit::load_matrix_csv(dict_path));
  eimkit::GreedyConfig cfg;
  cfg.d_max = dmax;
  cfg.tol_abs = tol;
  cfg.norm = make_norm_spec("y-norm-first", inner, weights);
  const eimkit::GeimModel model = eimkit::geim_build(library, dict, cfg);
  (out.empty() ? std::cerr : std::cout) << pivot_table(model.trace);
  emit_result(out, eimkit::serialize_model(model) + "\n");
  return 0;
}

int cmd_geim_reconstruct(const std::string& model_path,
                         const std::string& measurements_path,
                         const std::string& values, const std::string& out) {
  const eimkit::AnyModel any = eimkit::load_model_json(model_path);

  eimkit::Vector measurements;
  if (!values.empty()) {
    std::vector<double> parsed;
    std::stringstream ss(values);
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::size_t used = 0;
      parsed.push_back(std::stod(item, &used));
      if (used != item.size()) {
        throw eimkit::InvalidConfig("cannot parse '" + item +
                                    "' as a measurement");
      }
    }
    measurements = Eigen::Map<eimkit::Vector>(parsed.data(),
                                              static_cast<Index>(parsed.size()));
  } else if (!measurements_path.empty()) {
    const eimkit::Matrix m = eimkit::load_matrix_csv(measurements_path);
    if (m.rows() != 1 && m.cols() != 1) {
      throw eimkit::DimensionError(
          "geim-reconstruct: measurement file must be a single row or column");
    }
    measurements = m.rows() == 1 ? eimkit::Vector(m.row(0)) : eimkit::Vector(m.col(0));
  } else {
    throw eimkit::InvalidConfig(
        "geim-reconstruct: pass --measurements or --values");
  }

  eimkit::Vector reconstruction;
  if (const auto* geim = std::get_if<eimkit::GeimModel>(&any)) {
    reconstruction = eimkit::geim_reconstruct(*geim, measurements);
  } else if (const auto* rect = std::get_if<eimkit::GeimRectangularModel>(&any)) {
    reconstruction = eimkit::geim_reconstruct(*rect, measurements);
  } else {
    throw eimkit::InvalidConfig(
        "geim-reconstruct: --model must be a generalized model");
  }

  std::ostringstream text;
  eimkit::write_matrix_csv(text, reconstruction.transpose());
  emit_result(out, text.str());
  return 0;
}

int cmd_study(std::uint64_t seed, Index n_eval, Index train_nx, Index train_ny,
              Index d, const std::string& out, const std::string& csv,
              int threads) {
  eimkit::StudyConfig cfg;
  cfg.seed = seed;
  cfg.n_eval = n_eval;
  cfg.train_nx = train_nx;
  cfg.train_ny = train_ny;
  cfg.d = d;
  cfg.threads = threads;
  const eimkit::StudyReport report = eimkit::run_sensor_failure_study(cfg);
  std::cout << eimkit::study_to_table(report);
  if (!out.empty()) {
    write_text(out, eimkit::study_to_json(report).dump(2) + "\n");
  }
  if (!csv.empty()) {
    write_text(csv, eimkit::study_to_csv(report));
  }
  return 0;
}

int cmd_report(const std::string& model_path, const std::string& snapshots) {
  const eimkit::SnapshotData data = eimkit::load_snapshot_csv(snapshots);
  const eimkit::AnyModel any = eimkit::load_model_json(model_path);
  nlohmann::json j;
  const eimkit::GreedyTrace* trace = nullptr;
  if (const auto* square = std::get_if<eimkit::SeparatedModel>(&any)) {
    j["kind"] = "square";
    j["d"] = square->d;
    j["interpolation"] =
        interpolation_json(eimkit::interpolation_report(*square, data.matrix));
    trace = &square->trace;
  } else if (const auto* rect = std::get_if<eimkit::RectangularModel>(&any)) {
    j["kind"] = "rectangular";
    j["d"] = static_cast<Index>(rect->x_idx.size());
    j["d0"] = static_cast<Index>(rect->y_idx_kept.size());
    j["interpolation"] =
        interpolation_json(eimkit::interpolation_report(*rect, data.matrix));
    trace = &rect->parent.trace;
  } else {
    throw eimkit::InvalidConfig(
        "report: grid reports apply to square and rectangular models");
  }
  j["pivots"] = trace->residuals;
  nlohmann::json conds = nlohmann::json::array();
  for (const double c : trace->condition_estimates) {
    if (std::isfinite(c)) {
      conds.push_back(c);
    } else {
      conds.push_back(nullptr);
    }
  }
  j["conditionEstimates"] = std::move(conds);
  std::cout << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"eimkit: separated representations of two-variable functions "
               "with greedy interpolation-point selection, sensor-failure "
               "recovery through rectangular pseudo-inverses, and a "
               "generalized variant over linear-form dictionaries"};
  app.require_subcommand(1);

  int threads_flag = 0;
  app.add_option("--threads", threads_flag,
                 "worker cap (default: EIMKIT_THREADS or 1)");

  // build
  auto* build = app.add_subcommand("build", "greedy model from a snapshot CSV");
  std::string b_snapshots, b_variant = "linf-joint", b_inner = "linf";
  std::string b_weights, b_out;
  Index b_dmax = 0;
  double b_tol = -1.0;
  build->add_option("--snapshots", b_snapshots, "snapshot CSV")->required();
  build->add_option("--dmax", b_dmax, "maximum number of couples")->required();
  build->add_option("--norm", b_variant,
                    "linf-joint | y-norm-first | x-norm-first");
  build->add_option("--inner-norm", b_inner, "linf | l2 | weighted");
  build->add_option("--weights", b_weights, "weight matrix CSV (weighted norm)");
  build->add_option("--tol", b_tol,
                    "absolute pivot stopping tolerance (default 1e-12*max|A|)")
      ->check(CLI::NonNegativeNumber);
  build->add_option("--out", b_out, "model JSON path (default: stdout)");

  // evaluate
  auto* evaluate = app.add_subcommand(
      "evaluate", "evaluate a model at a grid cell or report the "
                  "interpolation violations");
  std::string e_model, e_snapshots;
  Index e_row = -1, e_col = -1;
  evaluate->add_option("--model", e_model, "model JSON")->required();
  evaluate->add_option("--snapshots", e_snapshots, "snapshot CSV")->required();
  evaluate->add_option("--row", e_row, "grid row index");
  evaluate->add_option("--col", e_col, "grid column index");

  // discard
  auto* disc = app.add_subcommand(
      "discard", "drop selected y points and rebuild D as a pseudo-inverse");
  std::string d_model, d_snapshots, d_drop, d_out;
  double d_cutoff = eimkit::kDefaultSvdCutoff;
  disc->add_option("--model", d_model, "square model JSON")->required();
  disc->add_option("--snapshots", d_snapshots, "snapshot CSV")->required();
  disc->add_option("--drop", d_drop,
                   "comma-separated 0-based selection positions")->required();
  disc->add_option("--cutoff", d_cutoff, "relative singular-value cutoff");
  disc->add_option("--out", d_out, "rectangular model JSON (default: stdout)");

  // geim-build
  auto* gbuild = app.add_subcommand(
      "geim-build", "greedy model over a dictionary of linear forms");
  std::string g_library, g_dict, g_inner = "linf", g_weights, g_out;
  Index g_dmax = 0;
  double g_tol = -1.0;
  gbuild->add_option("--library", g_library, "function library CSV (P x G)")
      ->required();
  gbuild->add_option("--dict", g_dict, "dictionary CSV (S x G weights)")
      ->required();
  gbuild->add_option("--dmax", g_dmax, "maximum number of couples")->required();
  gbuild->add_option("--inner-norm", g_inner, "linf | l2 | weighted");
  gbuild->add_option("--weights", g_weights, "weight matrix CSV (weighted norm)");
  gbuild->add_option("--tol", g_tol, "absolute pivot stopping tolerance")
      ->check(CLI::NonNegativeNumber);
  gbuild->add_option("--out", g_out, "model JSON path (default: stdout)");

  // geim-reconstruct
  auto* grec = app.add_subcommand(
      "geim-reconstruct", "reconstruct a function from its measurements");
  std::string r_model, r_measurements, r_values, r_out;
  grec->add_option("--model", r_model, "generalized model JSON")->required();
  grec->add_option("--measurements", r_measurements,
                   "CSV with one measurement row or column");
  grec->add_option("--values", r_values, "comma-separated measurements");
  grec->add_option("--out", r_out, "reconstruction CSV (default: stdout)");

  // paper-experiment
  auto* study = app.add_subcommand(
      "paper-experiment",
      "sensor-failure recovery study on the analytic benchmark field");
  std::uint64_t s_seed = 0;
  Index s_neval = 1000, s_nx = 200, s_ny = 100, s_d = 8;
  std::string s_out, s_csv;
  study->add_option("--seed", s_seed, "rng seed");
  study->add_option("--n-eval", s_neval, "evaluation sample count");
  study->add_option("--train-nx", s_nx, "x training candidates");
  study->add_option("--train-ny", s_ny, "y training candidates");
  study->add_option("--dmax", s_d, "couples in the full model");
  study->add_option("--out", s_out, "report JSON path");
  study->add_option("--csv", s_csv, "per-pair error CSV path");

  // report
  auto* rep = app.add_subcommand(
      "report", "interpolation violations and greedy trace of a model");
  std::string p_model, p_snapshots;
  rep->add_option("--model", p_model, "model JSON")->required();
  rep->add_option("--snapshots", p_snapshots, "snapshot CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  }

  const int threads = thread_count(threads_flag);
  try {
    if (build->parsed()) {
      std::optional<double> tol;
      if (b_tol >= 0.0) tol = b_tol;
      return cmd_build(b_snapshots, b_dmax, b_variant, b_inner, b_weights, tol,
                       b_out, threads);
    }
    if (evaluate->parsed()) {
      std::optional<Index> row, col;
      if (e_row >= 0) row = e_row;
      if (e_col >= 0) col = e_col;
      return cmd_evaluate(e_model, e_snapshots, row, col);
    }
    if (disc->parsed()) {
      return cmd_discard(d_model, d_snapshots, d_drop, d_cutoff, d_out);
    }
    if (gbuild->parsed()) {
      std::optional<double> tol;
      if (g_tol >= 0.0) tol = g_tol;
      return cmd_geim_build(g_library, g_dict, g_dmax, g_inner, g_weights, tol,
                            g_out);
    }
    if (grec->parsed()) {
      return cmd_geim_reconstruct(r_model, r_measurements, r_values, r_out);
    }
    if (study->parsed()) {
      return cmd_study(s_seed, s_neval, s_nx, s_ny, s_d, s_out, s_csv, threads);
    }
    if (rep->parsed()) {
      return cmd_report(p_model, p_snapshots);
    }
  } catch (const eimkit::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
