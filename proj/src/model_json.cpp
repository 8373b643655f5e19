// SPDX-License-Identifier: Apache-2.0

#include "eimkit/model_json.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace eimkit {

namespace {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json indices_to_json(const std::vector<Index>& idx) {
  json out = json::array();
  for (const Index i : idx) out.push_back(i);
  return out;
}

// Condition estimates may carry the +inf sentinel, which JSON cannot hold;
// it is encoded as null and restored on load.
json reals_to_json(const std::vector<double>& values) {
  json out = json::array();
  for (const double v : values) {
    if (std::isfinite(v)) {
      out.push_back(v);
    } else {
      out.push_back(nullptr);
    }
  }
  return out;
}

json norm_to_json(const NormSpec& norm) {
  json out;
  out["variant"] = to_string(norm.variant);
  out["inner"] = to_string(norm.inner);
  if (norm.weights.has_value()) out["weights"] = matrix_to_json(*norm.weights);
  return out;
}

json trace_to_json(const GreedyTrace& trace) {
  json out;
  out["residuals"] = trace.residuals;
  out["norm"] = norm_to_json(trace.norm_used);
  out["conditionEstimates"] = reals_to_json(trace.condition_estimates);
  return out;
}

[[noreturn]] void fail(const std::string& what) {
  throw ParseError("model json: " + what);
}

const json& need(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) fail(std::string("missing field '") + key + "'");
  return *it;
}

Matrix matrix_from_json(const json& j, const char* key) {
  if (!j.is_array()) fail(std::string("field '") + key + "' must be an array");
  const Index rows = static_cast<Index>(j.size());
  if (rows == 0) return Matrix(0, 0);
  if (!j[0].is_array()) {
    fail(std::string("field '") + key + "' must be an array of rows");
  }
  const Index cols = static_cast<Index>(j[0].size());
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      fail(std::string("field '") + key + "' has ragged rows");
    }
    for (Index c = 0; c < cols; ++c) {
      const json& cell = row[static_cast<std::size_t>(c)];
      if (!cell.is_number()) {
        fail(std::string("field '") + key + "' has a non-numeric entry");
      }
      m(i, c) = cell.get<double>();
    }
  }
  return m;
}

std::vector<Index> indices_from_json(const json& j, const char* key) {
  if (!j.is_array()) fail(std::string("field '") + key + "' must be an array");
  std::vector<Index> idx;
  idx.reserve(j.size());
  for (const json& v : j) {
    if (!v.is_number_integer()) {
      fail(std::string("field '") + key + "' must hold integers");
    }
    const long long value = v.get<long long>();
    if (value < 0) fail(std::string("field '") + key + "' holds a negative index");
    idx.push_back(static_cast<Index>(value));
  }
  return idx;
}

std::vector<double> reals_from_json(const json& j, const char* key) {
  if (!j.is_array()) fail(std::string("field '") + key + "' must be an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const json& v : j) {
    if (v.is_null()) {
      out.push_back(std::numeric_limits<double>::infinity());
    } else if (v.is_number()) {
      out.push_back(v.get<double>());
    } else {
      fail(std::string("field '") + key + "' has a non-numeric entry");
    }
  }
  return out;
}

NormSpec norm_from_json(const json& j) {
  if (!j.is_object()) fail("field 'norm' must be an object");
  NormSpec norm;
  try {
    norm.variant =
        selection_variant_from_string(need(j, "variant").get<std::string>());
    norm.inner = inner_norm_from_string(need(j, "inner").get<std::string>());
  } catch (const InvalidConfig& e) {
    fail(e.what());
  }
  if (j.contains("weights")) norm.weights = matrix_from_json(j["weights"], "weights");
  return norm;
}

GreedyTrace trace_from_json(const json& j) {
  if (!j.is_object()) fail("field 'trace' must be an object");
  GreedyTrace trace;
  trace.residuals = reals_from_json(need(j, "residuals"), "residuals");
  trace.norm_used = norm_from_json(need(j, "norm"));
  if (j.contains("conditionEstimates")) {
    trace.condition_estimates =
        reals_from_json(j["conditionEstimates"], "conditionEstimates");
  }
  return trace;
}

void check_distinct(const std::vector<Index>& idx, const char* key) {
  std::vector<Index> sorted = idx;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    fail(std::string("field '") + key + "' holds duplicate indices");
  }
}

SeparatedModel square_from_json(const json& j) {
  SeparatedModel model;
  model.x_idx = indices_from_json(need(j, "xIdx"), "xIdx");
  model.y_idx = indices_from_json(need(j, "yIdx"), "yIdx");
  model.F = matrix_from_json(need(j, "F"), "F");
  model.D = matrix_from_json(need(j, "D"), "D");
  model.trace = trace_from_json(need(j, "trace"));
  model.d = static_cast<Index>(model.x_idx.size());
  if (model.y_idx.size() != model.x_idx.size()) {
    fail("square model: xIdx and yIdx must have equal length");
  }
  check_distinct(model.x_idx, "xIdx");
  check_distinct(model.y_idx, "yIdx");
  if (model.F.rows() != model.d || model.F.cols() != model.d ||
      model.D.rows() != model.d || model.D.cols() != model.d) {
    fail("square model: F and D must be d x d");
  }
  return model;
}

RectangularModel rectangular_from_json(const json& j) {
  RectangularModel model;
  model.x_idx = indices_from_json(need(j, "xIdx"), "xIdx");
  model.y_idx_kept = indices_from_json(need(j, "yIdx"), "yIdx");
  model.F = matrix_from_json(need(j, "F"), "F");
  model.D = matrix_from_json(need(j, "D"), "D");
  const json& parent = need(j, "parent");
  if (!parent.is_object() || parent.value("kind", "") != "square") {
    fail("rectangular model: parent must be a square model");
  }
  model.parent = square_from_json(parent);
  const Index d = static_cast<Index>(model.x_idx.size());
  const Index d0 = static_cast<Index>(model.y_idx_kept.size());
  if (d0 < 1 || d0 > d) fail("rectangular model: needs 1 <= d0 <= d");
  if (model.F.rows() != d || model.F.cols() != d0 || model.D.rows() != d ||
      model.D.cols() != d0) {
    fail("rectangular model: F and D must be d x d0");
  }
  if (model.parent.d != d) {
    fail("rectangular model: parent rank differs from xIdx length");
  }
  // y_idx_kept must be a subsequence of the parent's selection.
  std::size_t pos = 0;
  for (const Index y : model.y_idx_kept) {
    while (pos < model.parent.y_idx.size() && model.parent.y_idx[pos] != y) {
      ++pos;
    }
    if (pos == model.parent.y_idx.size()) {
      fail("rectangular model: yIdx is not a subsequence of the parent's yIdx");
    }
    ++pos;
  }
  return model;
}

GeimModel geim_from_json(const json& j) {
  GeimModel model;
  model.func_idx = indices_from_json(need(j, "xIdx"), "xIdx");
  model.form_idx = indices_from_json(need(j, "yIdx"), "yIdx");
  // Stored x-side by y-side; the in-memory layout is forms by functions.
  model.F_hat = matrix_from_json(need(j, "F"), "F").transpose();
  model.D = matrix_from_json(need(j, "D"), "D").transpose();
  model.functions = matrix_from_json(need(j, "functions"), "functions");
  model.trace = trace_from_json(need(j, "trace"));
  model.d = static_cast<Index>(model.func_idx.size());
  if (model.form_idx.size() != model.func_idx.size()) {
    fail("geim model: xIdx and yIdx must have equal length");
  }
  check_distinct(model.func_idx, "xIdx");
  check_distinct(model.form_idx, "yIdx");
  if (model.F_hat.rows() != model.d || model.F_hat.cols() != model.d ||
      model.D.rows() != model.d || model.D.cols() != model.d) {
    fail("geim model: F and D must be d x d");
  }
  if (model.functions.rows() != model.d) {
    fail("geim model: functions must hold one row per selected function");
  }
  return model;
}

GeimRectangularModel geim_rectangular_from_json(const json& j) {
  GeimRectangularModel model;
  model.func_idx = indices_from_json(need(j, "xIdx"), "xIdx");
  model.form_idx_kept = indices_from_json(need(j, "yIdx"), "yIdx");
  model.F_hat = matrix_from_json(need(j, "F"), "F").transpose();
  model.D = matrix_from_json(need(j, "D"), "D").transpose();
  model.functions = matrix_from_json(need(j, "functions"), "functions");
  const json& parent = need(j, "parent");
  if (!parent.is_object() || parent.value("kind", "") != "geim") {
    fail("rectangular geim model: parent must be a geim model");
  }
  model.parent = geim_from_json(parent);
  const Index d = static_cast<Index>(model.func_idx.size());
  const Index d0 = static_cast<Index>(model.form_idx_kept.size());
  if (d0 < 1 || d0 > d) fail("rectangular geim model: needs 1 <= d0 <= d");
  if (model.F_hat.rows() != d0 || model.F_hat.cols() != d ||
      model.D.rows() != d0 || model.D.cols() != d) {
    fail("rectangular geim model: F and D must map d0 forms to d functions");
  }
  if (model.parent.d != d || model.functions.rows() != d) {
    fail("rectangular geim model: parent rank differs from xIdx length");
  }
  return model;
}

}  // namespace

json model_to_json(const SeparatedModel& model) {
  json j;
  j["version"] = 1;
  j["kind"] = "square";
  j["xIdx"] = indices_to_json(model.x_idx);
  j["yIdx"] = indices_to_json(model.y_idx);
  j["F"] = matrix_to_json(model.F);
  j["D"] = matrix_to_json(model.D);
  j["trace"] = trace_to_json(model.trace);
  return j;
}

json model_to_json(const RectangularModel& model) {
  json j;
  j["version"] = 1;
  j["kind"] = "rectangular";
  j["xIdx"] = indices_to_json(model.x_idx);
  j["yIdx"] = indices_to_json(model.y_idx_kept);
  j["F"] = matrix_to_json(model.F);
  j["D"] = matrix_to_json(model.D);
  j["trace"] = trace_to_json(model.parent.trace);
  j["parent"] = model_to_json(model.parent);
  return j;
}

json model_to_json(const GeimModel& model) {
  json j;
  j["version"] = 1;
  j["kind"] = "geim";
  j["xIdx"] = indices_to_json(model.func_idx);
  j["yIdx"] = indices_to_json(model.form_idx);
  j["F"] = matrix_to_json(model.F_hat.transpose());
  j["D"] = matrix_to_json(model.D.transpose());
  j["functions"] = matrix_to_json(model.functions);
  j["trace"] = trace_to_json(model.trace);
  return j;
}

json model_to_json(const GeimRectangularModel& model) {
  json j;
  j["version"] = 1;
  j["kind"] = "geim";
  j["xIdx"] = indices_to_json(model.func_idx);
  j["yIdx"] = indices_to_json(model.form_idx_kept);
  j["F"] = matrix_to_json(model.F_hat.transpose());
  j["D"] = matrix_to_json(model.D.transpose());
  j["functions"] = matrix_to_json(model.functions);
  j["trace"] = trace_to_json(model.parent.trace);
  j["parent"] = model_to_json(model.parent);
  return j;
}

std::string serialize_model(const SeparatedModel& model) {
  return model_to_json(model).dump(2);
}
std::string serialize_model(const RectangularModel& model) {
  return model_to_json(model).dump(2);
}
std::string serialize_model(const GeimModel& model) {
  return model_to_json(model).dump(2);
}
std::string serialize_model(const GeimRectangularModel& model) {
  return model_to_json(model).dump(2);
}

AnyModel model_from_json(const json& j) {
  if (!j.is_object()) fail("document must be an object");
  if (need(j, "version").get<int>() != 1) {
    fail("unsupported version " + need(j, "version").dump());
  }
  const std::string kind = need(j, "kind").get<std::string>();
  if (kind == "square") return square_from_json(j);
  if (kind == "rectangular") return rectangular_from_json(j);
  if (kind == "geim") {
    if (j.contains("parent")) return geim_rectangular_from_json(j);
    return geim_from_json(j);
  }
  fail("unknown kind '" + kind + "'");
}

AnyModel deserialize_model(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(e.what());
  }
  return model_from_json(j);
}

AnyModel load_model_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return deserialize_model(buffer.str());
}

}  // namespace eimkit
