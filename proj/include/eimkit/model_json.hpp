// SPDX-License-Identifier: Apache-2.0
//
// JSON model files. One schema covers every kind:
//   {"version": 1, "kind": "square" | "rectangular" | "geim",
//    "xIdx": [...], "yIdx": [...], "F": [[...]], "D": [[...]],
//    "trace": {"residuals": [...], "norm": {...}, "conditionEstimates": [...]}}
// with F(l, m) always linking x-side selection l to y-side selection m and D
// its (pseudo-)inverse-transpose. Rectangular kinds embed their square
// "parent"; the generalized kind maps functions to the x side and forms to
// the y side and carries the selected "functions" so reconstruction is
// self-contained.
//
// Numbers round-trip bit-identically (shortest round-trip decimal encoding).

#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "eimkit/geim.hpp"
#include "eimkit/types.hpp"

namespace eimkit {

using AnyModel = std::variant<SeparatedModel, RectangularModel, GeimModel,
                              GeimRectangularModel>;

nlohmann::json model_to_json(const SeparatedModel& model);
nlohmann::json model_to_json(const RectangularModel& model);
nlohmann::json model_to_json(const GeimModel& model);
nlohmann::json model_to_json(const GeimRectangularModel& model);

std::string serialize_model(const SeparatedModel& model);
std::string serialize_model(const RectangularModel& model);
std::string serialize_model(const GeimModel& model);
std::string serialize_model(const GeimRectangularModel& model);

// Throws ParseError on malformed documents, unknown kinds or versions, and
// shape mismatches between the index lists and the matrices.
AnyModel model_from_json(const nlohmann::json& j);
AnyModel deserialize_model(const std::string& text);
AnyModel load_model_json(const std::string& path);

}  // namespace eimkit
