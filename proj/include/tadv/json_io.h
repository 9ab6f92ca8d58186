// Copyright 2026 The tadv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <variant>

#include "json.hpp"
#include "tadv/model.h"

namespace tadv {

// Model files:
//   {"classical": {"dim": d, "pi": [...], "T0": [[...]], "T1": [[...]]}, "tol": 1e-9}
//   {"quantum": {"dim": d, "rho0": M, "channel": {"effects": [M...], "preps": [M...]},
//                "instrument": {"kraus0": [M...], "kraus1": [M...]}}}
//   {"channel": {"dim": d, "effects": [M...], "preps": [M...]}}
// Complex entries are [re, im]; matrices are row-major nested arrays.

using json = nlohmann::json;

json to_json(const Complex& z);
json to_json(const ComplexMatrix& m);
json to_json(const RealVector& v);
json to_json(const RealMatrix& m);
json to_json(const ClassicalModel& model);
json to_json(const EBChannel& channel);
json to_json(const QuantumModel& model);

Complex complex_from_json(const json& j);
ComplexVector complex_vector_from_json(const json& j);
ComplexMatrix complex_matrix_from_json(const json& j);
RealMatrix real_matrix_from_json(const json& j);
ClassicalModel classical_from_json(const json& j);
EBChannel channel_from_json(const json& j);
QuantumModel quantum_from_json(const json& j);

struct ModelFile {
  std::variant<std::monostate, ClassicalModel, QuantumModel, EBChannel> model;
  std::optional<double> tol;
};

/// Parses a top-level document; throws StructuralError on schema problems.
ModelFile parse_model_document(const json& doc);
ModelFile read_model_file(const std::filesystem::path& path);

json model_document(const ClassicalModel& model, std::optional<double> tol = std::nullopt);
json model_document(const QuantumModel& model, std::optional<double> tol = std::nullopt);
json model_document(const EBChannel& channel, std::optional<double> tol = std::nullopt);

void write_json_file(const std::filesystem::path& path, const json& doc);

}  // namespace tadv
