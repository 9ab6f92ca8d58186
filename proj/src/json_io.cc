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

#include "tadv/json_io.h"

#include <fstream>

#include "tadv/errors.h"

namespace tadv {
namespace {

const json& field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw StructuralError(std::string("missing field '") + key + "'");
  }
  return obj.at(key);
}

void check_dim(const json& obj, Eigen::Index actual) {
  if (obj.contains("dim") && obj.at("dim").get<Eigen::Index>() != actual) {
    throw StructuralError("declared dim " + obj.at("dim").dump() + " does not match data of dimension " +
                          std::to_string(actual));
  }
}

std::vector<ComplexMatrix> matrix_list(const json& j) {
  if (!j.is_array()) {
    throw StructuralError("expected an array of matrices");
  }
  std::vector<ComplexMatrix> out;
  for (const auto& m : j) {
    out.push_back(complex_matrix_from_json(m));
  }
  return out;
}

json matrix_list_json(const std::vector<ComplexMatrix>& ms) {
  json out = json::array();
  for (const auto& m : ms) {
    out.push_back(to_json(m));
  }
  return out;
}

}  // namespace

json to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

json to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(to_json(m(i, j)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const RealVector& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

json to_json(const RealMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(m(i, j));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const ClassicalModel& model) {
  return json{{"dim", model.dim()},
              {"pi", to_json(model.pi())},
              {"T0", to_json(model.transition(0))},
              {"T1", to_json(model.transition(1))}};
}

json to_json(const EBChannel& channel) {
  return json{{"dim", channel.dim()},
              {"effects", matrix_list_json(channel.effects())},
              {"preps", matrix_list_json(channel.preps())}};
}

json to_json(const QuantumModel& model) {
  return json{{"dim", model.dim()},
              {"rho0", to_json(model.rho0())},
              {"channel", to_json(model.channel())},
              {"instrument",
               {{"kraus0", matrix_list_json(model.instrument().kraus(0))},
                {"kraus1", matrix_list_json(model.instrument().kraus(1))}}}};
}

Complex complex_from_json(const json& j) {
  if (j.is_number()) {
    return Complex(j.get<double>(), 0.0);
  }
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw StructuralError("complex entry must be [re, im], got " + j.dump());
  }
  return Complex(j[0].get<double>(), j[1].get<double>());
}

ComplexVector complex_vector_from_json(const json& j) {
  if (!j.is_array() || j.empty()) {
    throw StructuralError("vector must be a non-empty array");
  }
  ComplexVector v(static_cast<Eigen::Index>(j.size()));
  for (size_t k = 0; k < j.size(); ++k) {
    v(static_cast<Eigen::Index>(k)) = complex_from_json(j[k]);
  }
  return v;
}

ComplexMatrix complex_matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) {
    throw StructuralError("matrix must be a non-empty array of rows");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw StructuralError("matrix rows must have equal length");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = complex_from_json(row[static_cast<size_t>(c)]);
    }
  }
  return m;
}

RealMatrix real_matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) {
    throw StructuralError("matrix must be a non-empty array of rows");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  RealMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw StructuralError("matrix rows must have equal length");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = row[static_cast<size_t>(c)].get<double>();
    }
  }
  return m;
}

ClassicalModel classical_from_json(const json& j) {
  try {
    const auto pi_values = field(j, "pi").get<std::vector<double>>();
    RealVector pi = Eigen::Map<const RealVector>(pi_values.data(), static_cast<Eigen::Index>(pi_values.size()));
    check_dim(j, pi.size());
    return ClassicalModel(std::move(pi), real_matrix_from_json(field(j, "T0")), real_matrix_from_json(field(j, "T1")));
  } catch (const json::exception& e) {
    throw StructuralError(std::string("malformed classical model: ") + e.what());
  }
}

EBChannel channel_from_json(const json& j) {
  EBChannel channel(matrix_list(field(j, "effects")), matrix_list(field(j, "preps")));
  check_dim(j, channel.dim());
  return channel;
}

QuantumModel quantum_from_json(const json& j) {
  ComplexMatrix rho0 = complex_matrix_from_json(field(j, "rho0"));
  check_dim(j, rho0.rows());
  const auto& inst = field(j, "instrument");
  Instrument instrument(static_cast<int>(rho0.rows()),
                        {matrix_list(field(inst, "kraus0")), matrix_list(field(inst, "kraus1"))});
  return QuantumModel(std::move(rho0), channel_from_json(field(j, "channel")), std::move(instrument));
}

ModelFile parse_model_document(const json& doc) try {
  ModelFile file;
  if (!doc.is_object()) {
    throw StructuralError("model document must be a JSON object");
  }
  if (doc.contains("tol")) {
    file.tol = doc.at("tol").get<double>();
  }
  if (doc.contains("classical")) {
    file.model = classical_from_json(doc.at("classical"));
  } else if (doc.contains("quantum")) {
    file.model = quantum_from_json(doc.at("quantum"));
  } else if (doc.contains("channel")) {
    file.model = channel_from_json(doc.at("channel"));
  } else {
    throw StructuralError("model document needs a top-level \"classical\", \"quantum\" or \"channel\" key");
  }
  return file;
} catch (const json::exception& e) {
  throw StructuralError(std::string("malformed model document: ") + e.what());
}

ModelFile read_model_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw StructuralError(path.string() + ": " + e.what());
  }
  return parse_model_document(doc);
}

json model_document(const ClassicalModel& model, std::optional<double> tol) {
  json doc{{"classical", to_json(model)}};
  if (tol) {
    doc["tol"] = *tol;
  }
  return doc;
}

json model_document(const QuantumModel& model, std::optional<double> tol) {
  json doc{{"quantum", to_json(model)}};
  if (tol) {
    doc["tol"] = *tol;
  }
  return doc;
}

json model_document(const EBChannel& channel, std::optional<double> tol) {
  json doc{{"channel", to_json(channel)}};
  if (tol) {
    doc["tol"] = *tol;
  }
  return doc;
}

void write_json_file(const std::filesystem::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out << doc.dump(2) << '\n';
}

}  // namespace tadv
