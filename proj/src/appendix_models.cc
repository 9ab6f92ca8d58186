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

#include "tadv/appendix_models.h"

#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <openssl/evp.h>

#include "tadv/errors.h"
#include "tadv/json_io.h"
#include "tadv/sequence_prob.h"

namespace tadv {
namespace detail {
extern const std::string_view kAppendixModelsJson;
}  // namespace detail

namespace {

std::vector<ComplexVector> vector_list(const json& j) {
  std::vector<ComplexVector> out;
  for (const auto& v : j) {
    out.push_back(complex_vector_from_json(v));
  }
  return out;
}

RealVector real_vector(const json& j) {
  const auto values = j.get<std::vector<double>>();
  return Eigen::Map<const RealVector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

}  // namespace

QuantumModel BuiltinModel::model() const {
  std::vector<ComplexMatrix> effects, preps;
  for (const auto& e : effect_vectors) {
    effects.push_back(projector(e));
  }
  for (const auto& phi : prep_vectors) {
    preps.push_back(projector(phi));
  }
  const ComplexMatrix k0 = kraus_diagonals[0].cast<Complex>().asDiagonal();
  const ComplexMatrix k1 = kraus_diagonals[1].cast<Complex>().asDiagonal();
  return QuantumModel(basis_projector(dim, 0), EBChannel(std::move(effects), std::move(preps)),
                      Instrument::single(k0, k1));
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 computation failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < length; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return hex.str();
}

std::vector<std::string> builtin_labels() { return {"L4", "L5"}; }

BuiltinModel builtin_from_json_text(std::string_view text, const std::string& label) {
  try {
    const json doc = json::parse(text);
    if (!doc.contains(label)) {
      throw std::invalid_argument("unknown builtin model '" + label + "'");
    }
    const json& entry = doc.at(label);
    BuiltinModel b;
    b.label = label;
    b.dim = entry.at("dimension").get<int>();
    b.sequence = Sequence::parse(entry.at("sequence").get<std::string>());
    b.effect_vectors = vector_list(entry.at("effect_vectors"));
    b.prep_vectors = vector_list(entry.at("prep_vectors"));
    b.kraus_diagonals = {real_vector(entry.at("kraus0_diagonal")), real_vector(entry.at("kraus1_diagonal"))};
    b.expected_probability = entry.at("expected_probability").get<double>();
    b.classical_bound = entry.at("classical_bound").get<double>();
    return b;
  } catch (const json::exception& e) {
    throw DataIntegrityError("malformed builtin model data: " + std::string(e.what()));
  }
}

BuiltinModel load_builtin(const std::string& label) {
  const std::string digest = sha256_hex(detail::kAppendixModelsJson);
  if (digest != kAppendixDataSha256) {
    throw DataIntegrityError("embedded appendix data checksum mismatch: got " + digest + ", expected " +
                             std::string(kAppendixDataSha256));
  }
  return builtin_from_json_text(detail::kAppendixModelsJson, label);
}

BuiltinReport verify_builtin(const BuiltinModel& builtin, double tol) {
  BuiltinReport report;
  report.label = builtin.label;
  const QuantumModel model = [&] {
    try {
      return builtin.model();
    } catch (const StructuralError& e) {
      throw DataIntegrityError(builtin.label + ": " + e.what());
    }
  }();
  report.residuals = validate_quantum(model, tol);
  report.probability = quantum_sequence_prob(model, builtin.sequence, true);
  report.expected_probability = builtin.expected_probability;
  report.classical_bound = builtin.classical_bound;
  report.margin = report.probability - builtin.classical_bound;
  report.ratio = report.probability / builtin.classical_bound;

  std::ostringstream problems;
  if (!report.residuals.ok()) {
    problems << report.residuals.summary();
  }
  if (std::abs(report.probability - builtin.expected_probability) > kBuiltinProbabilityTol) {
    problems << "probability " << report.probability << " differs from " << builtin.expected_probability
             << " by more than " << kBuiltinProbabilityTol << "\n";
  }
  if (!(report.margin > 0.0)) {
    problems << "probability " << report.probability << " does not exceed the classical bound "
             << builtin.classical_bound << "\n";
  }
  if (!problems.str().empty()) {
    throw DataIntegrityError("builtin " + builtin.label + " failed verification:\n" + problems.str());
  }
  return report;
}

BuiltinReport verify_builtin(const std::string& label, double tol) { return verify_builtin(load_builtin(label), tol); }

}  // namespace tadv
