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

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "tadv/model.h"
#include "tadv/sequence.h"
#include "tadv/validation.h"

namespace tadv {

/// Best rank-1 models found numerically for the one-tick sequences of
/// length 4 (d = 3) and 5 (d = 4), as printed to five significant digits.
/// E_i = |e_i><e_i|, sigma_i = |phi_i><phi_i|, rho0 = |0><0|, diagonal Kraus
/// operators. Vectors are kept verbatim (no re-normalization).
struct BuiltinModel {
  std::string label;
  int dim = 0;
  Sequence sequence = Sequence::one_tick(1);
  std::vector<ComplexVector> effect_vectors;
  std::vector<ComplexVector> prep_vectors;
  std::array<RealVector, kNumOutcomes> kraus_diagonals;
  double expected_probability = 0.0;
  double classical_bound = 0.0;
  int print_precision = 5;

  QuantumModel model() const;
};

/// SHA-256 of the embedded data file, hex encoded.
inline constexpr std::string_view kAppendixDataSha256 =
    "8ed971ad18d0c89aebf78be9d91421693d180e23e42ef3ce6dbef14864a5eff2";

std::vector<std::string> builtin_labels();

/// "L4" or "L5". Throws DataIntegrityError when the embedded data does not
/// match its checksum, std::invalid_argument for unknown labels.
BuiltinModel load_builtin(const std::string& label);

/// Parses one entry of the data file format (exposed for tests).
BuiltinModel builtin_from_json_text(std::string_view text, const std::string& label);

std::string sha256_hex(std::string_view data);

/// Allowed deviation of the recomputed probability from the printed value.
inline constexpr double kBuiltinProbabilityTol = 2e-3;
/// Residual budget for five-digit data.
inline constexpr double kBuiltinResidualTol = 1e-3;

struct BuiltinReport {
  std::string label;
  ValidationReport residuals;
  double probability = 0.0;
  double expected_probability = 0.0;
  double classical_bound = 0.0;
  /// probability - classical_bound
  double margin = 0.0;
  /// probability / classical_bound
  double ratio = 0.0;
};

/// Recomputes constraints and the one-tick probability. Throws
/// DataIntegrityError when a residual exceeds `tol`, the probability is more
/// than kBuiltinProbabilityTol from the printed value, or the classical bound
/// is not exceeded.
BuiltinReport verify_builtin(const BuiltinModel& builtin, double tol = kBuiltinResidualTol);
BuiltinReport verify_builtin(const std::string& label, double tol = kBuiltinResidualTol);

}  // namespace tadv
