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

#include <string>
#include <vector>

#include "tadv/model.h"

namespace tadv {

/// Default tolerance for generated models.
inline constexpr double kDefaultTol = 1e-9;

struct Check {
  std::string name;
  double residual = 0.0;
  double tol = 0.0;
  // Optional human-readable context, e.g. "pi sums to 1.1".
  std::string detail;

  bool ok() const { return residual <= tol; }
};

/// Every constraint that was checked, with its residual.
struct ValidationReport {
  std::vector<Check> checks;

  bool ok() const;
  std::vector<Check> violations() const;
  double max_residual() const;
  /// Residual of the named check; throws std::out_of_range if absent.
  double residual(const std::string& name) const;
  /// One line per violated check, "name: residual".
  std::string summary() const;
};

ValidationReport validate_classical(const ClassicalModel& model, double tol = kDefaultTol);

struct ChannelCheckOptions {
  /// Accept sum_i E_i <= 1 (and sum K^dagger K <= 1) instead of equality.
  bool allow_subnormalized = false;
};

ValidationReport validate_channel(const EBChannel& channel, double tol = kDefaultTol,
                                  ChannelCheckOptions options = {});
ValidationReport validate_instrument(const Instrument& instrument, double tol = kDefaultTol,
                                     ChannelCheckOptions options = {});
ValidationReport validate_quantum(const QuantumModel& model, double tol = kDefaultTol,
                                  ChannelCheckOptions options = {});

/// (1/d) sum_i sigma_i (x) E_i^T, the Choi matrix of the channel for the
/// maximally entangled input.
ComplexMatrix choi_matrix(const EBChannel& channel);

}  // namespace tadv
