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

#include <cstdint>
#include <string>
#include <vector>

#include "tadv/model.h"

namespace tadv {

/// Max over pairs of the spectral norm of [A, B]. Zero for fewer than two
/// operators. Throws StructuralError when shapes differ.
double commute_check(const std::vector<ComplexMatrix>& ops);

/// Unitary U whose columns diagonalize every member of a commuting Hermitian
/// family: U^dagger A U is diagonal within `tol` for all A. Diagonalizes a
/// random real combination of the family and retries with fresh weights
/// (up to `attempts` times) when a degenerate spectrum leaves some member
/// non-diagonal. Throws NotCommutingError if no attempt succeeds.
ComplexMatrix simultaneous_diagonalizer(const std::vector<ComplexMatrix>& ops, double tol, std::uint64_t seed = 0,
                                        int attempts = 5);

/// Tomographically complete probe set: every |k><k|, every (|k>+|l>)/sqrt2 and
/// (|k>+i|l>)/sqrt2 for k < l, then `random_count` random density matrices.
std::vector<ComplexMatrix> probe_states(int dim, int random_count = 20, std::uint64_t seed = 0);

/// Max over probes of the spectral norm of the output difference.
double max_action_difference(const EBChannel& a, const EBChannel& b, const std::vector<ComplexMatrix>& probes);

enum class ReductionRoute { kCommutingStates, kCommutingPovm };

std::string to_string(ReductionRoute route);

struct ReductionResult {
  /// d-branch channel with the same action.
  EBChannel reduced;
  /// Common eigenbasis (columns).
  ComplexMatrix basis;
  ReductionRoute route;
  /// Worst action difference over the probe set.
  double max_residual = 0.0;
};

/// Commuting preparations sigma_i = U diag(s_i) U^dagger: rewrite as
/// F_l = sum_i s_i^l E_i with preparations U|l><l|U^dagger. Refuses (throws
/// NotCommutingError) when the commutator residual exceeds `tol`.
ReductionResult reduce_commuting_states(const EBChannel& channel, double tol);

/// Commuting effects E_i = U diag(e_i) U^dagger: rewrite as effects
/// U|l><l|U^dagger with preparations sum_i e_i^l sigma_i.
ReductionResult reduce_commuting_povm(const EBChannel& channel, double tol);

}  // namespace tadv
