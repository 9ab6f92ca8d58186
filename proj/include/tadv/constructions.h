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

#include <optional>
#include <vector>

#include "tadv/model.h"
#include "tadv/sequence.h"

namespace tadv {

/// One-way model on d = L - 1 states: self-loop 1/L, advance 1 - 1/L, and a
/// final tick returning to the start. Emits the one-tick sequence of length L
/// with probability (1 - 1/L)^L. Requires L >= 2.
ClassicalModel one_way_classical(int length);

/// Deterministic cycle on m states: [T0]_{i+1,i} = 1, [T1]_{1,m} = 1,
/// pi = e_1. Emits the one-tick sequence of length m with certainty.
ClassicalModel cyclic_deterministic(int states);

/// Harmonic equiangular tight frame of N = d unit vectors spanning the
/// (d-1)-dimensional subspace orthogonal to |0>, embedded in dimension d.
struct ETFFrame {
  int dim = 0;
  std::vector<ComplexVector> vectors;
  /// d = 2: the "frame" collapses to the two vectors -|1>, +|1>.
  bool degenerate = false;
};

/// |psi_n> = (d-1)^{-1/2} sum_{k=1}^{d-1} zeta^{nk} |k>, zeta = exp(2 pi i / d),
/// n = 1..d. Throws std::invalid_argument for d < 2.
ETFFrame etf_states(int dim);

/// Where the outcome-0 Kraus operator K0 = 1 - K1 has its zero.
enum class KrausZero {
  /// K0 = diag(0, 1, ..., 1): outcome 1 fires on |0>, the state prepared at
  /// the end of the cycle. This is the convention that violates the
  /// classical bound.
  kFirst,
  /// K0 = diag(1, ..., 1, 0).
  kLast,
};

/// The m = d + 1 branch ETF model: sigma_n = |psi_n><psi_n| and
/// E_{n+1} = (d-1)/d sigma_n for n = 1..d, sigma_m = E_1 = rho0 = |0><0|,
/// single-Kraus instrument K0, K1 = 1 - K0. Requires d >= 2.
QuantumModel etf_quantum_model(int dim, KrausZero zero = KrausZero::kFirst);

/// Completely dephasing channel E_i = sigma_i = |i><i| with a diagonal
/// instrument K_{a,ij} = sqrt([T_a]_{ji}) |j><i| and rho0 = diag(pi). The
/// channel protocol then reproduces every classical sequence probability.
QuantumModel diagonal_quantum_from_classical(const ClassicalModel& model);

/// Search guards for deterministic_complexity.
inline constexpr int kMaxComplexityLength = 12;
inline constexpr int kMaxComplexityStates = 8;

/// Smallest number of states of a deterministic machine (one successor and
/// one emitted outcome per state) that emits `seq` from some start state, or
/// nullopt if none exists with at most `max_states` states. Throws
/// ResourceError beyond the search guards.
std::optional<int> deterministic_complexity(const Sequence& seq, int max_states);

}  // namespace tadv
