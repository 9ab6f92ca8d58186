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

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "tadv/model.h"
#include "tadv/sequence.h"

namespace tadv {

/// Enumeration guards for full_distribution.
inline constexpr int kMaxClassicalEnumerationLength = 20;
inline constexpr int kMaxQuantumEnumerationLength = 12;

/// Probabilities of all 2^L sequences of one length, ordered
/// lexicographically by outcome string ("00..0" first).
struct Distribution {
  int length = 0;
  std::vector<std::pair<Sequence, double>> entries;

  double total() const;
  /// Probability of `seq`; throws std::out_of_range for a foreign length.
  double at(const Sequence& seq) const;
};

/// sum_i Tr(rho E_i) sigma_i
ComplexMatrix apply_channel(const EBChannel& channel, const ComplexMatrix& rho);

/// 1^T T_{a_L} ... T_{a_1} pi. Raw value, no clamping.
double classical_sequence_prob(const ClassicalModel& model, const Sequence& seq);

/// Tr[I_{a_L} E ... I_{a_1} E (rho0)] with the channel applied before every
/// measurement (including the first) when `with_channel` is set, otherwise
/// Tr[I_{a_L} ... I_{a_1}(rho0)]. Raw value, no clamping.
double quantum_sequence_prob(const QuantumModel& model, const Sequence& seq, bool with_channel = true);

/// The m-state classical model [T_a]_{ji} = Tr(I_a(sigma_i) E_j),
/// pi_i = Tr(rho0 E_i) that reproduces the channel protocol exactly.
ClassicalModel effective_classical_model(const QuantumModel& model);

/// Throws ResourceError beyond kMaxClassicalEnumerationLength.
Distribution full_distribution(const ClassicalModel& model, int length);
/// Throws ResourceError beyond kMaxQuantumEnumerationLength.
Distribution full_distribution(const QuantumModel& model, int length, bool with_channel = true);

/// 17 significant digits, round-trippable.
std::string format_probability(double value);

/// CSV with header "sequence,probability".
void write_csv(const Distribution& dist, std::ostream& out);

}  // namespace tadv
