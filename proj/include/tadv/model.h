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
#include <vector>

#include "tadv/linalg.h"

namespace tadv {

/// Number of measurement outcomes; the protocol is dichotomous.
inline constexpr int kNumOutcomes = 2;

/// A d-state finite-state machine: initial distribution pi and per-outcome
/// sub-stochastic transitions.
///
/// Column convention: transition(a)(j, i) is the probability of moving from
/// state i to state j while emitting outcome a, so that the probability of a
/// sequence is 1^T T_{a_L} ... T_{a_1} pi with matrices acting from the left.
///
/// Construction only checks shapes; physicality is checked by
/// validate_classical.
class ClassicalModel {
 public:
  ClassicalModel(RealVector pi, RealMatrix t0, RealMatrix t1);

  int dim() const { return static_cast<int>(pi_.size()); }
  const RealVector& pi() const { return pi_; }
  const RealMatrix& transition(int outcome) const { return transitions_.at(static_cast<size_t>(outcome)); }

 private:
  RealVector pi_;
  std::array<RealMatrix, kNumOutcomes> transitions_;
};

/// Measure-and-prepare channel rho -> sum_i Tr(rho E_i) sigma_i.
class EBChannel {
 public:
  EBChannel(std::vector<ComplexMatrix> effects, std::vector<ComplexMatrix> preps);

  int dim() const { return dim_; }
  int branches() const { return static_cast<int>(effects_.size()); }
  const std::vector<ComplexMatrix>& effects() const { return effects_; }
  const std::vector<ComplexMatrix>& preps() const { return preps_; }

 private:
  int dim_;
  std::vector<ComplexMatrix> effects_;
  std::vector<ComplexMatrix> preps_;
};

/// Two-outcome instrument I_a(rho) = sum_k K_{a,k} rho K_{a,k}^dagger.
/// An outcome with no Kraus operators is the zero map.
class Instrument {
 public:
  Instrument(int dim, std::array<std::vector<ComplexMatrix>, kNumOutcomes> kraus);

  /// One Kraus operator per outcome.
  static Instrument single(const ComplexMatrix& k0, const ComplexMatrix& k1);

  int dim() const { return dim_; }
  const std::vector<ComplexMatrix>& kraus(int outcome) const { return kraus_.at(static_cast<size_t>(outcome)); }

  /// I_a(rho)
  ComplexMatrix apply(int outcome, const ComplexMatrix& rho) const;
  /// sum_{a,k} K^dagger K
  ComplexMatrix completeness() const;

 private:
  int dim_;
  std::array<std::vector<ComplexMatrix>, kNumOutcomes> kraus_;
};

class QuantumModel {
 public:
  QuantumModel(ComplexMatrix rho0, EBChannel channel, Instrument instrument);

  int dim() const { return static_cast<int>(rho0_.rows()); }
  const ComplexMatrix& rho0() const { return rho0_; }
  const EBChannel& channel() const { return channel_; }
  const Instrument& instrument() const { return instrument_; }

 private:
  ComplexMatrix rho0_;
  EBChannel channel_;
  Instrument instrument_;
};

}  // namespace tadv
