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

#include "tadv/constructions.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "tadv/errors.h"

namespace tadv {

ClassicalModel one_way_classical(int length) {
  if (length < 2) {
    throw std::invalid_argument("one-way model needs L >= 2, got " + std::to_string(length));
  }
  const int d = length - 1;
  const double stay = 1.0 / length;
  const double move = 1.0 - stay;
  // Indices as in the usual presentation (1-based): [T0]_{i,i} = 1/L,
  // [T0]_{i,i+1} = [T1]_{d,1} = 1 - 1/L. The walk runs d -> d-1 -> ... -> 1 and
  // ticks from state 1 back to d.
  RealMatrix t0 = RealMatrix::Zero(d, d);
  RealMatrix t1 = RealMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    t0(i, i) = stay;
    if (i + 1 < d) {
      t0(i, i + 1) = move;
    }
  }
  t1(d - 1, 0) = move;
  RealVector pi = RealVector::Zero(d);
  pi(d - 1) = 1.0;
  return ClassicalModel(std::move(pi), std::move(t0), std::move(t1));
}

ClassicalModel cyclic_deterministic(int states) {
  if (states < 2) {
    throw std::invalid_argument("cyclic model needs m >= 2, got " + std::to_string(states));
  }
  RealMatrix t0 = RealMatrix::Zero(states, states);
  RealMatrix t1 = RealMatrix::Zero(states, states);
  for (int i = 0; i + 1 < states; ++i) {
    t0(i + 1, i) = 1.0;
  }
  t1(0, states - 1) = 1.0;
  RealVector pi = RealVector::Zero(states);
  pi(0) = 1.0;
  return ClassicalModel(std::move(pi), std::move(t0), std::move(t1));
}

ETFFrame etf_states(int dim) {
  if (dim < 2) {
    throw std::invalid_argument("ETF construction needs d >= 2, got " + std::to_string(dim));
  }
  ETFFrame frame;
  frame.dim = dim;
  frame.degenerate = dim == 2;
  const double norm = 1.0 / std::sqrt(static_cast<double>(dim - 1));
  for (int n = 1; n <= dim; ++n) {
    ComplexVector v = ComplexVector::Zero(dim);
    for (int k = 1; k < dim; ++k) {
      // zeta^{nk}, reducing the exponent mod d keeps the phase exact.
      const double angle = 2.0 * std::numbers::pi * static_cast<double>((n * k) % dim) / dim;
      v(k) = norm * std::polar(1.0, angle);
    }
    frame.vectors.push_back(std::move(v));
  }
  return frame;
}

QuantumModel etf_quantum_model(int dim, KrausZero zero) {
  const ETFFrame frame = etf_states(dim);
  const ComplexMatrix ground = basis_projector(dim, 0);
  const double weight = static_cast<double>(dim - 1) / dim;

  // Branch 1 measures |0> and prepares psi_1; branch n+1 measures psi_n and
  // prepares psi_{n+1}; the last branch prepares |0>.
  std::vector<ComplexMatrix> effects{ground};
  std::vector<ComplexMatrix> preps;
  for (const auto& psi : frame.vectors) {
    ComplexMatrix sigma = projector(psi);
    effects.push_back(weight * sigma);
    preps.push_back(std::move(sigma));
  }
  preps.push_back(ground);

  ComplexMatrix k0 = ComplexMatrix::Identity(dim, dim);
  const int zero_index = zero == KrausZero::kFirst ? 0 : dim - 1;
  k0(zero_index, zero_index) = 0.0;
  const ComplexMatrix k1 = ComplexMatrix::Identity(dim, dim) - k0;

  return QuantumModel(ground, EBChannel(std::move(effects), std::move(preps)), Instrument::single(k0, k1));
}

QuantumModel diagonal_quantum_from_classical(const ClassicalModel& model) {
  const int d = model.dim();
  std::vector<ComplexMatrix> basis;
  for (int i = 0; i < d; ++i) {
    basis.push_back(basis_projector(d, i));
  }
  std::array<std::vector<ComplexMatrix>, kNumOutcomes> kraus;
  for (int a = 0; a < kNumOutcomes; ++a) {
    const auto& t = model.transition(a);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        if (t(j, i) > 0.0) {
          ComplexMatrix k = ComplexMatrix::Zero(d, d);
          k(j, i) = std::sqrt(t(j, i));
          kraus[static_cast<size_t>(a)].push_back(std::move(k));
        }
      }
    }
  }
  ComplexMatrix rho0 = ComplexMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    rho0(i, i) = model.pi()(i);
  }
  return QuantumModel(std::move(rho0), EBChannel(basis, basis), Instrument(d, std::move(kraus)));
}

namespace {

// Partial deterministic machine explored by depth-first search. States are
// introduced in order of first use, which removes relabeling symmetry.
struct PartialMachine {
  std::vector<int> output;  // -1 = unassigned
  std::vector<int> next;    // -1 = unassigned
  int used = 0;
};

bool emits(const Sequence& seq, int t, int state, PartialMachine& machine, int max_states) {
  const auto s = static_cast<size_t>(state);
  if (machine.output[s] == -1) {
    machine.output[s] = seq[t];
    const bool found = emits(seq, t, state, machine, max_states);
    machine.output[s] = -1;
    return found;
  }
  if (machine.output[s] != seq[t]) {
    return false;
  }
  if (t + 1 == seq.length()) {
    return true;
  }
  if (machine.next[s] != -1) {
    return emits(seq, t + 1, machine.next[s], machine, max_states);
  }
  const int limit = std::min(machine.used + 1, max_states);
  for (int target = 0; target < limit; ++target) {
    const bool fresh = target == machine.used;
    machine.next[s] = target;
    if (fresh) {
      ++machine.used;
    }
    const bool found = emits(seq, t + 1, target, machine, max_states);
    if (fresh) {
      --machine.used;
    }
    machine.next[s] = -1;
    if (found) {
      return true;
    }
  }
  return false;
}

}  // namespace

std::optional<int> deterministic_complexity(const Sequence& seq, int max_states) {
  if (seq.length() > kMaxComplexityLength || max_states > kMaxComplexityStates) {
    throw ResourceError("deterministic complexity search limited to L <= " + std::to_string(kMaxComplexityLength) +
                        " and d_max <= " + std::to_string(kMaxComplexityStates));
  }
  for (int d = 1; d <= max_states; ++d) {
    PartialMachine machine{std::vector<int>(static_cast<size_t>(d), -1), std::vector<int>(static_cast<size_t>(d), -1),
                           1};
    if (emits(seq, 0, 0, machine, d)) {
      return d;
    }
  }
  return std::nullopt;
}

}  // namespace tadv
