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
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "tadv/model.h"
#include "tadv/sequence.h"
#include "tadv/validation.h"

namespace tadv {

// Quantum models are searched over an unconstrained real parameter vector
// that always decodes to a physical (possibly subnormalized) model:
//
//   sigma_i = A_i^dagger A_i / tr(A_i^dagger A_i)
//   E_i     = B_i^dagger B_i / lambda_max(sum_j B_j^dagger B_j)
//   K_a     = C_a / sqrt(lambda_max(sum_b C_b^dagger C_b))
//   rho0    = |0><0|
//
// In rank-1 mode A_i, B_i are replaced by vectors (sigma_i = a a^dagger / |a|^2,
// E_i = b b^dagger / lambda). With diagonal_states the preparations are
// restricted to diag(a_i^2) / |a_i|^2 with real a_i, i.e. a commuting family.

enum class ParamMode { kRank1, kFull };

std::string to_string(ParamMode mode);
ParamMode parse_param_mode(const std::string& text);

struct ParamLayout {
  int dim = 0;
  int branches = 0;
  ParamMode mode = ParamMode::kRank1;
  int kraus_per_outcome = 1;
  bool diagonal_states = false;

  size_t state_block() const;
  size_t effect_block() const;
  size_t kraus_block() const { return 2 * static_cast<size_t>(dim * dim); }

  size_t state_offset(int i) const;
  size_t effect_offset(int i) const;
  size_t kraus_offset(int outcome, int k) const;
  size_t size() const;
};

/// Raw parameter vector together with its layout.
struct QuantumParams {
  ParamLayout layout;
  std::vector<double> values;

  static QuantumParams zeros(const ParamLayout& layout);
  /// i.i.d. standard normal entries.
  template <typename Rng>
  static QuantumParams random(const ParamLayout& layout, Rng& rng);

  // Writers for hand-built parameter points. Vectors apply in rank-1 mode,
  // matrices in full mode.
  void set_state_vector(int i, const ComplexVector& a);
  void set_state_diagonal(int i, const RealVector& a);
  void set_effect_vector(int i, const ComplexVector& b);
  void set_state_matrix(int i, const ComplexMatrix& a);
  void set_effect_matrix(int i, const ComplexMatrix& b);
  void set_kraus(int outcome, int k, const ComplexMatrix& c);
};

/// Throws DegeneracyError for zero-norm blocks or a vanishing POVM/instrument sum.
QuantumModel decode_quantum(std::span<const double> params, const ParamLayout& layout);

/// Channel-protocol probability of `seq` for the decoded model.
double quantum_objective(std::span<const double> params, const Sequence& seq, const ParamLayout& layout);

/// Objective plus its exact gradient (reverse mode through the decoder).
double quantum_objective_gradient(std::span<const double> params, const Sequence& seq, const ParamLayout& layout,
                                  std::span<double> gradient);

/// Central differences (f(x + h_j e_j) - f(x - h_j e_j)) / 2h_j with
/// h_j = rel_step * max(1, |x_j|).
std::vector<double> finite_difference_gradient(const std::function<double(std::span<const double>)>& f,
                                               std::span<const double> x, double rel_step = 1e-6);

/// finite_difference_gradient applied to quantum_objective.
std::vector<double> quantum_gradient_fd(std::span<const double> params, const Sequence& seq,
                                        const ParamLayout& layout, double rel_step = 1e-6);

enum class GradientMethod { kAnalytic, kFiniteDifference };

struct AdamConfig {
  int iterations = 50000;
  double lr_start = 0.07;
  double lr_end = 1e-12;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  int trials = 64;
  std::uint64_t seed = 0;
  GradientMethod gradient = GradientMethod::kAnalytic;
  double fd_step = 1e-6;
  /// 0: TEMPORAL_ADVANTAGE_THREADS if set, else hardware concurrency.
  int threads = 0;
  /// Number of best-so-far samples kept per trial.
  int trace_points = 200;

  /// Per-iteration factor (lr_end / lr_start)^(1 / iterations).
  double decay() const;
  /// lr_start * (lr_end / lr_start)^(t / iterations).
  double learning_rate(int t) const;
};

struct TrialRecord {
  int trial = 0;
  double final_objective = 0.0;
  double best_objective = 0.0;
  /// First iteration whose objective came within 1e-9 of the trial's best.
  int iterations_to_plateau = 0;
  /// Best-so-far objective sampled along the run.
  std::vector<double> best_trace;
  bool degenerate = false;
};

struct QuantumOptimum {
  QuantumModel model;
  double probability = 0.0;
  std::vector<double> params;
  std::vector<TrialRecord> trials;
  /// Strict validation of the returned model at 1e-6.
  ValidationReport validation;
};

/// Random-restart Adam ascent of the channel-protocol probability. Trials run
/// in parallel; trial t draws its start from an RNG seeded by (seed, t), so
/// results do not depend on scheduling.
QuantumOptimum adam_maximize(const AdamConfig& config, const Sequence& seq, const ParamLayout& layout);

struct ClassicalOptimum {
  ClassicalModel model;
  double probability = 0.0;
  std::vector<TrialRecord> trials;
};

/// Same ascent over d-state classical models: pi = y^2 / |y|^2 and each column
/// of the stacked [T0; T1] is x^2 / |x|^2.
ClassicalOptimum classical_maximize(const AdamConfig& config, const Sequence& seq, int dim);

/// Decoder for the classical parametrization (d + 2d^2 reals).
ClassicalModel decode_classical(std::span<const double> params, int dim);
double classical_objective_gradient(std::span<const double> params, const Sequence& seq, int dim,
                                    std::span<double> gradient);

/// Worker count used for trials given a config.
int resolve_threads(const AdamConfig& config);

template <typename Rng>
QuantumParams QuantumParams::random(const ParamLayout& layout, Rng& rng) {
  QuantumParams p = zeros(layout);
  std::normal_distribution<double> normal;
  for (auto& v : p.values) {
    v = normal(rng);
  }
  return p;
}

}  // namespace tadv
