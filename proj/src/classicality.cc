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

#include "tadv/classicality.h"

#include <random>
#include <sstream>

#include "tadv/errors.h"
#include "tadv/sequence_prob.h"
#include "tadv/validation.h"

namespace tadv {
namespace {

double off_diagonal_residual(const ComplexMatrix& m) {
  ComplexMatrix off = m;
  off.diagonal().setZero();
  return off.size() == 0 ? 0.0 : off.cwiseAbs().maxCoeff();
}

void refuse_if_not_commuting(const std::vector<ComplexMatrix>& ops, double tol, const char* family) {
  const double residual = commute_check(ops);
  if (residual <= tol) {
    return;
  }
  std::ostringstream msg;
  msg << family << " do not commute: commutator norm " << residual << " exceeds tol " << tol;
  if (residual <= 100.0 * tol) {
    msg << " (near-commuting inputs are not approximated)";
  }
  throw NotCommutingError(msg.str(), residual);
}

ReductionResult finish(const EBChannel& original, EBChannel reduced, ComplexMatrix basis, ReductionRoute route,
                       double tol) {
  const auto probes = probe_states(original.dim());
  const double residual = max_action_difference(original, reduced, probes);
  if (residual > 10.0 * tol) {
    std::ostringstream msg;
    msg << "reduced channel deviates from original by " << residual << " on probe states";
    throw NotCommutingError(msg.str(), residual);
  }
  return ReductionResult{std::move(reduced), std::move(basis), route, residual};
}

}  // namespace

double commute_check(const std::vector<ComplexMatrix>& ops) {
  double worst = 0.0;
  for (size_t i = 0; i < ops.size(); ++i) {
    if (ops[i].rows() != ops[0].rows() || ops[i].cols() != ops[0].cols() || ops[i].rows() != ops[i].cols()) {
      throw StructuralError("commute_check needs square matrices of equal dimension");
    }
    for (size_t j = 0; j < i; ++j) {
      worst = std::max(worst, operator_norm(commutator(ops[i], ops[j])));
    }
  }
  return worst;
}

ComplexMatrix simultaneous_diagonalizer(const std::vector<ComplexMatrix>& ops, double tol, std::uint64_t seed,
                                        int attempts) {
  if (ops.empty()) {
    throw std::invalid_argument("simultaneous_diagonalizer needs at least one operator");
  }
  const auto d = ops.front().rows();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> weight(0.5, 1.5);
  double best_residual = 0.0;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    ComplexMatrix combo = ComplexMatrix::Zero(d, d);
    for (const auto& op : ops) {
      combo += weight(rng) * op;
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (combo + combo.adjoint()));
    const ComplexMatrix& u = solver.eigenvectors();
    double residual = 0.0;
    for (const auto& op : ops) {
      residual = std::max(residual, off_diagonal_residual(u.adjoint() * op * u));
    }
    if (residual <= tol) {
      return u;
    }
    best_residual = attempt == 0 ? residual : std::min(best_residual, residual);
  }
  std::ostringstream msg;
  msg << "no common eigenbasis found after " << attempts << " attempts (off-diagonal residual " << best_residual
      << ")";
  throw NotCommutingError(msg.str(), best_residual);
}

std::vector<ComplexMatrix> probe_states(int dim, int random_count, std::uint64_t seed) {
  std::vector<ComplexMatrix> probes;
  for (int k = 0; k < dim; ++k) {
    probes.push_back(basis_projector(dim, k));
  }
  const double r = 1.0 / std::sqrt(2.0);
  for (int k = 0; k < dim; ++k) {
    for (int l = k + 1; l < dim; ++l) {
      for (const Complex phase : {Complex(1.0, 0.0), Complex(0.0, 1.0)}) {
        ComplexVector v = ComplexVector::Zero(dim);
        v(k) = r;
        v(l) = r * phase;
        probes.push_back(projector(v));
      }
    }
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  for (int n = 0; n < random_count; ++n) {
    ComplexMatrix g(dim, dim);
    for (Eigen::Index i = 0; i < g.size(); ++i) {
      g(i) = Complex(normal(rng), normal(rng));
    }
    ComplexMatrix rho = g * g.adjoint();
    probes.push_back(rho / rho.trace().real());
  }
  return probes;
}

double max_action_difference(const EBChannel& a, const EBChannel& b, const std::vector<ComplexMatrix>& probes) {
  double worst = 0.0;
  for (const auto& rho : probes) {
    worst = std::max(worst, operator_norm(apply_channel(a, rho) - apply_channel(b, rho)));
  }
  return worst;
}

std::string to_string(ReductionRoute route) {
  return route == ReductionRoute::kCommutingStates ? "commuting-states" : "commuting-povm";
}

ReductionResult reduce_commuting_states(const EBChannel& channel, double tol) {
  refuse_if_not_commuting(channel.preps(), tol, "prepared states");
  const ComplexMatrix u = simultaneous_diagonalizer(channel.preps(), tol);
  const int d = channel.dim();
  std::vector<ComplexMatrix> effects(static_cast<size_t>(d), ComplexMatrix::Zero(d, d));
  std::vector<ComplexMatrix> preps;
  for (int i = 0; i < channel.branches(); ++i) {
    const RealVector s = (u.adjoint() * channel.preps()[static_cast<size_t>(i)] * u).diagonal().real();
    for (int l = 0; l < d; ++l) {
      effects[static_cast<size_t>(l)] += s(l) * channel.effects()[static_cast<size_t>(i)];
    }
  }
  for (int l = 0; l < d; ++l) {
    preps.push_back(projector(u.col(l)));
  }
  return finish(channel, EBChannel(std::move(effects), std::move(preps)), u, ReductionRoute::kCommutingStates, tol);
}

ReductionResult reduce_commuting_povm(const EBChannel& channel, double tol) {
  refuse_if_not_commuting(channel.effects(), tol, "POVM elements");
  const ComplexMatrix u = simultaneous_diagonalizer(channel.effects(), tol);
  const int d = channel.dim();
  std::vector<ComplexMatrix> effects;
  std::vector<ComplexMatrix> preps(static_cast<size_t>(d), ComplexMatrix::Zero(d, d));
  for (int i = 0; i < channel.branches(); ++i) {
    const RealVector e = (u.adjoint() * channel.effects()[static_cast<size_t>(i)] * u).diagonal().real();
    for (int l = 0; l < d; ++l) {
      preps[static_cast<size_t>(l)] += e(l) * channel.preps()[static_cast<size_t>(i)];
    }
  }
  for (int l = 0; l < d; ++l) {
    effects.push_back(projector(u.col(l)));
  }
  return finish(channel, EBChannel(std::move(effects), std::move(preps)), u, ReductionRoute::kCommutingPovm, tol);
}

}  // namespace tadv
