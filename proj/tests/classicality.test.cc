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

#include "gtest/gtest.h"

#include "tadv/constructions.h"
#include "tadv/errors.h"
#include "tadv/sequence_prob.h"
#include "tadv/validation.h"
#include "test_util.h"

using namespace tadv;
using namespace tadv::testing;

TEST(commute_check, examples) {
  Rng rng(41);
  std::vector<ComplexMatrix> diag;
  for (int i = 0; i < 4; ++i) {
    diag.push_back(random_simplex(3, rng).cast<Complex>().asDiagonal());
  }
  EXPECT_EQ(commute_check(diag), 0.0);
  EXPECT_NEAR(commute_check({pauli_x(), pauli_z()}), 2.0, 1e-14);
  EXPECT_GT(commute_check(etf_quantum_model(3).channel().preps()), 0.1);
  EXPECT_THROW(commute_check({pauli_x(), basis_projector(3, 0)}), StructuralError);
}

TEST(simultaneous_diagonalizer, degenerate_family) {
  // Shared eigenspace of dimension two in every member.
  Rng rng(42);
  const ComplexMatrix u = random_unitary(4, rng);
  std::vector<ComplexMatrix> ops;
  for (int i = 0; i < 3; ++i) {
    RealVector ev = random_simplex(4, rng);
    ev(1) = ev(0);
    ops.push_back(u * ev.cast<Complex>().asDiagonal() * u.adjoint());
  }
  const ComplexMatrix v = simultaneous_diagonalizer(ops, 1e-9);
  EXPECT_LT((v.adjoint() * v - ComplexMatrix::Identity(4, 4)).norm(), 1e-12);
  for (const auto& a : ops) {
    ComplexMatrix rotated = v.adjoint() * a * v;
    rotated.diagonal().setZero();
    EXPECT_LT(rotated.norm(), 1e-10);
  }
}

TEST(probe_states, tomographically_complete) {
  const auto probes = probe_states(3);
  EXPECT_EQ(probes.size(), 3u + 2u * 3u + 20u);
  // Span of the probes is all 3x3 matrices.
  Eigen::MatrixXcd stacked(9, static_cast<Eigen::Index>(probes.size()));
  for (size_t i = 0; i < probes.size(); ++i) {
    stacked.col(static_cast<Eigen::Index>(i)) = probes[i].reshaped();
    EXPECT_NEAR(probes[i].trace().real(), 1.0, 1e-12);
    EXPECT_TRUE(is_psd(probes[i], 1e-12));
  }
  EXPECT_EQ(Eigen::FullPivLU<Eigen::MatrixXcd>(stacked).rank(), 9);
}

TEST(reduce_commuting_states, dephasing_is_preserved) {
  const EBChannel ch = dephasing_channel(3);
  const ReductionResult r = reduce_commuting_states(ch, 1e-9);
  EXPECT_EQ(r.route, ReductionRoute::kCommutingStates);
  EXPECT_EQ(r.reduced.branches(), 3);
  EXPECT_LT(max_action_difference(ch, r.reduced, probe_states(3)), 1e-12);
}

TEST(reduce_commuting_states, random_channels) {
  Rng rng(43);
  for (int trial = 0; trial < 30; ++trial) {
    const EBChannel ch = random_commuting_states_channel(3, 4 + trial % 3, rng);
    const ReductionResult r = reduce_commuting_states(ch, 1e-9);
    EXPECT_EQ(r.reduced.branches(), 3);
    EXPECT_TRUE(validate_channel(r.reduced, 1e-9).ok());
    EXPECT_LT(max_action_difference(ch, r.reduced, probe_states(3, 50, trial)), 1e-10);
    EXPECT_LT((choi_matrix(ch) - choi_matrix(r.reduced)).norm(), 1e-8);
  }
}

TEST(reduce_commuting_states, refuses_etf) {
  try {
    reduce_commuting_states(etf_quantum_model(3).channel(), 1e-9);
    FAIL() << "expected refusal";
  } catch (const NotCommutingError& e) {
    EXPECT_GT(e.residual(), 0.1);
    EXPECT_NE(std::string(e.what()).find("do not commute"), std::string::npos);
  }
}

TEST(reduce_commuting_states, refuses_near_commuting) {
  Rng rng(44);
  const EBChannel ch = random_commuting_states_channel(3, 4, rng);
  auto preps = ch.preps();
  ComplexMatrix kick = ComplexMatrix::Zero(3, 3);
  kick(0, 1) = 2e-9;
  kick(1, 0) = 2e-9;
  preps[0] += kick;
  const EBChannel perturbed(ch.effects(), preps);
  EXPECT_THROW(reduce_commuting_states(perturbed, 1e-9), NotCommutingError);
}

TEST(reduce_commuting_povm, random_channels) {
  Rng rng(45);
  for (int trial = 0; trial < 30; ++trial) {
    const EBChannel ch = random_commuting_povm_channel(3, 5, rng);
    const ReductionResult r = reduce_commuting_povm(ch, 1e-9);
    EXPECT_EQ(r.route, ReductionRoute::kCommutingPovm);
    EXPECT_EQ(r.reduced.branches(), 3);
    EXPECT_TRUE(validate_channel(r.reduced, 1e-9).ok());
    EXPECT_LT(max_action_difference(ch, r.reduced, probe_states(3, 50, trial)), 1e-10);
  }
}

TEST(reduce_commuting_povm, projective_keeps_states) {
  Rng rng(46);
  std::vector<ComplexMatrix> effects;
  std::vector<ComplexMatrix> preps;
  for (int k = 0; k < 3; ++k) {
    effects.push_back(basis_projector(3, k));
    preps.push_back(random_density(3, rng));
  }
  const ReductionResult r = reduce_commuting_povm(EBChannel(effects, preps), 1e-9);
  // Each reduced state is some original prep, up to ordering of the eigenbasis.
  for (const auto& s : r.reduced.preps()) {
    double best = 1.0;
    for (const auto& p : preps) {
      best = std::min(best, (s - p).norm());
    }
    EXPECT_LT(best, 1e-10);
  }
}

TEST(reduce_commuting_povm, refuses_etf) {
  EXPECT_THROW(reduce_commuting_povm(etf_quantum_model(3).channel(), 1e-9), NotCommutingError);
}

TEST(reduction_route, names) {
  EXPECT_EQ(to_string(ReductionRoute::kCommutingStates), "commuting-states");
  EXPECT_EQ(to_string(ReductionRoute::kCommutingPovm), "commuting-povm");
}
