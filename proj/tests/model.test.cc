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

#include "tadv/model.h"

#include "gtest/gtest.h"

#include "tadv/constructions.h"
#include "tadv/errors.h"
#include "tadv/json_io.h"
#include "tadv/linalg.h"
#include "tadv/sequence.h"
#include "tadv/validation.h"
#include "test_util.h"

using namespace tadv;
using namespace tadv::testing;

TEST(linalg, psd_and_hermitian_queries) {
  ComplexMatrix a(2, 2);
  a << 1, Complex(0, 1), Complex(0, -1), 1;
  EXPECT_TRUE(is_hermitian(a, 1e-15));
  EXPECT_TRUE(is_psd(a, 1e-12));
  EXPECT_NEAR(min_eigenvalue(a), 0.0, 1e-14);
  EXPECT_NEAR(max_eigenvalue(a), 2.0, 1e-14);
  EXPECT_FALSE(has_unit_trace(a, 1e-9));

  const ComplexMatrix z = pauli_z();
  EXPECT_FALSE(is_psd(z, 1e-9));
  EXPECT_NEAR(psd_residual(z), 1.0, 1e-14);

  ComplexMatrix skew(2, 2);
  skew << 0, 1, 0, 0;
  EXPECT_FALSE(is_hermitian(skew, 1e-3));
}

TEST(linalg, pauli_commutator_norm_is_two) {
  EXPECT_NEAR(operator_norm(commutator(pauli_x(), pauli_z())), 2.0, 1e-14);
}

TEST(linalg, kron_shape_and_entries) {
  const ComplexMatrix k = kron(pauli_x(), pauli_z());
  ASSERT_EQ(k.rows(), 4);
  EXPECT_EQ(k(0, 2), Complex(1));
  EXPECT_EQ(k(1, 3), Complex(-1));
  EXPECT_EQ(k(0, 0), Complex(0));
}

TEST(sequence, parse_and_format) {
  const Sequence s = Sequence::parse("0001");
  EXPECT_EQ(s.length(), 4);
  EXPECT_EQ(s[3], 1);
  EXPECT_EQ(s.str(), "0001");
  EXPECT_EQ(Sequence::one_tick(4), s);
  EXPECT_THROW(Sequence::parse(""), std::invalid_argument);
  EXPECT_THROW(Sequence::parse("012"), std::invalid_argument);
  EXPECT_THROW(Sequence(std::vector<int>{}), std::invalid_argument);
}

TEST(model, structural_errors_on_shape_mismatch) {
  EXPECT_THROW(ClassicalModel(RealVector::Ones(2), RealMatrix::Zero(3, 3), RealMatrix::Zero(3, 3)), StructuralError);
  EXPECT_THROW(EBChannel({basis_projector(2, 0)}, {}), StructuralError);
  EXPECT_THROW(EBChannel({basis_projector(2, 0)}, {basis_projector(3, 0)}), StructuralError);
  Rng rng(1);
  EXPECT_THROW(QuantumModel(basis_projector(3, 0), random_channel(2, 2, rng), random_instrument(2, rng)),
               StructuralError);
}

TEST(validate_classical, one_way_is_exact) {
  const ValidationReport r = validate_classical(one_way_classical(4));
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.max_residual(), 0.0);
}

TEST(validate_classical, uniform_split_is_valid) {
  RealVector pi(2);
  pi << 1, 0;
  const RealMatrix half = 0.5 * RealMatrix::Identity(2, 2);
  EXPECT_TRUE(validate_classical(ClassicalModel(pi, half, half)).ok());
}

TEST(validate_classical, reports_normalization_failure) {
  RealVector pi(2);
  pi << 0.5, 0.6;
  const RealMatrix half = 0.5 * RealMatrix::Identity(2, 2);
  const ValidationReport r = validate_classical(ClassicalModel(pi, half, half));
  ASSERT_FALSE(r.ok());
  const auto v = r.violations();
  ASSERT_EQ(v.size(), 1u);
  EXPECT_NE(v[0].detail.find("pi sums to 1.1"), std::string::npos) << v[0].detail;
  EXPECT_NEAR(v[0].residual, 0.1, 1e-12);
}

TEST(validate_classical, negative_entry_and_stochasticity) {
  RealVector pi(2);
  pi << 1, 0;
  RealMatrix t0 = 0.5 * RealMatrix::Identity(2, 2);
  RealMatrix t1 = t0;
  t0(1, 0) = -0.2;
  const ValidationReport r = validate_classical(ClassicalModel(pi, t0, t1));
  EXPECT_GT(r.residual("T0 nonnegative"), 0.19);
  EXPECT_GT(r.residual("T0+T1 column stochastic"), 0.19);
}

TEST(validate_quantum, etf_model_valid) {
  const ValidationReport r = validate_quantum(etf_quantum_model(3));
  EXPECT_TRUE(r.ok()) << r.summary();
  EXPECT_LT(r.max_residual(), 1e-12);
}

TEST(validate_quantum, oversized_effect_sum) {
  const int d = 2;
  EBChannel channel({2.0 * ComplexMatrix::Identity(d, d)}, {basis_projector(d, 0)});
  const ValidationReport r = validate_channel(channel);
  EXPECT_FALSE(r.ok());
  EXPECT_NEAR(r.residual("sum E = 1"), 1.0, 1e-12);
}

TEST(validate_quantum, subnormalized_relaxation) {
  const int d = 2;
  EBChannel channel({0.5 * ComplexMatrix::Identity(d, d)}, {basis_projector(d, 0)});
  EXPECT_FALSE(validate_channel(channel).ok());
  EXPECT_TRUE(validate_channel(channel, kDefaultTol, {.allow_subnormalized = true}).ok());
}

TEST(validate_quantum, random_fixtures_pass_and_are_pure) {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const QuantumModel q = random_quantum(2 + trial % 3, 1 + trial % 5, rng);
    const ValidationReport a = validate_quantum(q);
    const ValidationReport b = validate_quantum(q);
    EXPECT_TRUE(a.ok()) << a.summary();
    ASSERT_EQ(a.checks.size(), b.checks.size());
    for (size_t i = 0; i < a.checks.size(); ++i) {
      EXPECT_EQ(a.checks[i].residual, b.checks[i].residual);
    }
    EXPECT_TRUE(validate_classical(random_classical(1 + trial % 5, rng)).ok());
  }
}

TEST(validate_quantum, instrument_completeness) {
  ComplexMatrix k0 = ComplexMatrix::Identity(2, 2);
  const ValidationReport r = validate_instrument(Instrument::single(k0, k0));
  EXPECT_NEAR(r.residual("sum K^dagger K = 1"), 1.0, 1e-12);
}

TEST(choi, single_branch) {
  const int d = 2;
  EBChannel channel({ComplexMatrix::Identity(d, d)}, {basis_projector(d, 0)});
  const ComplexMatrix expected = kron(basis_projector(d, 0), ComplexMatrix::Identity(d, d)) / 2.0;
  EXPECT_LT((choi_matrix(channel) - expected).norm(), 1e-15);
}

TEST(choi, dephasing) {
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(0, 0) = 0.5;
  expected(3, 3) = 0.5;
  EXPECT_LT((choi_matrix(dephasing_channel(2)) - expected).norm(), 1e-15);
}

TEST(choi, etf_rank_and_trace) {
  const ComplexMatrix c = choi_matrix(etf_quantum_model(3).channel());
  EXPECT_NEAR(c.trace().real(), 1.0, 1e-12);
  EXPECT_GT(min_eigenvalue(c), -1e-10);
  const RealVector ev = hermitian_eigenvalues(c);
  EXPECT_GE((ev.array() > 1e-9).count(), 3);
}

TEST(choi, random_channels_psd_unit_trace) {
  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const ComplexMatrix c = choi_matrix(random_channel(2 + trial % 3, 1 + trial % 6, rng));
    EXPECT_GT(min_eigenvalue(c), -1e-10);
    EXPECT_NEAR(c.trace().real(), 1.0, 1e-12);
  }
}

TEST(json_io, quantum_round_trip) {
  Rng rng(3);
  const QuantumModel q = random_quantum(3, 4, rng);
  const ModelFile back = parse_model_document(json::parse(model_document(q, 1e-7).dump()));
  ASSERT_TRUE(std::holds_alternative<QuantumModel>(back.model));
  ASSERT_TRUE(back.tol.has_value());
  EXPECT_EQ(*back.tol, 1e-7);
  const auto& r = std::get<QuantumModel>(back.model);
  EXPECT_EQ(r.rho0(), q.rho0());
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(r.channel().effects()[i], q.channel().effects()[i]);
    EXPECT_EQ(r.channel().preps()[i], q.channel().preps()[i]);
  }
  for (int a = 0; a < kNumOutcomes; ++a) {
    ASSERT_EQ(r.instrument().kraus(a).size(), q.instrument().kraus(a).size());
    for (size_t k = 0; k < q.instrument().kraus(a).size(); ++k) {
      EXPECT_EQ(r.instrument().kraus(a)[k], q.instrument().kraus(a)[k]);
    }
  }
}

TEST(json_io, classical_round_trip) {
  Rng rng(4);
  const ClassicalModel c = random_classical(4, rng);
  const ModelFile back = parse_model_document(json::parse(model_document(c).dump()));
  const auto& r = std::get<ClassicalModel>(back.model);
  EXPECT_EQ(r.pi(), c.pi());
  EXPECT_EQ(r.transition(0), c.transition(0));
  EXPECT_EQ(r.transition(1), c.transition(1));
}

TEST(json_io, matrices_are_row_major) {
  const json j = json::parse(R"([[[1,0],[2,0]],[[3,0],[4,0]]])");
  const ComplexMatrix m = complex_matrix_from_json(j);
  EXPECT_EQ(m(0, 1), Complex(2));
  EXPECT_EQ(m(1, 0), Complex(3));
  EXPECT_EQ(complex_from_json(json::parse("[0.5,-1]")), Complex(0.5, -1));
}

TEST(json_io, malformed_documents) {
  EXPECT_THROW(parse_model_document(json::parse(R"({"other": 1})")), StructuralError);
  EXPECT_THROW(parse_model_document(json::parse(R"({"classical": {"pi": [1]}})")), StructuralError);
  EXPECT_THROW(parse_model_document(json::parse(R"({"classical": {"pi": [1, 0], "T0": [[1]], "T1": [[0]]}})")),
               StructuralError);
}
