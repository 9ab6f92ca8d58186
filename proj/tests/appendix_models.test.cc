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

#include "tadv/appendix_models.h"

#include <fstream>
#include <sstream>

#include "gtest/gtest.h"

#include "tadv/errors.h"
#include "tadv/json_io.h"
#include "tadv/sequence_prob.h"
#include "tadv/validation.h"

using namespace tadv;

namespace {

std::string data_text() {
  std::ifstream in(TADV_APPENDIX_DATA);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(appendix_data, checksum_of_data_file) {
  EXPECT_EQ(sha256_hex(data_text()), kAppendixDataSha256);
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(load_builtin, l4_shape) {
  const BuiltinModel b = load_builtin("L4");
  EXPECT_EQ(b.dim, 3);
  EXPECT_EQ(b.effect_vectors.size(), 4u);
  EXPECT_EQ(b.effect_vectors[0], (ComplexVector(3) << 1, 0, 0).finished());
  EXPECT_EQ(b.sequence.str(), "0001");
  for (const auto& diag : b.kraus_diagonals) {
    for (double v : diag) {
      EXPECT_TRUE(v == 0.0 || v == 1.0);
    }
  }
  EXPECT_EQ(b.kraus_diagonals[0], (RealVector(3) << 0, 1, 1).finished());
  EXPECT_EQ(b.kraus_diagonals[1], (RealVector(3) << 1, 0, 0).finished());
  EXPECT_EQ(b.model().rho0(), basis_projector(3, 0));
}

TEST(load_builtin, l5_shape) {
  const BuiltinModel b = load_builtin("L5");
  EXPECT_EQ(b.dim, 4);
  EXPECT_EQ(b.prep_vectors.size(), 5u);
  EXPECT_EQ(b.prep_vectors[4], (ComplexVector(4) << 1, 0, 0, 0).finished());
  EXPECT_EQ(b.kraus_diagonals[0], (RealVector(4) << 0, 1, 1, 1).finished());
}

TEST(load_builtin, verbatim_entries) {
  const BuiltinModel b = load_builtin("L4");
  EXPECT_EQ(b.effect_vectors[1](1), Complex(-0.09692, -0.41924));
  EXPECT_EQ(b.effect_vectors[1](2), Complex(0.74404, 0));
}

TEST(load_builtin, unknown_label) { EXPECT_THROW(load_builtin("L6"), std::invalid_argument); }

TEST(verify_builtin, l4) {
  const BuiltinReport r = verify_builtin("L4");
  EXPECT_NEAR(r.probability, 0.359523, 2e-3);
  EXPECT_GT(r.margin, 0.04);
  EXPECT_NEAR(r.ratio, 1.136270, 1e-2);
  EXPECT_LE(r.residuals.max_residual(), 1e-3);
  EXPECT_TRUE(validate_quantum(load_builtin("L4").model(), 1e-3).ok());
}

TEST(verify_builtin, l5) {
  const BuiltinReport r = verify_builtin("L5");
  EXPECT_NEAR(r.probability, 0.368445, 2e-3);
  EXPECT_GT(r.margin, 0.04);
  EXPECT_NEAR(r.ratio, 1.124405, 1e-2);
  EXPECT_LE(r.residuals.max_residual(), 1e-3);
}

TEST(verify_builtin, sabotaged_entry_is_rejected) {
  json doc = json::parse(data_text());
  doc["L4"]["effect_vectors"][1][2][0] = doc["L4"]["effect_vectors"][1][2][0].get<double>() + 0.1;
  const BuiltinModel b = builtin_from_json_text(doc.dump(), "L4");
  EXPECT_THROW(verify_builtin(b), DataIntegrityError);
  EXPECT_NE(sha256_hex(doc.dump()), kAppendixDataSha256);
}

TEST(verify_builtin, malformed_text) { EXPECT_THROW(builtin_from_json_text("{", "L4"), DataIntegrityError); }

TEST(verify_builtin, effective_models) {
  for (const auto& label : builtin_labels()) {
    const BuiltinModel b = load_builtin(label);
    const QuantumModel q = b.model();
    const ClassicalModel c = effective_classical_model(q);
    EXPECT_TRUE(validate_classical(c, 1e-3).ok());
    EXPECT_NEAR(classical_sequence_prob(c, b.sequence), quantum_sequence_prob(q, b.sequence), 1e-12);
  }
}
