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

#include <string>

#include "tadv/errors.h"

namespace tadv {
namespace {

void require_square(const ComplexMatrix& m, int d, const std::string& what) {
  if (m.rows() != d || m.cols() != d) {
    throw StructuralError(what + " must be " + std::to_string(d) + "x" + std::to_string(d) + ", got " +
                          std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

}  // namespace

ClassicalModel::ClassicalModel(RealVector pi, RealMatrix t0, RealMatrix t1)
    : pi_(std::move(pi)), transitions_{std::move(t0), std::move(t1)} {
  const auto d = pi_.size();
  if (d == 0) {
    throw StructuralError("classical model needs at least one state");
  }
  for (int a = 0; a < kNumOutcomes; ++a) {
    const auto& t = transitions_[static_cast<size_t>(a)];
    if (t.rows() != d || t.cols() != d) {
      throw StructuralError("T" + std::to_string(a) + " is " + std::to_string(t.rows()) + "x" +
                            std::to_string(t.cols()) + " but pi has " + std::to_string(d) + " entries");
    }
  }
}

EBChannel::EBChannel(std::vector<ComplexMatrix> effects, std::vector<ComplexMatrix> preps)
    : dim_(0), effects_(std::move(effects)), preps_(std::move(preps)) {
  if (effects_.empty()) {
    throw StructuralError("channel needs at least one branch");
  }
  if (effects_.size() != preps_.size()) {
    throw StructuralError("channel has " + std::to_string(effects_.size()) + " effects but " +
                          std::to_string(preps_.size()) + " prepared states");
  }
  dim_ = static_cast<int>(effects_.front().rows());
  if (dim_ == 0) {
    throw StructuralError("channel dimension must be positive");
  }
  for (size_t i = 0; i < effects_.size(); ++i) {
    require_square(effects_[i], dim_, "effect " + std::to_string(i));
    require_square(preps_[i], dim_, "prepared state " + std::to_string(i));
  }
}

Instrument::Instrument(int dim, std::array<std::vector<ComplexMatrix>, kNumOutcomes> kraus)
    : dim_(dim), kraus_(std::move(kraus)) {
  if (dim_ <= 0) {
    throw StructuralError("instrument dimension must be positive");
  }
  for (int a = 0; a < kNumOutcomes; ++a) {
    const auto& ops = kraus_[static_cast<size_t>(a)];
    for (size_t k = 0; k < ops.size(); ++k) {
      require_square(ops[k], dim_, "Kraus operator (" + std::to_string(a) + "," + std::to_string(k) + ")");
    }
  }
}

Instrument Instrument::single(const ComplexMatrix& k0, const ComplexMatrix& k1) {
  return Instrument(static_cast<int>(k0.rows()), {std::vector<ComplexMatrix>{k0}, std::vector<ComplexMatrix>{k1}});
}

ComplexMatrix Instrument::apply(int outcome, const ComplexMatrix& rho) const {
  ComplexMatrix out = ComplexMatrix::Zero(dim_, dim_);
  for (const auto& k : kraus(outcome)) {
    out += k * rho * k.adjoint();
  }
  return out;
}

ComplexMatrix Instrument::completeness() const {
  ComplexMatrix total = ComplexMatrix::Zero(dim_, dim_);
  for (const auto& ops : kraus_) {
    for (const auto& k : ops) {
      total += k.adjoint() * k;
    }
  }
  return total;
}

QuantumModel::QuantumModel(ComplexMatrix rho0, EBChannel channel, Instrument instrument)
    : rho0_(std::move(rho0)), channel_(std::move(channel)), instrument_(std::move(instrument)) {
  const int d = channel_.dim();
  require_square(rho0_, d, "initial state");
  if (instrument_.dim() != d) {
    throw StructuralError("instrument dimension " + std::to_string(instrument_.dim()) +
                          " does not match channel dimension " + std::to_string(d));
  }
}

}  // namespace tadv
