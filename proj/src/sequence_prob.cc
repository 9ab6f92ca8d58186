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

#include "tadv/sequence_prob.h"

#include <cstdio>
#include <functional>
#include <stdexcept>

#include "tadv/errors.h"

namespace tadv {
namespace {

void require_length(int length, int max_length, const char* what) {
  if (length < 1) {
    throw std::invalid_argument("sequence length must be >= 1");
  }
  if (length > max_length) {
    throw ResourceError(std::string(what) + " enumeration limited to L <= " + std::to_string(max_length) +
                        ", requested " + std::to_string(length));
  }
}

// Depth-first enumeration in lexicographic order; `State` is the
// unnormalized memory state after the current prefix.
template <typename State, typename Step, typename Finish>
Distribution enumerate(int length, const State& initial, Step step, Finish finish) {
  Distribution dist;
  dist.length = length;
  dist.entries.reserve(size_t{1} << length);
  std::vector<int> prefix;
  prefix.reserve(static_cast<size_t>(length));
  std::function<void(const State&)> recurse = [&](const State& state) {
    if (static_cast<int>(prefix.size()) == length) {
      dist.entries.emplace_back(Sequence(prefix), finish(state));
      return;
    }
    for (int a = 0; a < kNumOutcomes; ++a) {
      prefix.push_back(a);
      recurse(step(state, a));
      prefix.pop_back();
    }
  };
  recurse(initial);
  return dist;
}

}  // namespace

double Distribution::total() const {
  double t = 0.0;
  for (const auto& [seq, p] : entries) {
    t += p;
  }
  return t;
}

double Distribution::at(const Sequence& seq) const {
  if (seq.length() != length) {
    throw std::out_of_range("sequence length " + std::to_string(seq.length()) + " not in distribution of length " +
                            std::to_string(length));
  }
  // Lexicographic order equals binary counting with a_1 most significant.
  size_t index = 0;
  for (auto a : seq.outcomes()) {
    index = (index << 1) | a;
  }
  return entries.at(index).second;
}

ComplexMatrix apply_channel(const EBChannel& channel, const ComplexMatrix& rho) {
  const int d = channel.dim();
  if (rho.rows() != d || rho.cols() != d) {
    throw StructuralError("state is " + std::to_string(rho.rows()) + "x" + std::to_string(rho.cols()) +
                          " but channel acts on dimension " + std::to_string(d));
  }
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (int i = 0; i < channel.branches(); ++i) {
    const auto k = static_cast<size_t>(i);
    // Tr(rho E) without forming the product.
    const Complex weight = (rho.transpose().cwiseProduct(channel.effects()[k])).sum();
    out += weight * channel.preps()[k];
  }
  return out;
}

double classical_sequence_prob(const ClassicalModel& model, const Sequence& seq) {
  RealVector state = model.pi();
  for (auto a : seq.outcomes()) {
    state = model.transition(a) * state;
  }
  return state.sum();
}

double quantum_sequence_prob(const QuantumModel& model, const Sequence& seq, bool with_channel) {
  ComplexMatrix rho = model.rho0();
  for (auto a : seq.outcomes()) {
    if (with_channel) {
      rho = apply_channel(model.channel(), rho);
    }
    rho = model.instrument().apply(a, rho);
  }
  return rho.trace().real();
}

ClassicalModel effective_classical_model(const QuantumModel& model) {
  const auto& channel = model.channel();
  const int m = channel.branches();
  RealVector pi(m);
  for (int i = 0; i < m; ++i) {
    pi(i) = (model.rho0() * channel.effects()[static_cast<size_t>(i)]).trace().real();
  }
  std::array<RealMatrix, kNumOutcomes> t;
  for (int a = 0; a < kNumOutcomes; ++a) {
    t[static_cast<size_t>(a)] = RealMatrix::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      const ComplexMatrix out = model.instrument().apply(a, channel.preps()[static_cast<size_t>(i)]);
      for (int j = 0; j < m; ++j) {
        t[static_cast<size_t>(a)](j, i) = (out * channel.effects()[static_cast<size_t>(j)]).trace().real();
      }
    }
  }
  return ClassicalModel(std::move(pi), std::move(t[0]), std::move(t[1]));
}

Distribution full_distribution(const ClassicalModel& model, int length) {
  require_length(length, kMaxClassicalEnumerationLength, "classical");
  return enumerate(
      length, model.pi(), [&](const RealVector& s, int a) -> RealVector { return model.transition(a) * s; },
      [](const RealVector& s) { return s.sum(); });
}

Distribution full_distribution(const QuantumModel& model, int length, bool with_channel) {
  require_length(length, kMaxQuantumEnumerationLength, "quantum");
  return enumerate(
      length, model.rho0(),
      [&](const ComplexMatrix& rho, int a) -> ComplexMatrix {
        return model.instrument().apply(a, with_channel ? apply_channel(model.channel(), rho) : rho);
      },
      [](const ComplexMatrix& rho) { return rho.trace().real(); });
}

std::string format_probability(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void write_csv(const Distribution& dist, std::ostream& out) {
  out << "sequence,probability\n";
  for (const auto& [seq, p] : dist.entries) {
    out << seq.str() << ',' << format_probability(p) << '\n';
  }
}

}  // namespace tadv
