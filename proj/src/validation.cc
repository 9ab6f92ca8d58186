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

#include "tadv/validation.h"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tadv {
namespace {

std::string indexed(const std::string& base, size_t i) { return base + "[" + std::to_string(i) + "]"; }

void add(ValidationReport& report, std::string name, double residual, double tol, std::string detail = {}) {
  report.checks.push_back(Check{std::move(name), residual, tol, std::move(detail)});
}

// Residual of "total == 1" or, when subnormalized sums are allowed, of "total <= 1".
double identity_residual(const ComplexMatrix& total, bool allow_subnormalized) {
  const auto d = total.rows();
  ComplexMatrix diff = total - ComplexMatrix::Identity(d, d);
  if (allow_subnormalized) {
    return std::max({0.0, max_eigenvalue(diff), hermiticity_residual(total)});
  }
  return operator_norm(diff);
}

void append(ValidationReport& into, const ValidationReport& from) {
  into.checks.insert(into.checks.end(), from.checks.begin(), from.checks.end());
}

}  // namespace

bool ValidationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok(); });
}

std::vector<Check> ValidationReport::violations() const {
  std::vector<Check> out;
  std::copy_if(checks.begin(), checks.end(), std::back_inserter(out), [](const Check& c) { return !c.ok(); });
  return out;
}

double ValidationReport::max_residual() const {
  double worst = 0.0;
  for (const auto& c : checks) {
    worst = std::max(worst, c.residual);
  }
  return worst;
}

double ValidationReport::residual(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) {
      return c.residual;
    }
  }
  throw std::out_of_range("no check named " + name);
}

std::string ValidationReport::summary() const {
  std::ostringstream out;
  for (const auto& c : violations()) {
    out << c.name << ": residual " << c.residual << " exceeds " << c.tol;
    if (!c.detail.empty()) {
      out << " (" << c.detail << ")";
    }
    out << "\n";
  }
  return out.str();
}

ValidationReport validate_classical(const ClassicalModel& model, double tol) {
  ValidationReport report;
  const auto& pi = model.pi();
  add(report, "pi nonnegative", std::max(0.0, -pi.minCoeff()), tol);
  std::ostringstream pi_sum;
  pi_sum << "pi sums to " << pi.sum();
  add(report, "pi sums to 1", std::abs(pi.sum() - 1.0), tol, pi_sum.str());
  for (int a = 0; a < kNumOutcomes; ++a) {
    add(report, "T" + std::to_string(a) + " nonnegative", std::max(0.0, -model.transition(a).minCoeff()), tol);
  }
  RealVector column_sums = (model.transition(0) + model.transition(1)).colwise().sum().transpose();
  add(report, "T0+T1 column stochastic", (column_sums.array() - 1.0).abs().maxCoeff(), tol);
  return report;
}

ValidationReport validate_channel(const EBChannel& channel, double tol, ChannelCheckOptions options) {
  ValidationReport report;
  for (size_t i = 0; i < channel.effects().size(); ++i) {
    const auto& e = channel.effects()[i];
    add(report, indexed("E", i) + " hermitian", hermiticity_residual(e), tol);
    add(report, indexed("E", i) + " psd", psd_residual(e), tol);
  }
  add(report, "sum E = 1", identity_residual(sum(channel.effects(), channel.dim()), options.allow_subnormalized),
      tol);
  for (size_t i = 0; i < channel.preps().size(); ++i) {
    const auto& s = channel.preps()[i];
    add(report, indexed("sigma", i) + " hermitian", hermiticity_residual(s), tol);
    add(report, indexed("sigma", i) + " psd", psd_residual(s), tol);
    add(report, indexed("sigma", i) + " trace 1", std::abs(s.trace() - 1.0), tol);
  }
  return report;
}

ValidationReport validate_instrument(const Instrument& instrument, double tol, ChannelCheckOptions options) {
  ValidationReport report;
  add(report, "sum K^dagger K = 1", identity_residual(instrument.completeness(), options.allow_subnormalized), tol);
  return report;
}

ValidationReport validate_quantum(const QuantumModel& model, double tol, ChannelCheckOptions options) {
  ValidationReport report;
  add(report, "rho0 hermitian", hermiticity_residual(model.rho0()), tol);
  add(report, "rho0 psd", psd_residual(model.rho0()), tol);
  add(report, "rho0 trace 1", std::abs(model.rho0().trace() - 1.0), tol);
  append(report, validate_channel(model.channel(), tol, options));
  append(report, validate_instrument(model.instrument(), tol, options));
  return report;
}

ComplexMatrix choi_matrix(const EBChannel& channel) {
  const int d = channel.dim();
  ComplexMatrix choi = ComplexMatrix::Zero(d * d, d * d);
  for (int i = 0; i < channel.branches(); ++i) {
    choi += kron(channel.preps()[static_cast<size_t>(i)], channel.effects()[static_cast<size_t>(i)].transpose());
  }
  return choi / static_cast<double>(d);
}

}  // namespace tadv
