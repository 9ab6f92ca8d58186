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

#include "tadv/optimize.h"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "tadv/errors.h"
#include "tadv/sequence_prob.h"

namespace tadv {
namespace {

using Outcomes = std::array<std::vector<ComplexMatrix>, kNumOutcomes>;

ComplexVector read_vector(std::span<const double> p, size_t offset, int d) {
  ComplexVector v(d);
  for (int k = 0; k < d; ++k) {
    v(k) = Complex(p[offset + 2 * static_cast<size_t>(k)], p[offset + 2 * static_cast<size_t>(k) + 1]);
  }
  return v;
}

ComplexMatrix read_matrix(std::span<const double> p, size_t offset, int d) {
  ComplexMatrix m(d, d);
  for (Eigen::Index k = 0; k < m.size(); ++k) {
    m(k) = Complex(p[offset + 2 * static_cast<size_t>(k)], p[offset + 2 * static_cast<size_t>(k) + 1]);
  }
  return m;
}

template <typename Dense>
void write_complex(std::vector<double>& p, size_t offset, const Dense& x) {
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    p[offset + 2 * static_cast<size_t>(k)] = x(k).real();
    p[offset + 2 * static_cast<size_t>(k) + 1] = x(k).imag();
  }
}

template <typename Dense>
void add_complex(std::span<double> g, size_t offset, const Dense& x) {
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    g[offset + 2 * static_cast<size_t>(k)] += x(k).real();
    g[offset + 2 * static_cast<size_t>(k) + 1] += x(k).imag();
  }
}

// Top eigenpair of a Hermitian matrix.
std::pair<double, ComplexVector> top_eigen(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  const auto last = h.rows() - 1;
  return {solver.eigenvalues()(last), solver.eigenvectors().col(last)};
}

double trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a.transpose().cwiseProduct(b)).sum().real();
}

// Decoded model together with the intermediates the backward pass needs.
struct Decoded {
  std::vector<ComplexMatrix> state_raw;   // a_i (d x 1), A_i, or real diagonal a_i (d x 1)
  std::vector<double> state_norm;
  std::vector<ComplexMatrix> sigma;
  std::vector<ComplexMatrix> effect_raw;  // b_i or B_i
  std::vector<ComplexMatrix> effect_gram;  // b b^dagger or B^dagger B
  std::vector<ComplexMatrix> effects;
  double effect_scale = 0.0;
  ComplexVector effect_top;
  Outcomes kraus_raw;
  Outcomes kraus;
  double kraus_scale = 0.0;
  ComplexVector kraus_top;
};

Decoded decode(std::span<const double> p, const ParamLayout& layout) {
  if (p.size() != layout.size()) {
    throw StructuralError("parameter vector has " + std::to_string(p.size()) + " entries, layout needs " +
                          std::to_string(layout.size()));
  }
  const int d = layout.dim;
  const int m = layout.branches;
  Decoded out;
  for (int i = 0; i < m; ++i) {
    const size_t off = layout.state_offset(i);
    ComplexMatrix raw;
    ComplexMatrix gram;
    if (layout.diagonal_states) {
      raw = ComplexMatrix::Zero(d, 1);
      for (int k = 0; k < d; ++k) {
        raw(k, 0) = p[off + static_cast<size_t>(k)];
      }
      gram = ComplexMatrix::Zero(d, d);
      gram.diagonal() = raw.col(0).cwiseAbs2().cast<Complex>();
    } else if (layout.mode == ParamMode::kRank1) {
      raw = read_vector(p, off, d);
      gram = raw * raw.adjoint();
    } else {
      raw = read_matrix(p, off, d);
      gram = raw.adjoint() * raw;
    }
    const double norm = gram.trace().real();
    if (!(norm > 0.0)) {
      throw DegeneracyError("state block " + std::to_string(i) + " has zero norm");
    }
    out.sigma.push_back(gram / norm);
    out.state_raw.push_back(std::move(raw));
    out.state_norm.push_back(norm);
  }

  ComplexMatrix effect_sum = ComplexMatrix::Zero(d, d);
  for (int i = 0; i < m; ++i) {
    const size_t off = layout.effect_offset(i);
    ComplexMatrix raw;
    ComplexMatrix gram;
    if (layout.mode == ParamMode::kRank1) {
      raw = read_vector(p, off, d);
      gram = raw * raw.adjoint();
    } else {
      raw = read_matrix(p, off, d);
      gram = raw.adjoint() * raw;
    }
    effect_sum += gram;
    out.effect_raw.push_back(std::move(raw));
    out.effect_gram.push_back(std::move(gram));
  }
  std::tie(out.effect_scale, out.effect_top) = top_eigen(effect_sum);
  if (!(out.effect_scale > 0.0)) {
    throw DegeneracyError("POVM blocks are all zero");
  }
  for (const auto& gram : out.effect_gram) {
    out.effects.push_back(gram / out.effect_scale);
  }

  ComplexMatrix kraus_sum = ComplexMatrix::Zero(d, d);
  for (int a = 0; a < kNumOutcomes; ++a) {
    for (int k = 0; k < layout.kraus_per_outcome; ++k) {
      ComplexMatrix c = read_matrix(p, layout.kraus_offset(a, k), d);
      kraus_sum += c.adjoint() * c;
      out.kraus_raw[static_cast<size_t>(a)].push_back(std::move(c));
    }
  }
  std::tie(out.kraus_scale, out.kraus_top) = top_eigen(kraus_sum);
  if (!(out.kraus_scale > 0.0)) {
    throw DegeneracyError("instrument blocks are all zero");
  }
  const double inv_sqrt = 1.0 / std::sqrt(out.kraus_scale);
  for (int a = 0; a < kNumOutcomes; ++a) {
    for (const auto& c : out.kraus_raw[static_cast<size_t>(a)]) {
      out.kraus[static_cast<size_t>(a)].push_back(c * inv_sqrt);
    }
  }
  return out;
}

// Forward/backward pass over the virtual-state chain
//   p = f_{a_L}^T M_{a_{L-1}} ... M_{a_1} pi,
// with pi_i = <0|E_i|0>, [M_a]_{ji} = Tr(I_a(sigma_i) E_j), f_a(i) = Tr(I_a(sigma_i)).
double chain_objective(const Decoded& dec, const Sequence& seq, int d, std::span<double> gradient,
                       const ParamLayout* layout) {
  const int m = static_cast<int>(dec.sigma.size());
  const int len = seq.length();

  // I_a(sigma_i) for both outcomes.
  std::array<std::vector<ComplexMatrix>, kNumOutcomes> image;
  std::array<RealMatrix, kNumOutcomes> transfer;
  std::array<RealVector, kNumOutcomes> final_weight;
  for (int a = 0; a < kNumOutcomes; ++a) {
    const auto ua = static_cast<size_t>(a);
    transfer[ua] = RealMatrix(m, m);
    final_weight[ua] = RealVector(m);
    for (int i = 0; i < m; ++i) {
      ComplexMatrix out = ComplexMatrix::Zero(d, d);
      for (const auto& k : dec.kraus[ua]) {
        out.noalias() += k * dec.sigma[static_cast<size_t>(i)] * k.adjoint();
      }
      final_weight[ua](i) = out.trace().real();
      for (int j = 0; j < m; ++j) {
        transfer[ua](j, i) = trace_product(out, dec.effects[static_cast<size_t>(j)]);
      }
      image[ua].push_back(std::move(out));
    }
  }
  RealVector pi(m);
  for (int i = 0; i < m; ++i) {
    pi(i) = dec.effects[static_cast<size_t>(i)](0, 0).real();
  }

  std::vector<RealVector> weights{pi};
  for (int t = 0; t + 1 < len; ++t) {
    weights.push_back(transfer[seq[t]] * weights.back());
  }
  const int last = seq[len - 1];
  const double value = final_weight[static_cast<size_t>(last)].dot(weights.back());
  if (gradient.empty()) {
    return value;
  }

  // Backward through the chain.
  std::array<RealMatrix, kNumOutcomes> g_transfer{RealMatrix::Zero(m, m), RealMatrix::Zero(m, m)};
  std::array<RealVector, kNumOutcomes> g_final{RealVector::Zero(m), RealVector::Zero(m)};
  g_final[static_cast<size_t>(last)] = weights.back();
  RealVector back = final_weight[static_cast<size_t>(last)];
  for (int t = len - 2; t >= 0; --t) {
    const auto ua = static_cast<size_t>(seq[t]);
    g_transfer[ua].noalias() += back * weights[static_cast<size_t>(t)].transpose();
    back = transfer[ua].transpose() * back;
  }
  const RealVector& g_pi = back;

  // Hermitian sensitivities H with dp = Tr(H dX) for sigma_i and E_j, and
  // complex sensitivities G with dp = Re Tr(G^dagger dK) for the Kraus operators.
  std::vector<ComplexMatrix> h_sigma(static_cast<size_t>(m), ComplexMatrix::Zero(d, d));
  std::vector<ComplexMatrix> h_effect(static_cast<size_t>(m), ComplexMatrix::Zero(d, d));
  Outcomes g_kraus;
  for (int i = 0; i < m; ++i) {
    h_effect[static_cast<size_t>(i)](0, 0) += g_pi(i);
  }
  for (int a = 0; a < kNumOutcomes; ++a) {
    const auto ua = static_cast<size_t>(a);
    for (const auto& k : dec.kraus[ua]) {
      g_kraus[ua].push_back(ComplexMatrix::Zero(d, d));
      (void)k;
    }
    const bool used = g_transfer[ua].cwiseAbs().maxCoeff() > 0.0 || g_final[ua].cwiseAbs().maxCoeff() > 0.0;
    if (!used) {
      continue;
    }
    for (int i = 0; i < m; ++i) {
      const auto ui = static_cast<size_t>(i);
      // sum_j G(j,i) E_j + g_f(i) 1 acts as the effective observable after I_a.
      ComplexMatrix observable = g_final[ua](i) * ComplexMatrix::Identity(d, d);
      for (int j = 0; j < m; ++j) {
        const double g = g_transfer[ua](j, i);
        if (g != 0.0) {
          observable += g * dec.effects[static_cast<size_t>(j)];
          h_effect[static_cast<size_t>(j)] += g * image[ua][ui];
        }
      }
      for (size_t k = 0; k < dec.kraus[ua].size(); ++k) {
        const ComplexMatrix& kr = dec.kraus[ua][k];
        h_sigma[ui].noalias() += kr.adjoint() * observable * kr;
        g_kraus[ua][k].noalias() += 2.0 * observable * kr * dec.sigma[ui];
      }
    }
  }

  std::fill(gradient.begin(), gradient.end(), 0.0);

  // sigma_i = gram_i / norm_i
  for (int i = 0; i < m; ++i) {
    const auto ui = static_cast<size_t>(i);
    const ComplexMatrix& h = h_sigma[ui];
    const ComplexMatrix& raw = dec.state_raw[ui];
    const double norm = dec.state_norm[ui];
    const double expect = trace_product(h, dec.sigma[ui]);  // Tr(H gram) / norm
    const size_t off = layout->state_offset(i);
    if (layout->diagonal_states) {
      for (int k = 0; k < d; ++k) {
        const double ak = raw(k, 0).real();
        gradient[off + static_cast<size_t>(k)] += 2.0 * h(k, k).real() * ak / norm - 2.0 * expect * ak / norm;
      }
    } else if (layout->mode == ParamMode::kRank1) {
      add_complex(gradient, off, ComplexVector((2.0 / norm) * (h * raw.col(0)) - (2.0 * expect / norm) * raw.col(0)));
    } else {
      add_complex(gradient, off, ComplexMatrix((2.0 / norm) * (raw * h) - (2.0 * expect / norm) * raw));
    }
  }

  // E_i = gram_i / lambda, lambda = top eigenvalue of sum_i gram_i.
  {
    const double lambda = dec.effect_scale;
    double coupling = 0.0;
    for (int i = 0; i < m; ++i) {
      coupling += trace_product(h_effect[static_cast<size_t>(i)], dec.effect_gram[static_cast<size_t>(i)]);
    }
    coupling /= lambda * lambda;
    const ComplexMatrix top = projector(dec.effect_top);
    for (int i = 0; i < m; ++i) {
      const auto ui = static_cast<size_t>(i);
      const ComplexMatrix h = h_effect[ui] / lambda - coupling * top;
      const ComplexMatrix& raw = dec.effect_raw[ui];
      const size_t off = layout->effect_offset(i);
      if (layout->mode == ParamMode::kRank1) {
        add_complex(gradient, off, ComplexVector(2.0 * (h * raw.col(0))));
      } else {
        add_complex(gradient, off, ComplexMatrix(2.0 * (raw * h)));
      }
    }
  }

  // K = C / sqrt(mu), mu = top eigenvalue of sum C^dagger C.
  {
    const double mu = dec.kraus_scale;
    const double inv_sqrt = 1.0 / std::sqrt(mu);
    double coupling = 0.0;
    for (int a = 0; a < kNumOutcomes; ++a) {
      const auto ua = static_cast<size_t>(a);
      for (size_t k = 0; k < dec.kraus_raw[ua].size(); ++k) {
        coupling += (g_kraus[ua][k].adjoint() * dec.kraus_raw[ua][k]).trace().real();
      }
    }
    coupling /= 2.0 * mu * std::sqrt(mu);
    const ComplexMatrix top = projector(dec.kraus_top);
    for (int a = 0; a < kNumOutcomes; ++a) {
      const auto ua = static_cast<size_t>(a);
      for (size_t k = 0; k < dec.kraus_raw[ua].size(); ++k) {
        const ComplexMatrix g = inv_sqrt * g_kraus[ua][k] - 2.0 * coupling * (dec.kraus_raw[ua][k] * top);
        add_complex(gradient, layout->kraus_offset(a, static_cast<int>(k)), g);
      }
    }
  }
  return value;
}

// ---------------------------------------------------------------------------
// Classical parametrization.

struct ClassicalDecoded {
  RealVector pi;
  std::array<RealMatrix, kNumOutcomes> t;
};

ClassicalDecoded decode_classical_raw(std::span<const double> p, int d) {
  const auto need = static_cast<size_t>(d + 2 * d * d);
  if (p.size() != need) {
    throw StructuralError("classical parameter vector needs " + std::to_string(need) + " entries");
  }
  ClassicalDecoded out;
  out.pi = RealVector(d);
  double norm = 0.0;
  for (int i = 0; i < d; ++i) {
    out.pi(i) = p[static_cast<size_t>(i)] * p[static_cast<size_t>(i)];
    norm += out.pi(i);
  }
  if (!(norm > 0.0)) {
    throw DegeneracyError("initial distribution block has zero norm");
  }
  out.pi /= norm;
  out.t = {RealMatrix(d, d), RealMatrix(d, d)};
  for (int i = 0; i < d; ++i) {
    const size_t off = static_cast<size_t>(d + 2 * d * i);
    double col = 0.0;
    for (size_t k = 0; k < static_cast<size_t>(2 * d); ++k) {
      col += p[off + k] * p[off + k];
    }
    if (!(col > 0.0)) {
      throw DegeneracyError("transition column " + std::to_string(i) + " has zero norm");
    }
    for (int a = 0; a < kNumOutcomes; ++a) {
      for (int j = 0; j < d; ++j) {
        const double x = p[off + static_cast<size_t>(a * d + j)];
        out.t[static_cast<size_t>(a)](j, i) = x * x / col;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Adam ascent shared by the quantum and classical searches.

using ValueAndGradient = std::function<double(std::span<const double>, std::span<double>)>;

struct AscentResult {
  TrialRecord record;
  std::vector<double> best_params;
};

AscentResult adam_ascent(const ValueAndGradient& f, std::vector<double> x, const AdamConfig& cfg) {
  const size_t n = x.size();
  std::vector<double> grad(n, 0.0), first(n, 0.0), second(n, 0.0);
  AscentResult result;
  result.record.best_objective = -std::numeric_limits<double>::infinity();
  std::vector<double> objective_log;
  objective_log.reserve(static_cast<size_t>(cfg.iterations) + 1);
  const int stride = std::max(1, cfg.iterations / std::max(1, cfg.trace_points));
  double b1_power = 1.0, b2_power = 1.0;

  auto record = [&](double value) {
    objective_log.push_back(value);
    if (value > result.record.best_objective) {
      result.record.best_objective = value;
      result.best_params = x;
    }
  };

  for (int t = 0; t < cfg.iterations; ++t) {
    double value = 0.0;
    try {
      value = f(x, grad);
    } catch (const DegeneracyError&) {
      result.record.degenerate = true;
      break;
    }
    if (!std::isfinite(value)) {
      result.record.degenerate = true;
      break;
    }
    record(value);
    if (t % stride == 0) {
      result.record.best_trace.push_back(result.record.best_objective);
    }
    b1_power *= cfg.beta1;
    b2_power *= cfg.beta2;
    const double lr = cfg.learning_rate(t);
    for (size_t j = 0; j < n; ++j) {
      first[j] = cfg.beta1 * first[j] + (1.0 - cfg.beta1) * grad[j];
      second[j] = cfg.beta2 * second[j] + (1.0 - cfg.beta2) * grad[j] * grad[j];
      const double m_hat = first[j] / (1.0 - b1_power);
      const double v_hat = second[j] / (1.0 - b2_power);
      x[j] += lr * m_hat / (std::sqrt(v_hat) + cfg.epsilon);
    }
  }
  if (!result.record.degenerate) {
    try {
      record(f(x, grad));
    } catch (const DegeneracyError&) {
      result.record.degenerate = true;
    }
  }
  result.record.best_trace.push_back(result.record.best_objective);
  result.record.final_objective = objective_log.empty() ? 0.0 : objective_log.back();
  for (size_t t = 0; t < objective_log.size(); ++t) {
    if (objective_log[t] >= result.record.best_objective - 1e-9) {
      result.record.iterations_to_plateau = static_cast<int>(t);
      break;
    }
  }
  return result;
}

std::mt19937_64 trial_rng(std::uint64_t seed, int trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial)};
  return std::mt19937_64(seq);
}

// Runs `trials` independent jobs on a small worker pool; results are indexed
// by trial so the outcome is independent of scheduling.
std::vector<AscentResult> run_trials(const AdamConfig& cfg, const std::function<AscentResult(int)>& job) {
  std::vector<AscentResult> results(static_cast<size_t>(std::max(0, cfg.trials)));
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (int t = next++; t < cfg.trials; t = next++) {
      try {
        results[static_cast<size_t>(t)] = job(t);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) {
          failure = std::current_exception();
        }
      }
    }
  };
  const int threads = std::min(resolve_threads(cfg), std::max(1, cfg.trials));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < threads; ++i) {
      pool.emplace_back(worker);
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
  return results;
}

size_t best_trial(const std::vector<AscentResult>& results) {
  size_t best = 0;
  for (size_t t = 1; t < results.size(); ++t) {
    if (results[t].record.best_objective > results[best].record.best_objective) {
      best = t;
    }
  }
  return best;
}

}  // namespace

std::string to_string(ParamMode mode) { return mode == ParamMode::kRank1 ? "rank1" : "full"; }

ParamMode parse_param_mode(const std::string& text) {
  if (text == "rank1") {
    return ParamMode::kRank1;
  }
  if (text == "full") {
    return ParamMode::kFull;
  }
  throw std::invalid_argument("unknown parameter mode '" + text + "' (expected rank1 or full)");
}

size_t ParamLayout::state_block() const {
  if (diagonal_states) {
    return static_cast<size_t>(dim);
  }
  return mode == ParamMode::kRank1 ? 2 * static_cast<size_t>(dim) : 2 * static_cast<size_t>(dim * dim);
}

size_t ParamLayout::effect_block() const {
  return mode == ParamMode::kRank1 ? 2 * static_cast<size_t>(dim) : 2 * static_cast<size_t>(dim * dim);
}

size_t ParamLayout::state_offset(int i) const { return static_cast<size_t>(i) * state_block(); }

size_t ParamLayout::effect_offset(int i) const {
  return static_cast<size_t>(branches) * state_block() + static_cast<size_t>(i) * effect_block();
}

size_t ParamLayout::kraus_offset(int outcome, int k) const {
  return static_cast<size_t>(branches) * (state_block() + effect_block()) +
         static_cast<size_t>(outcome * kraus_per_outcome + k) * kraus_block();
}

size_t ParamLayout::size() const { return kraus_offset(kNumOutcomes, 0); }

QuantumParams QuantumParams::zeros(const ParamLayout& layout) {
  if (layout.dim < 1 || layout.branches < 1 || layout.kraus_per_outcome < 1) {
    throw std::invalid_argument("parameter layout needs d >= 1, m >= 1 and at least one Kraus operator per outcome");
  }
  return QuantumParams{layout, std::vector<double>(layout.size(), 0.0)};
}

void QuantumParams::set_state_vector(int i, const ComplexVector& a) { write_complex(values, layout.state_offset(i), a); }

void QuantumParams::set_state_diagonal(int i, const RealVector& a) {
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    values[layout.state_offset(i) + static_cast<size_t>(k)] = a(k);
  }
}

void QuantumParams::set_effect_vector(int i, const ComplexVector& b) {
  write_complex(values, layout.effect_offset(i), b);
}

void QuantumParams::set_state_matrix(int i, const ComplexMatrix& a) { write_complex(values, layout.state_offset(i), a); }

void QuantumParams::set_effect_matrix(int i, const ComplexMatrix& b) {
  write_complex(values, layout.effect_offset(i), b);
}

void QuantumParams::set_kraus(int outcome, int k, const ComplexMatrix& c) {
  write_complex(values, layout.kraus_offset(outcome, k), c);
}

QuantumModel decode_quantum(std::span<const double> params, const ParamLayout& layout) {
  Decoded dec = decode(params, layout);
  return QuantumModel(basis_projector(layout.dim, 0), EBChannel(std::move(dec.effects), std::move(dec.sigma)),
                      Instrument(layout.dim, std::move(dec.kraus)));
}

double quantum_objective(std::span<const double> params, const Sequence& seq, const ParamLayout& layout) {
  return chain_objective(decode(params, layout), seq, layout.dim, {}, &layout);
}

double quantum_objective_gradient(std::span<const double> params, const Sequence& seq, const ParamLayout& layout,
                                  std::span<double> gradient) {
  if (gradient.size() != params.size()) {
    throw StructuralError("gradient buffer size does not match parameter count");
  }
  return chain_objective(decode(params, layout), seq, layout.dim, gradient, &layout);
}

std::vector<double> finite_difference_gradient(const std::function<double(std::span<const double>)>& f,
                                               std::span<const double> x, double rel_step) {
  if (!(rel_step > 0.0)) {
    throw std::invalid_argument("finite-difference step must be positive");
  }
  std::vector<double> point(x.begin(), x.end());
  std::vector<double> grad(x.size());
  for (size_t j = 0; j < x.size(); ++j) {
    const double h = rel_step * std::max(1.0, std::abs(x[j]));
    point[j] = x[j] + h;
    const double up = f(point);
    point[j] = x[j] - h;
    const double down = f(point);
    point[j] = x[j];
    grad[j] = (up - down) / (2.0 * h);
  }
  return grad;
}

std::vector<double> quantum_gradient_fd(std::span<const double> params, const Sequence& seq,
                                        const ParamLayout& layout, double rel_step) {
  return finite_difference_gradient(
      [&](std::span<const double> p) { return quantum_objective(p, seq, layout); }, params, rel_step);
}

double AdamConfig::decay() const { return std::pow(lr_end / lr_start, 1.0 / iterations); }

double AdamConfig::learning_rate(int t) const {
  return lr_start * std::pow(lr_end / lr_start, static_cast<double>(t) / iterations);
}

int resolve_threads(const AdamConfig& config) {
  if (config.threads > 0) {
    return config.threads;
  }
  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("TEMPORAL_ADVANTAGE_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) {
      threads = std::min(threads, cap);
    }
  }
  return threads;
}

QuantumOptimum adam_maximize(const AdamConfig& config, const Sequence& seq, const ParamLayout& layout) {
  if (config.trials < 1 || config.iterations < 1) {
    throw std::invalid_argument("optimizer needs at least one trial and one iteration");
  }
  auto job = [&](int trial) {
    auto rng = trial_rng(config.seed, trial);
    QuantumParams start = QuantumParams::random(layout, rng);
    ValueAndGradient f;
    if (config.gradient == GradientMethod::kAnalytic) {
      f = [&](std::span<const double> x, std::span<double> g) {
        return quantum_objective_gradient(x, seq, layout, g);
      };
    } else {
      f = [&](std::span<const double> x, std::span<double> g) {
        const auto fd = quantum_gradient_fd(x, seq, layout, config.fd_step);
        std::copy(fd.begin(), fd.end(), g.begin());
        return quantum_objective(x, seq, layout);
      };
    }
    AscentResult r = adam_ascent(f, std::move(start.values), config);
    r.record.trial = trial;
    return r;
  };
  std::vector<AscentResult> results = run_trials(config, job);
  const size_t best = best_trial(results);
  if (results[best].best_params.empty()) {
    throw DegeneracyError("every optimizer trial degenerated");
  }
  QuantumModel model = decode_quantum(results[best].best_params, layout);
  ValidationReport validation = validate_quantum(model, 1e-6);
  std::vector<TrialRecord> trials;
  for (auto& r : results) {
    trials.push_back(std::move(r.record));
  }
  return QuantumOptimum{std::move(model), trials[best].best_objective, std::move(results[best].best_params),
                        std::move(trials), std::move(validation)};
}

ClassicalModel decode_classical(std::span<const double> params, int dim) {
  ClassicalDecoded dec = decode_classical_raw(params, dim);
  return ClassicalModel(std::move(dec.pi), std::move(dec.t[0]), std::move(dec.t[1]));
}

double classical_objective_gradient(std::span<const double> params, const Sequence& seq, int dim,
                                    std::span<double> gradient) {
  const ClassicalDecoded dec = decode_classical_raw(params, dim);
  const int d = dim;
  const int len = seq.length();
  std::vector<RealVector> weights{dec.pi};
  for (int t = 0; t < len; ++t) {
    weights.push_back(dec.t[seq[t]] * weights.back());
  }
  const double value = weights.back().sum();
  if (gradient.empty()) {
    return value;
  }
  std::array<RealMatrix, kNumOutcomes> g_t{RealMatrix::Zero(d, d), RealMatrix::Zero(d, d)};
  RealVector back = RealVector::Ones(d);
  for (int t = len - 1; t >= 0; --t) {
    const auto ua = static_cast<size_t>(seq[t]);
    g_t[ua].noalias() += back * weights[static_cast<size_t>(t)].transpose();
    back = dec.t[ua].transpose() * back;
  }
  // y = x^2 / |x|^2  =>  dp/dx_k = 2 x_k (g_k - <g, y>) / |x|^2
  auto backprop_square_norm = [&](size_t off, size_t count, auto entry_grad) {
    double norm = 0.0, expect = 0.0;
    for (size_t k = 0; k < count; ++k) {
      norm += params[off + k] * params[off + k];
    }
    for (size_t k = 0; k < count; ++k) {
      expect += entry_grad(k) * params[off + k] * params[off + k] / norm;
    }
    for (size_t k = 0; k < count; ++k) {
      gradient[off + k] = 2.0 * params[off + k] * (entry_grad(k) - expect) / norm;
    }
  };
  backprop_square_norm(0, static_cast<size_t>(d), [&](size_t k) { return back(static_cast<Eigen::Index>(k)); });
  for (int i = 0; i < d; ++i) {
    backprop_square_norm(static_cast<size_t>(d + 2 * d * i), static_cast<size_t>(2 * d), [&](size_t k) {
      const int a = static_cast<int>(k) / d;
      const int j = static_cast<int>(k) % d;
      return g_t[static_cast<size_t>(a)](j, i);
    });
  }
  return value;
}

ClassicalOptimum classical_maximize(const AdamConfig& config, const Sequence& seq, int dim) {
  if (config.trials < 1 || config.iterations < 1) {
    throw std::invalid_argument("optimizer needs at least one trial and one iteration");
  }
  if (dim < 1) {
    throw std::invalid_argument("classical model needs d >= 1");
  }
  const auto n = static_cast<size_t>(dim + 2 * dim * dim);
  auto job = [&](int trial) {
    auto rng = trial_rng(config.seed, trial);
    std::normal_distribution<double> normal;
    std::vector<double> start(n);
    for (auto& v : start) {
      v = normal(rng);
    }
    ValueAndGradient f;
    if (config.gradient == GradientMethod::kAnalytic) {
      f = [&](std::span<const double> x, std::span<double> g) { return classical_objective_gradient(x, seq, dim, g); };
    } else {
      f = [&](std::span<const double> x, std::span<double> g) {
        auto value = [&](std::span<const double> p) { return classical_objective_gradient(p, seq, dim, {}); };
        const auto fd = finite_difference_gradient(value, x, config.fd_step);
        std::copy(fd.begin(), fd.end(), g.begin());
        return value(x);
      };
    }
    AscentResult r = adam_ascent(f, std::move(start), config);
    r.record.trial = trial;
    return r;
  };
  std::vector<AscentResult> results = run_trials(config, job);
  const size_t best = best_trial(results);
  if (results[best].best_params.empty()) {
    throw DegeneracyError("every optimizer trial degenerated");
  }
  ClassicalModel model = decode_classical(results[best].best_params, dim);
  std::vector<TrialRecord> trials;
  for (auto& r : results) {
    trials.push_back(std::move(r.record));
  }
  return ClassicalOptimum{std::move(model), trials[best].best_objective, std::move(trials)};
}

}  // namespace tadv
