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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "tadv/appendix_models.h"
#include "tadv/classicality.h"
#include "tadv/constructions.h"
#include "tadv/optimize.h"
#include "tadv/sequence_prob.h"
#include "tadv/validation.h"
#include "test_util.h"

using namespace tadv;
using namespace tadv::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[violated: " << what << "] ";
    }
  }
};

std::vector<Sequence> all_sequences(int length) {
  std::vector<Sequence> out;
  for (int bits = 0; bits < (1 << length); ++bits) {
    std::vector<int> s;
    for (int t = length - 1; t >= 0; --t) {
      s.push_back((bits >> t) & 1);
    }
    out.emplace_back(s);
  }
  return out;
}

void c1_classical_exact(Outcome& o) {
  const double expected[] = {8.0 / 27.0, 0.31640625, 0.32768};
  for (int len = 3; len <= 5; ++len) {
    const double p = classical_sequence_prob(one_way_classical(len), Sequence::one_tick(len));
    const double rel = std::abs(p - expected[len - 3]) / expected[len - 3];
    o.require(rel <= 1e-15, "L=" + std::to_string(len));
    o.detail << "L=" << len << " p=" << format_probability(p) << " rel=" << rel << "; ";
  }
}

void c2_effective_identity(Outcome& o) {
  Rng rng(20260001);
  double worst = 0.0;
  int models = 0;
  for (int d = 1; d <= 4; ++d) {
    for (int m = 1; m <= 6; ++m) {
      for (int rep = 0; rep < 5; ++rep) {
        const QuantumModel q = random_quantum(d, m, rng);
        o.require(validate_quantum(q).ok(), "fixture validity");
        const ClassicalModel c = effective_classical_model(q);
        for (int len = 1; len <= 5; ++len) {
          for (const auto& s : all_sequences(len)) {
            worst = std::max(worst, std::abs(quantum_sequence_prob(q, s) - classical_sequence_prob(c, s)));
          }
        }
        ++models;
      }
    }
  }
  o.require(models >= 100, "model count");
  o.require(worst <= 1e-10, "max deviation");
  o.detail << models << " models, max |pQ - pC| = " << worst;
}

void c3_etf_violation(Outcome& o) {
  const double p3 = quantum_sequence_prob(etf_quantum_model(3), Sequence::one_tick(4));
  const double p4 = quantum_sequence_prob(etf_quantum_model(4), Sequence::one_tick(5));
  o.require(p3 - 0.31640625 >= 1e-3, "d=3 margin");
  o.require(p4 - 0.32768 >= 1e-3, "d=4 margin");
  // Independent simulation oracle.
  o.require(std::abs(p3 - 0.337962962962962) <= 1e-12, "d=3 oracle");
  o.require(std::abs(p4 - 0.3523823302469143) <= 1e-12, "d=4 oracle");
  o.detail << "d=3 p=" << format_probability(p3) << " margin=" << p3 - 0.31640625 << "; d=4 p=" << format_probability(p4)
           << " margin=" << p4 - 0.32768;
}

void c4_appendix(Outcome& o) {
  const struct {
    const char* label;
    double expected;
    double ratio;
  } rows[] = {{"L4", 0.359523, 1.13}, {"L5", 0.368445, 1.12}};
  for (const auto& row : rows) {
    try {
      const BuiltinReport r = verify_builtin(row.label);
      o.require(std::abs(r.probability - row.expected) <= 2e-3, std::string(row.label) + " probability");
      o.require(r.residuals.max_residual() <= 1e-3, std::string(row.label) + " residuals");
      o.require(r.ratio >= row.ratio - 1e-2, std::string(row.label) + " ratio");
      o.detail << row.label << " p=" << format_probability(r.probability) << " ratio=" << r.ratio
               << " max residual=" << r.residuals.max_residual() << "; ";
    } catch (const std::exception& e) {
      o.require(false, std::string(row.label) + ": " + e.what());
    }
  }
}

void c5_optimizer(Outcome& o) {
  const struct {
    const char* profile;
    int iterations;
    int trials;
    double l4;
    double l5;
  } profiles[] = {{"ci", 5000, 16, 0.34, 0.35}, {"full", 50000, 64, 0.3590, 0.3680}};
  for (const auto& prof : profiles) {
    AdamConfig cfg;
    cfg.iterations = prof.iterations;
    cfg.trials = prof.trials;
    cfg.seed = 0;
    const QuantumOptimum q4 = adam_maximize(cfg, Sequence::one_tick(4), ParamLayout{3, 4});
    const QuantumOptimum q5 = adam_maximize(cfg, Sequence::one_tick(5), ParamLayout{4, 5});
    o.require(q4.probability >= prof.l4, std::string(prof.profile) + " L=4");
    o.require(q5.probability >= prof.l5, std::string(prof.profile) + " L=5");
    o.require(q4.validation.ok() && q5.validation.ok(), std::string(prof.profile) + " revalidation");
    o.detail << prof.profile << " (" << prof.iterations << " it x " << prof.trials << "): L=4 "
             << format_probability(q4.probability) << ", L=5 " << format_probability(q5.probability) << "; ";
  }
}

void c6_negative_control(Outcome& o) {
  AdamConfig cfg;
  cfg.trials = 64;
  cfg.seed = 0;
  const QuantumOptimum best = adam_maximize(cfg, Sequence::one_tick(3), ParamLayout{2, 3});
  double worst = 0.0;
  for (const auto& t : best.trials) {
    worst = std::max(worst, t.best_objective);
  }
  o.require(best.trials.size() >= 64, "trial count");
  o.require(worst <= 0.296296 + 1e-3, "no violation");
  o.detail << best.trials.size() << " trials, max p = " << format_probability(worst);
}

void c7_classical_optimizer(Outcome& o) {
  AdamConfig cfg;
  cfg.iterations = 10000;
  cfg.trials = 16;
  for (int len = 3; len <= 5; ++len) {
    const double exact = std::pow(1.0 - 1.0 / len, len);
    const double p = classical_maximize(cfg, Sequence::one_tick(len), len - 1).probability;
    o.require(std::abs(p - exact) <= 1e-6, "L=" + std::to_string(len));
    o.detail << "L=" << len << " |p - exact| = " << std::abs(p - exact) << "; ";
  }
}

void c8_diagonal(Outcome& o) {
  Rng rng(20260008);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const ClassicalModel c = random_classical(1 + trial % 4, rng);
    const QuantumModel q = diagonal_quantum_from_classical(c);
    for (int len = 1; len <= 5; ++len) {
      const Distribution dq = full_distribution(q, len);
      const Distribution dc = full_distribution(c, len);
      for (size_t i = 0; i < dq.entries.size(); ++i) {
        worst = std::max(worst, std::abs(dq.entries[i].second - dc.entries[i].second));
      }
    }
  }
  o.require(worst <= 1e-12, "max deviation");
  o.detail << "100 models, max deviation = " << worst;
}

void c9_reductions(Outcome& o) {
  Rng rng(20260009);
  double worst_states = 0.0;
  double worst_povm = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto probes = probe_states(3, 20, static_cast<std::uint64_t>(trial));
    try {
      const EBChannel a = random_commuting_states_channel(3, 5, rng);
      const ReductionResult ra = reduce_commuting_states(a, 1e-9);
      o.require(ra.reduced.branches() == 3, "states branch count");
      worst_states = std::max(worst_states, max_action_difference(a, ra.reduced, probes));
      const EBChannel b = random_commuting_povm_channel(3, 5, rng);
      const ReductionResult rb = reduce_commuting_povm(b, 1e-9);
      o.require(rb.reduced.branches() == 3, "povm branch count");
      worst_povm = std::max(worst_povm, max_action_difference(b, rb.reduced, probes));
    } catch (const std::exception& e) {
      o.require(false, e.what());
    }
  }
  o.require(worst_states <= 1e-9, "commuting-states action");
  o.require(worst_povm <= 1e-9, "commuting-povm action");
  o.detail << "commuting-states max diff = " << worst_states << ", commuting-povm max diff = " << worst_povm;
}

void c10_etf_frame(Outcome& o) {
  double overlap = 0.0;
  double frame = 0.0;
  for (int d = 3; d <= 8; ++d) {
    const ETFFrame f = etf_states(d);
    ComplexMatrix s = ComplexMatrix::Zero(d, d);
    for (int n = 0; n < d; ++n) {
      for (int k = 0; k < d; ++k) {
        if (k != n) {
          overlap = std::max(overlap, std::abs(f.vectors[n].dot(f.vectors[k]) + 1.0 / (d - 1)));
        }
      }
      s += projector(f.vectors[n]);
    }
    const ComplexMatrix perp = ComplexMatrix::Identity(d, d) - basis_projector(d, 0);
    frame = std::max(frame, operator_norm(s - (double(d) / (d - 1)) * perp));
  }
  o.require(overlap <= 1e-12, "overlaps");
  o.require(frame <= 1e-12, "tight frame");
  o.detail << "max overlap error = " << overlap << ", max frame error = " << frame;
}

void c11_complexity(Outcome& o) {
  for (int len = 2; len <= 7; ++len) {
    const auto dc = deterministic_complexity(Sequence::one_tick(len), kMaxComplexityStates);
    o.require(dc == len, "L=" + std::to_string(len));
    o.detail << "dc(" << Sequence::one_tick(len).str() << ")=" << (dc ? std::to_string(*dc) : "none") << " ";
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"classical exact values", c1_classical_exact},
      {"effective-model identity", c2_effective_identity},
      {"ETF violation", c3_etf_violation},
      {"builtin model verification", c4_appendix},
      {"optimizer reproduction", c5_optimizer},
      {"negative control d=2", c6_negative_control},
      {"classical optimizer sanity", c7_classical_optimizer},
      {"diagonal equivalence", c8_diagonal},
      {"commuting reductions", c9_reductions},
      {"ETF frame invariants", c10_etf_frame},
      {"deterministic complexity", c11_complexity},
  };
  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += o.pass ? 0 : 1;
    std::printf("%s criterion %zu (%s) [%.2fs]: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                secs, o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
