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

#include "tadv/cli.h"

#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "tadv/appendix_models.h"
#include "tadv/classicality.h"
#include "tadv/constructions.h"
#include "tadv/errors.h"
#include "tadv/json_io.h"
#include "tadv/optimize.h"
#include "tadv/sequence_prob.h"
#include "tadv/validation.h"

namespace tadv {
namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Failed physicality checks; maps to kExitValidation.
class ValidationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string model;
  std::string sequence;
  std::string out;
  std::string log;
  std::string config;
  std::string format = "csv";
  std::string kind;
  std::string route = "auto";
  std::string label = "all";
  std::string mode = "rank1";
  std::string kraus_zero = "first";
  int d = 0;
  int m = 0;
  int length = 0;
  int lmin = 3;
  int lmax = 7;
  int trials = 64;
  int iters = 50000;
  int kraus = 1;
  std::uint64_t seed = 0;
  double tol = -1.0;
  double lr_start = 0.07;
  double lr_end = 1e-12;
  bool no_channel = false;
  bool optimize = false;
  bool classical = false;
};

// Writes to --out when given, otherwise to the command's stdout stream.
void emit(const Options& opt, std::ostream& out, const std::string& text) {
  if (opt.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(opt.out);
  if (!file) {
    throw UsageError("cannot write " + opt.out);
  }
  file << text;
}

ModelFile load(const Options& opt) {
  if (opt.model.empty()) {
    throw UsageError("--model is required");
  }
  if (!std::filesystem::exists(opt.model)) {
    throw UsageError("model file not found: " + opt.model);
  }
  return read_model_file(opt.model);
}

double tolerance(const Options& opt, const ModelFile& file) {
  if (opt.tol > 0.0) {
    return opt.tol;
  }
  return file.tol.value_or(kDefaultTol);
}

std::string report_text(const ValidationReport& report) {
  std::ostringstream s;
  for (const auto& c : report.checks) {
    s << (c.ok() ? "ok   " : "FAIL ") << c.name << " residual=" << format_probability(c.residual) << "\n";
  }
  s << (report.ok() ? "valid" : "invalid") << " (max residual " << format_probability(report.max_residual())
    << ")\n";
  return s.str();
}

json report_json(const ValidationReport& report) {
  json checks = json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name}, {"residual", c.residual}, {"tol", c.tol}, {"ok", c.ok()}});
  }
  return json{{"valid", report.ok()}, {"max_residual", report.max_residual()}, {"checks", checks}};
}

template <typename Model>
void require_valid(const ValidationReport& report) {
  if (!report.ok()) {
    throw ValidationFailure("model failed validation:\n" + report.summary());
  }
}

int cmd_validate(const Options& opt, std::ostream& out) {
  const ModelFile file = load(opt);
  const double tol = tolerance(opt, file);
  ValidationReport report;
  if (const auto* c = std::get_if<ClassicalModel>(&file.model)) {
    report = validate_classical(*c, tol);
  } else if (const auto* q = std::get_if<QuantumModel>(&file.model)) {
    report = validate_quantum(*q, tol);
  } else {
    report = validate_channel(std::get<EBChannel>(file.model), tol);
  }
  emit(opt, out, opt.format == "json" ? report_json(report).dump(2) + "\n" : report_text(report));
  return report.ok() ? kExitOk : kExitValidation;
}

int cmd_eval(const Options& opt, std::ostream& out) {
  const ModelFile file = load(opt);
  const bool with_channel = !opt.no_channel;
  if (std::holds_alternative<EBChannel>(file.model)) {
    throw UsageError("eval needs a classical or quantum model, not a bare channel");
  }
  if (opt.length > 0) {
    Distribution dist;
    if (const auto* c = std::get_if<ClassicalModel>(&file.model)) {
      dist = full_distribution(*c, opt.length);
    } else {
      dist = full_distribution(std::get<QuantumModel>(file.model), opt.length, with_channel);
    }
    std::ostringstream s;
    write_csv(dist, s);
    emit(opt, out, s.str());
    return kExitOk;
  }
  if (opt.sequence.empty()) {
    throw UsageError("eval needs --sequence or --L");
  }
  const Sequence seq = Sequence::parse(opt.sequence);
  double p = 0.0;
  if (const auto* c = std::get_if<ClassicalModel>(&file.model)) {
    p = classical_sequence_prob(*c, seq);
  } else {
    p = quantum_sequence_prob(std::get<QuantumModel>(file.model), seq, with_channel);
  }
  emit(opt, out, format_probability(p) + "\n");
  return kExitOk;
}

int cmd_effective(const Options& opt, std::ostream& out) {
  const ModelFile file = load(opt);
  const auto* q = std::get_if<QuantumModel>(&file.model);
  if (q == nullptr) {
    throw UsageError("effective needs a quantum model");
  }
  require_valid<QuantumModel>(validate_quantum(*q, tolerance(opt, file)));
  emit(opt, out, model_document(effective_classical_model(*q)).dump(2) + "\n");
  return kExitOk;
}

int cmd_construct(const Options& opt, std::ostream& out) {
  json doc;
  if (opt.kind == "one-way") {
    doc = model_document(one_way_classical(opt.length));
  } else if (opt.kind == "cyclic") {
    doc = model_document(cyclic_deterministic(opt.m));
  } else if (opt.kind == "etf") {
    if (opt.kraus_zero != "first" && opt.kraus_zero != "last") {
      throw UsageError("--kraus-zero must be first or last");
    }
    doc = model_document(etf_quantum_model(opt.d, opt.kraus_zero == "first" ? KrausZero::kFirst : KrausZero::kLast));
  } else if (opt.kind == "diagonal") {
    const ModelFile file = load(opt);
    const auto* c = std::get_if<ClassicalModel>(&file.model);
    if (c == nullptr) {
      throw UsageError("construct diagonal needs a classical --model");
    }
    require_valid<ClassicalModel>(validate_classical(*c, tolerance(opt, file)));
    doc = model_document(diagonal_quantum_from_classical(*c));
  } else {
    throw UsageError("unknown construction '" + opt.kind + "' (one-way, cyclic, etf, diagonal)");
  }
  emit(opt, out, doc.dump(2) + "\n");
  return kExitOk;
}

int cmd_reduce(const Options& opt, std::ostream& out, std::ostream& err) {
  const ModelFile file = load(opt);
  const double tol = tolerance(opt, file);
  std::optional<EBChannel> channel;
  if (const auto* q = std::get_if<QuantumModel>(&file.model)) {
    channel = q->channel();
  } else if (const auto* c = std::get_if<EBChannel>(&file.model)) {
    channel = *c;
  } else {
    throw UsageError("reduce needs a channel or quantum model");
  }
  require_valid<EBChannel>(validate_channel(*channel, tol));
  std::optional<ReductionResult> result;
  if (opt.route == "states") {
    result = reduce_commuting_states(*channel, tol);
  } else if (opt.route == "povm") {
    result = reduce_commuting_povm(*channel, tol);
  } else if (opt.route == "auto") {
    try {
      result = reduce_commuting_states(*channel, tol);
    } catch (const NotCommutingError&) {
      result = reduce_commuting_povm(*channel, tol);
    }
  } else {
    throw UsageError("--route must be auto, states or povm");
  }
  json doc = model_document(result->reduced, tol);
  doc["report"] = {{"route", to_string(result->route)},
                   {"original_branches", channel->branches()},
                   {"reduced_branches", result->reduced.branches()},
                   {"max_residual", result->max_residual},
                   {"basis", to_json(result->basis)}};
  emit(opt, out, doc.dump(2) + "\n");
  err << "reduced " << channel->branches() << " -> " << result->reduced.branches() << " branches via "
      << to_string(result->route) << ", max action residual " << result->max_residual << "\n";
  return kExitOk;
}

AdamConfig adam_config(const Options& opt) {
  AdamConfig cfg;
  cfg.iterations = opt.iters;
  cfg.trials = opt.trials;
  cfg.seed = opt.seed;
  cfg.lr_start = opt.lr_start;
  cfg.lr_end = opt.lr_end;
  return cfg;
}

std::string trial_log_csv(const std::vector<TrialRecord>& trials) {
  std::ostringstream s;
  s << "trial,final_objective,best_objective,iterations_to_plateau\n";
  for (const auto& t : trials) {
    s << t.trial << ',' << format_probability(t.final_objective) << ',' << format_probability(t.best_objective) << ','
      << t.iterations_to_plateau << '\n';
  }
  return s.str();
}

int cmd_optimize(Options opt, const CLI::App& sub, std::ostream& out, std::ostream& err) {
  if (!opt.config.empty()) {
    std::ifstream in(opt.config);
    if (!in) {
      throw UsageError("cannot open config " + opt.config);
    }
    json cfg;
    try {
      in >> cfg;
    } catch (const json::exception& e) {
      throw UsageError(std::string("malformed config: ") + e.what());
    }
    // Explicit flags take precedence over the file.
    auto take = [&](const char* key, const char* flag, auto& target) {
      if (cfg.contains(key) && sub.count(flag) == 0) {
        target = cfg.at(key).get<std::remove_reference_t<decltype(target)>>();
      }
    };
    take("sequence", "--sequence", opt.sequence);
    take("d", "--d", opt.d);
    take("m", "--m", opt.m);
    take("mode", "--mode", opt.mode);
    take("iterations", "--iters", opt.iters);
    take("lr_start", "--lr-start", opt.lr_start);
    take("lr_end", "--lr-end", opt.lr_end);
    take("trials", "--trials", opt.trials);
    take("seed", "--seed", opt.seed);
  }
  if (opt.sequence.empty() || opt.d < 1) {
    throw UsageError("optimize needs --sequence and --d");
  }
  const Sequence seq = Sequence::parse(opt.sequence);
  const AdamConfig cfg = adam_config(opt);
  if (opt.classical) {
    const ClassicalOptimum best = classical_maximize(cfg, seq, opt.d);
    json doc = model_document(best.model);
    doc["objective"] = best.probability;
    doc["sequence"] = seq.str();
    emit(opt, out, doc.dump(2) + "\n");
    if (!opt.log.empty()) {
      std::ofstream(opt.log) << trial_log_csv(best.trials);
    }
    err << "best classical probability " << format_probability(best.probability) << "\n";
    return kExitOk;
  }
  ParamLayout layout;
  layout.dim = opt.d;
  layout.branches = opt.m > 0 ? opt.m : opt.d + 1;
  layout.mode = parse_param_mode(opt.mode);
  layout.kraus_per_outcome = opt.kraus;
  const QuantumOptimum best = adam_maximize(cfg, seq, layout);
  json doc = model_document(best.model);
  doc["objective"] = best.probability;
  doc["sequence"] = seq.str();
  doc["validation"] = report_json(best.validation);
  emit(opt, out, doc.dump(2) + "\n");
  if (!opt.log.empty()) {
    std::ofstream(opt.log) << trial_log_csv(best.trials);
  }
  err << "best quantum probability " << format_probability(best.probability) << "\n";
  return kExitOk;
}

int cmd_table1(const Options& opt, std::ostream& out) {
  std::ostringstream s;
  s << "L,d,classical,quantum,ratio,quantum_source\n";
  for (int len = 3; len <= 5; ++len) {
    const int d = len - 1;
    const Sequence seq = Sequence::one_tick(len);
    const double classical = classical_sequence_prob(one_way_classical(len), seq);
    std::optional<double> quantum;
    std::string source = "none";
    if (opt.optimize) {
      ParamLayout layout{d, d + 1};
      quantum = adam_maximize(adam_config(opt), seq, layout).probability;
      source = "optimized";
    } else if (len >= 4) {
      quantum = verify_builtin("L" + std::to_string(len)).probability;
      source = "builtin";
    }
    s << len << ',' << d << ',' << format_probability(classical) << ','
      << (quantum ? format_probability(*quantum) : "") << ','
      << (quantum ? format_probability(*quantum / classical) : "") << ',' << source << '\n';
  }
  emit(opt, out, s.str());
  return kExitOk;
}

int cmd_fig3(const Options& opt, std::ostream& out) {
  if (opt.lmin < 3 || opt.lmax < opt.lmin || opt.lmax > kMaxQuantumEnumerationLength) {
    throw UsageError("fig3 needs 3 <= Lmin <= Lmax <= " + std::to_string(kMaxQuantumEnumerationLength));
  }
  std::ostringstream s;
  s << "L,d,classical,quantum_etf\n";
  for (int len = opt.lmin; len <= opt.lmax; ++len) {
    const Sequence seq = Sequence::one_tick(len);
    const double classical = classical_sequence_prob(one_way_classical(len), seq);
    const double quantum = quantum_sequence_prob(etf_quantum_model(len - 1), seq, true);
    s << len << ',' << len - 1 << ',' << format_probability(classical) << ',' << format_probability(quantum) << '\n';
  }
  emit(opt, out, s.str());
  return kExitOk;
}

int cmd_verify_appendix(const Options& opt, std::ostream& out) {
  std::vector<std::string> labels;
  if (opt.label == "all") {
    labels = builtin_labels();
  } else {
    labels = {opt.label};
  }
  const double tol = opt.tol > 0.0 ? opt.tol : kBuiltinResidualTol;
  json reports = json::array();
  std::ostringstream text;
  for (const auto& label : labels) {
    BuiltinModel builtin;
    try {
      builtin = load_builtin(label);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    const BuiltinReport r = verify_builtin(builtin, tol);
    reports.push_back({{"label", r.label},
                       {"probability", r.probability},
                       {"expected_probability", r.expected_probability},
                       {"classical_bound", r.classical_bound},
                       {"margin", r.margin},
                       {"ratio", r.ratio},
                       {"residuals", report_json(r.residuals)}});
    text << r.label << ": p = " << format_probability(r.probability) << " (printed " << r.expected_probability
         << "), classical bound " << r.classical_bound << ", margin " << r.margin << ", ratio " << r.ratio
         << ", max residual " << r.residuals.max_residual() << "\n";
  }
  if (opt.format == "json") {
    emit(opt, out, json{{"sha256", std::string(kAppendixDataSha256)}, {"models", reports}}.dump(2) + "\n");
  } else {
    text << "data sha256 " << kAppendixDataSha256 << "\n";
    emit(opt, out, text.str());
  }
  return kExitOk;
}

int cmd_dc(const Options& opt, std::ostream& out) {
  if (opt.sequence.empty()) {
    throw UsageError("dc needs --sequence");
  }
  const int max_states = opt.d > 0 ? opt.d : kMaxComplexityStates;
  const auto dc = deterministic_complexity(Sequence::parse(opt.sequence), max_states);
  emit(opt, out, (dc ? std::to_string(*dc) : "exceeds " + std::to_string(max_states)) + "\n");
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sequence-generation statistics of bounded-memory classical and quantum systems"};
  app.require_subcommand(1);
  Options opt;

  auto add_model = [&](CLI::App* sub) { sub->add_option("--model", opt.model, "Model JSON file"); };
  auto add_out = [&](CLI::App* sub) { sub->add_option("--out", opt.out, "Output path (default stdout)"); };
  auto add_tol = [&](CLI::App* sub) { sub->add_option("--tol", opt.tol, "Validation tolerance"); };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"csv", "json", "text"}));
  };
  auto add_search = [&](CLI::App* sub) {
    sub->add_option("--seed", opt.seed, "RNG seed");
    sub->add_option("--trials", opt.trials, "Random restarts")->check(CLI::PositiveNumber);
    sub->add_option("--iters", opt.iters, "Adam iterations per trial")->check(CLI::PositiveNumber);
  };

  auto* validate = app.add_subcommand("validate", "Check physicality constraints of a model file");
  add_model(validate);
  add_tol(validate);
  add_format(validate);
  add_out(validate);

  auto* eval = app.add_subcommand("eval", "Probability of a sequence, or the full distribution with --L");
  add_model(eval);
  eval->add_option("--sequence", opt.sequence, "Outcome string, e.g. 0001");
  eval->add_option("--L", opt.length, "Emit all 2^L probabilities as CSV");
  eval->add_flag("--no-channel", opt.no_channel, "Quantum models: omit the channel between measurements");
  add_out(eval);

  auto* effective = app.add_subcommand("effective", "Effective classical model of a quantum model");
  add_model(effective);
  add_tol(effective);
  add_out(effective);

  auto* construct = app.add_subcommand("construct", "Emit a constructed model as JSON");
  construct->add_option("kind", opt.kind, "one-way | cyclic | etf | diagonal")->required();
  construct->add_option("--L", opt.length, "Sequence length (one-way)");
  construct->add_option("--m", opt.m, "Number of states (cyclic)");
  construct->add_option("--d", opt.d, "Dimension (etf)");
  construct->add_option("--kraus-zero", opt.kraus_zero, "etf: zero of K0 on the first or last index");
  add_model(construct);
  add_tol(construct);
  add_out(construct);

  auto* reduce = app.add_subcommand("reduce", "Rewrite a commuting channel with d branches");
  add_model(reduce);
  add_tol(reduce);
  reduce->add_option("--route", opt.route, "auto | states | povm");
  add_out(reduce);

  auto* optimize = app.add_subcommand("optimize", "Maximize a sequence probability with Adam");
  optimize->add_option("--config", opt.config, "JSON config {sequence, d, m, mode, iterations, ...}");
  optimize->add_option("--sequence", opt.sequence, "Target sequence");
  optimize->add_option("--d", opt.d, "Dimension");
  optimize->add_option("--m", opt.m, "Channel branches (default d+1)");
  optimize->add_option("--mode", opt.mode, "rank1 | full");
  optimize->add_option("--kraus", opt.kraus, "Kraus operators per outcome")->check(CLI::PositiveNumber);
  optimize->add_option("--lr-start", opt.lr_start, "Initial learning rate");
  optimize->add_option("--lr-end", opt.lr_end, "Final learning rate");
  optimize->add_flag("--classical", opt.classical, "Optimize a d-state classical model instead");
  optimize->add_option("--log", opt.log, "Per-trial CSV log");
  add_search(optimize);
  add_out(optimize);

  auto* table1 = app.add_subcommand("table1", "Classical and quantum one-tick maxima for L = 3, 4, 5 as CSV");
  table1->add_flag("--optimize", opt.optimize, "Run fresh optimizations instead of using the builtin models");
  add_search(table1);
  add_out(table1);

  auto* fig3 = app.add_subcommand("fig3", "One-way vs ETF one-tick probabilities as CSV");
  fig3->add_option("--Lmin", opt.lmin, "Smallest L");
  fig3->add_option("--Lmax", opt.lmax, "Largest L");
  add_out(fig3);

  auto* verify = app.add_subcommand("verify-appendix", "Verify the builtin numerical models");
  verify->add_option("--label", opt.label, "all | L4 | L5");
  add_tol(verify);
  verify->add_option("--format", opt.format, "text | json")->check(CLI::IsMember({"text", "json", "csv"}));
  add_out(verify);

  auto* dc = app.add_subcommand("dc", "Deterministic complexity of a sequence");
  dc->add_option("--sequence", opt.sequence, "Outcome string")->required();
  dc->add_option("--d", opt.d, "Largest number of states to search");
  add_out(dc);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (validate->parsed()) {
      return cmd_validate(opt, out);
    }
    if (eval->parsed()) {
      return cmd_eval(opt, out);
    }
    if (effective->parsed()) {
      return cmd_effective(opt, out);
    }
    if (construct->parsed()) {
      return cmd_construct(opt, out);
    }
    if (reduce->parsed()) {
      return cmd_reduce(opt, out, err);
    }
    if (optimize->parsed()) {
      return cmd_optimize(opt, *optimize, out, err);
    }
    if (table1->parsed()) {
      return cmd_table1(opt, out);
    }
    if (fig3->parsed()) {
      return cmd_fig3(opt, out);
    }
    if (verify->parsed()) {
      if (opt.format == "csv") {
        opt.format = "text";
      }
      return cmd_verify_appendix(opt, out);
    }
    if (dc->parsed()) {
      return cmd_dc(opt, out);
    }
  } catch (const DataIntegrityError& e) {
    err << "data integrity error: " << e.what() << "\n";
    return kExitDataIntegrity;
  } catch (const ValidationFailure& e) {
    err << e.what();
    return kExitValidation;
  } catch (const NotCommutingError& e) {
    err << "not reducible: " << e.what() << "\n";
    return kExitValidation;
  } catch (const StructuralError& e) {
    err << "structural error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "invalid argument: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace tadv
