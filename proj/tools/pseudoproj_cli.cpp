// Copyright 2026 The pseudoproj developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "pseudoproj/events.hpp"
#include "pseudoproj/expand.hpp"
#include "pseudoproj/json_io.hpp"
#include "pseudoproj/nonlocality.hpp"
#include "pseudoproj/pseudo.hpp"
#include "pseudoproj/qcore.hpp"
#include "pseudoproj/scan.hpp"
#include "pseudoproj/witness.hpp"

namespace pp = pseudoproj;
using pp::Json;

namespace {

struct CommonFlags {
  std::string state = "ghz3";
  double p = 1.0;
  int restarts = 64;
  std::uint64_t seed = 0;
  int threads = 0;
  std::string out;
};

struct LoadedState {
  pp::DensityOperator rho;
  bool ghz_family;
  int n_qubits;
};

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read file '" + path + "'");
  Json j;
  in >> j;
  return j;
}

LoadedState load_state(const std::string& spec, double p) {
  std::optional<pp::DensityOperator> base;
  bool ghz_family = false;
  if (spec == "ghz3") {
    base = pp::ghz(3);
    ghz_family = true;
  } else if (spec == "w3") {
    base = pp::w3();
  } else if (spec.rfind("ghzN:", 0) == 0) {
    base = pp::ghz(std::stoi(spec.substr(5)));
    ghz_family = true;
  } else if (spec.rfind("file:", 0) == 0) {
    base = pp::density_from_json(read_json_file(spec.substr(5)));
  } else {
    throw std::invalid_argument("unknown state '" + spec +
                                "' (expected ghz3, ghzN:<n>, w3 or file:<path>)");
  }
  pp::DensityOperator rho = p < 1.0 ? pp::add_white_noise(*base, p) : *base;
  return {std::move(rho), ghz_family, base->n_qubits()};
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::invalid_argument("cannot write file '" + out_path + "'");
  out << text;
}

void emit_json(const Json& j, const std::string& out_path) { emit(j.dump(2) + "\n", out_path); }

void add_common(CLI::App* cmd, CommonFlags& flags, bool with_state = true) {
  if (with_state) {
    cmd->add_option("--state", flags.state, "ghz3 | ghzN:<n> | w3 | file:<path>");
    cmd->add_option("--p", flags.p, "white-noise purity parameter in [0, 1]")
        ->check(CLI::Range(0.0, 1.0));
  }
  cmd->add_option("--restarts", flags.restarts, "optimizer restarts")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", flags.seed, "seed for every randomized path");
  cmd->add_option("--threads", flags.threads, "worker thread cap (0 = hardware)");
  cmd->add_option("--out", flags.out, "write the report to a file instead of stdout");
}

pp::DirectionTable direction_table_from_json(const Json& j) {
  pp::DirectionTable table;
  for (const auto& [key, value] : j.items()) {
    table.emplace(key, pp::direction_from_json(value));
  }
  return table;
}

std::vector<pp::ObservablePair> default_pairs(int n) {
  return std::vector<pp::ObservablePair>(
      std::size_t(n), pp::ObservablePair{pp::DirectionSpec::x(), pp::DirectionSpec::y()});
}

// --- eval --------------------------------------------------------------------

struct EvalArgs {
  CommonFlags common;
  std::string witness;
  std::string poly;
  int n = 0;
  double alpha = -1.0;
  bool alpha_max = false;
  std::string dirs;
  bool optimize = false;
  bool unsafe_alpha = false;
};

int run_eval(const EvalArgs& args) {
  if (args.witness.empty() == args.poly.empty()) {
    throw std::invalid_argument("eval: pass exactly one of --witness or --poly");
  }
  const LoadedState state = load_state(args.common.state, args.common.p);
  pp::ScanOptions opts;
  opts.restarts = args.common.restarts;
  opts.seed = args.common.seed;
  opts.threads = args.common.threads;

  Json report;
  if (!args.witness.empty()) {
    const pp::WitnessKind kind = pp::witness_kind_from_string(args.witness);
    const int n = kind == pp::WitnessKind::EN ? state.n_qubits : 3;
    const pp::WitnessSpec spec = pp::make_witness_spec(kind, n);
    std::optional<double> fixed_alpha;
    if (args.alpha > 0.0) fixed_alpha = args.alpha;
    if (args.alpha_max) fixed_alpha = spec.alpha_max;

    pp::WitnessValue wv = [&] {
      if (args.optimize) {
        return pp::optimize_witness(spec, state.rho, opts, fixed_alpha, args.unsafe_alpha);
      }
      if (!args.dirs.empty()) {
        pp::DirectionConfig cfg = pp::direction_config_from_json(read_json_file(args.dirs));
        return pp::witness_value(spec, cfg, state.rho, args.unsafe_alpha);
      }
      const auto triads = pp::canonical_triads(n);
      pp::DirectionConfig cfg =
          pp::make_direction_config(fixed_alpha.value_or(spec.alpha_max), triads);
      return pp::witness_value(spec, cfg, state.rho, args.unsafe_alpha);
    }();

    report = {{"kind", pp::to_string(kind)},
              {"N", n},
              {"alpha", wv.config.alpha},
              {"value", wv.value},
              {"bound", 0.0},
              {"violated", wv.detected},
              {"margin", -wv.value},
              {"outside_alpha_range", wv.outside_alpha_range},
              {"directions", pp::direction_config_to_json(wv.config)}};
  } else {
    pp::PolynomialKind kind;
    if (args.poly == "svetlichny") {
      kind = pp::PolynomialKind::Svetlichny;
    } else if (args.poly == "mermin") {
      kind = pp::PolynomialKind::Mermin;
    } else if (args.poly == "dda") {
      kind = pp::PolynomialKind::DDA;
    } else {
      throw std::invalid_argument("eval: unknown polynomial '" + args.poly + "'");
    }
    const int n = args.n > 0 ? args.n : state.n_qubits;
    if ((Eigen::Index(1) << n) != state.rho.dim()) {
      throw std::invalid_argument("eval: party count does not match the state");
    }
    std::vector<pp::ObservablePair> obs;
    double value;
    if (args.optimize) {
      pp::PolyOptimum best = pp::optimize_polynomial(kind, n, state.rho, opts);
      obs = std::move(best.obs);
      value = best.value;
    } else {
      obs = args.dirs.empty() ? default_pairs(n)
                              : pp::observable_pairs_from_json(read_json_file(args.dirs));
      const pp::CorrelatorPolynomial poly = kind == pp::PolynomialKind::Svetlichny
                                                ? pp::svetlichny_polynomial(n)
                                            : kind == pp::PolynomialKind::Mermin
                                                ? pp::mermin_polynomial(n)
                                                : pp::dda_polynomial(n);
      value = pp::expectation(poly.to_operator(obs), state.rho);
    }
    const double bound = pp::classical_bound(kind, n);
    report = {{"kind", pp::to_string(kind)},
              {"N", n},
              {"value", value},
              {"bound", bound},
              {"violated", std::abs(value) > bound},
              {"violated_one_sided", value < -bound},
              {"margin", std::abs(value) - bound},
              {"directions", pp::observable_pairs_to_json(obs)}};
  }
  emit_json(report, args.common.out);
  return 0;
}

// --- lhv ---------------------------------------------------------------------

struct LhvArgs {
  std::string expr;
  int n = 3;
  int threads = 0;
  std::string out;
};

int run_lhv(const LhvArgs& args) {
  pp::LhvExpression expr;
  if (args.expr == "svetlichny") {
    expr = pp::LhvExpression::from_polynomial(pp::svetlichny_polynomial(args.n));
  } else if (args.expr == "mermin") {
    expr = pp::LhvExpression::from_polynomial(pp::mermin_polynomial(args.n));
  } else if (args.expr == "dda") {
    expr = pp::LhvExpression::from_polynomial(pp::dda_polynomial(args.n));
  } else {
    expr = pp::parse_lhv_expression(args.expr);
  }
  const pp::LhvMaxResult result = pp::lhv_max(expr, args.threads);
  emit_json(Json{{"expr", args.expr},
                 {"max", result.max_value},
                 {"max_abs", result.max_abs},
                 {"n_symbols", result.n_symbols}},
            args.out);
  return 0;
}

// --- witness (operator dump) --------------------------------------------------

struct WitnessArgs {
  std::string witness;
  int n = 3;
  double alpha = -1.0;
  bool alpha_max = false;
  std::string dirs;
  bool unsafe_alpha = false;
  std::string out;
};

int run_witness(const WitnessArgs& args) {
  const pp::WitnessKind kind = pp::witness_kind_from_string(args.witness);
  const pp::WitnessSpec spec = pp::make_witness_spec(kind, kind == pp::WitnessKind::EN ? args.n : 3);
  pp::DirectionConfig cfg = [&] {
    if (!args.dirs.empty()) return pp::direction_config_from_json(read_json_file(args.dirs));
    const double alpha = args.alpha > 0.0 && !args.alpha_max ? args.alpha : spec.alpha_max;
    return pp::make_direction_config(alpha, pp::canonical_triads(spec.n_qubits));
  }();
  const pp::ComplexOperator op = pp::witness_operator(spec, cfg, args.unsafe_alpha);
  emit_json(Json{{"kind", pp::to_string(kind)},
                 {"N", spec.n_qubits},
                 {"alpha", cfg.alpha},
                 {"matrix", pp::matrix_to_json(op.matrix())}},
            args.out);
  return 0;
}

// --- scan ---------------------------------------------------------------------

struct ScanArgs {
  CommonFlags common;
  std::string inequality;
  std::string p_grid;
  double p_tol = 1e-4;
  std::string format = "json";
};

int run_scan(const ScanArgs& args) {
  const pp::Inequality ineq = pp::inequality_from_string(args.inequality);
  const LoadedState state = load_state(args.common.state, 1.0);
  pp::NoisyFamily family{state.rho};
  pp::ScanOptions opts;
  opts.p_tol = args.p_tol;
  opts.restarts = args.common.restarts;
  opts.seed = args.common.seed;
  opts.threads = args.common.threads;
  if (state.ghz_family) {
    opts.reference_p_star = pp::ghz_reference_threshold(ineq, state.n_qubits);
  }

  if (args.p_grid.empty()) {
    const pp::ScanResult result = pp::threshold(ineq, family, opts);
    const auto fmt = args.format == "csv" ? pp::ReportFormat::Csv : pp::ReportFormat::Json;
    emit(pp::emit_report({&result, 1}, fmt), args.common.out);
    return 0;
  }

  std::vector<double> grid;
  std::stringstream ss(args.p_grid);
  std::string item;
  while (std::getline(ss, item, ',')) grid.push_back(std::stod(item));
  const auto curve = pp::scan_curve(ineq, family, grid, opts);
  if (args.format == "csv") {
    std::ostringstream csv;
    csv << "p,value,margin\n";
    csv.precision(10);
    for (const auto& pt : curve) csv << pt.p << "," << pt.value << "," << pt.margin << "\n";
    emit(csv.str(), args.common.out);
  } else {
    Json points = Json::array();
    for (const auto& pt : curve) {
      points.push_back({{"p", pt.p}, {"value", pt.value}, {"margin", pt.margin}});
    }
    emit_json(Json{{"inequality", pp::to_string(ineq)}, {"points", points}}, args.common.out);
  }
  return 0;
}

// --- expand --------------------------------------------------------------------

struct ExpandArgs {
  std::string in;
  double theta = 1.5707963267948966;
  std::string out;
};

int run_expand(const ExpandArgs& args) {
  const pp::ComplexOperator O(pp::matrix_from_json(read_json_file(args.in)));
  const pp::Expansion expansion = pp::expand_operator(O, args.theta);
  emit_json(pp::expansion_to_json(expansion, O), args.out);
  return 0;
}

// --- pps -----------------------------------------------------------------------

struct PpsArgs {
  CommonFlags common;
  std::string obs;
  std::string event;
  std::string dirs;
  double eps = 1e-12;
};

int run_pps(const PpsArgs& args) {
  const LoadedState state = load_state(args.common.state, args.common.p);
  if (args.obs.empty() == args.event.empty()) {
    throw std::invalid_argument("pps: pass exactly one of --obs or --event");
  }
  if (!args.event.empty()) {
    if (args.dirs.empty()) {
      throw std::invalid_argument("pps: --event needs a --dirs symbol table");
    }
    const pp::DirectionTable table = direction_table_from_json(read_json_file(args.dirs));
    const pp::Event event = pp::parse_event(args.event, table);
    const double value = pp::event_pseudoprobability(event, state.rho);
    emit_json(Json{{"event", args.event}, {"value", value}, {"negative", value < -args.eps}},
              args.common.out);
    return 0;
  }

  const Json obs_json = read_json_file(args.obs);
  std::vector<std::vector<pp::DirectionSpec>> observables;
  for (const auto& per_sub : obs_json) {
    std::vector<pp::DirectionSpec> dirs;
    for (const auto& d : per_sub) dirs.push_back(pp::direction_from_json(d));
    observables.push_back(std::move(dirs));
  }
  const pp::PseudoProbabilityScheme pps = pp::build_pps(observables, state.rho);
  const auto negative = pp::detect_negativity(pps, args.eps);
  Json neg = Json::array();
  for (const auto& [outcome, value] : negative) {
    neg.push_back({{"outcome", outcome}, {"value", value}});
  }
  emit_json(Json{{"pps", pp::pps_to_json(pps)},
                 {"negative_entries", neg},
                 {"classical", negative.empty()},
                 {"eps", args.eps}},
            args.common.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pseudoprojection toolkit: nonlocality inequalities, entanglement witnesses,"
               " pseudoprobability schemes and operator expansions"};
  app.require_subcommand(1);

  EvalArgs eval_args;
  auto* eval_cmd = app.add_subcommand("eval", "evaluate a witness or polynomial on a state");
  eval_cmd->add_option("--witness", eval_args.witness, "E3_1|E3_2|E3_3|E3_4|EN|B3_1|B3_2");
  eval_cmd->add_option("--poly", eval_args.poly, "svetlichny|mermin|dda");
  eval_cmd->add_option("--n", eval_args.n, "party count for --poly (default: from state)");
  eval_cmd->add_option("--alpha", eval_args.alpha, "doublet angle in radians");
  eval_cmd->add_flag("--alpha-max", eval_args.alpha_max, "use the witness's largest safe angle");
  eval_cmd->add_option("--dirs", eval_args.dirs, "JSON direction config / observable pairs");
  eval_cmd->add_flag("--optimize", eval_args.optimize, "optimize directions for violation");
  eval_cmd->add_flag("--unsafe-alpha", eval_args.unsafe_alpha,
                     "allow alpha beyond the separability-safe range (flagged in output)");
  add_common(eval_cmd, eval_args.common);

  LhvArgs lhv_args;
  auto* lhv_cmd = app.add_subcommand("lhv", "enumerated deterministic-strategy bound");
  lhv_cmd->add_option("--expr", lhv_args.expr, "svetlichny|mermin|dda or expression text")
      ->required();
  lhv_cmd->add_option("--n", lhv_args.n, "party count for the named polynomials");
  lhv_cmd->add_option("--threads", lhv_args.threads, "worker thread cap");
  lhv_cmd->add_option("--out", lhv_args.out, "output file");

  WitnessArgs witness_args;
  auto* witness_cmd = app.add_subcommand("witness", "dump a witness operator matrix");
  witness_cmd->add_option("--witness", witness_args.witness, "witness kind")->required();
  witness_cmd->add_option("--n", witness_args.n, "qubit count (EN only)");
  witness_cmd->add_option("--alpha", witness_args.alpha, "doublet angle in radians");
  witness_cmd->add_flag("--alpha-max", witness_args.alpha_max, "use the largest safe angle");
  witness_cmd->add_option("--dirs", witness_args.dirs, "JSON direction config");
  witness_cmd->add_flag("--unsafe-alpha", witness_args.unsafe_alpha,
                        "allow alpha beyond the separability-safe range");
  witness_cmd->add_option("--out", witness_args.out, "output file");

  ScanArgs scan_args;
  auto* scan_cmd = app.add_subcommand("scan", "noise thresholds and violation curves");
  scan_cmd->add_option("--inequality", scan_args.inequality,
                       "svetlichny|mermin|E3_1|E3_2|E3_3|E3_4|EN|B3_1|B3_2")
      ->required();
  scan_cmd->add_option("--p-grid", scan_args.p_grid, "comma-separated grid (curve mode)");
  scan_cmd->add_option("--p-tol", scan_args.p_tol, "bisection tolerance");
  scan_cmd->add_option("--format", scan_args.format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  add_common(scan_cmd, scan_args.common);

  ExpandArgs expand_args;
  auto* expand_cmd = app.add_subcommand("expand", "pseudoprojection expansion of an operator");
  expand_cmd->add_option("--in", expand_args.in, "JSON dense Hermitian matrix")->required();
  expand_cmd->add_option("--theta", expand_args.theta, "doublet angle in (0, pi)");
  expand_cmd->add_option("--out", expand_args.out, "output file");

  PpsArgs pps_args;
  auto* pps_cmd = app.add_subcommand("pps", "pseudoprobability scheme and negativity report");
  pps_cmd->add_option("--obs", pps_args.obs, "JSON per-subsystem direction lists");
  pps_cmd->add_option("--event", pps_args.event, "event text, e.g. E(~A1=A1'=A2; A3)");
  pps_cmd->add_option("--dirs", pps_args.dirs, "JSON symbol table for --event");
  pps_cmd->add_option("--eps", pps_args.eps, "negativity tolerance");
  add_common(pps_cmd, pps_args.common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (eval_cmd->parsed()) return run_eval(eval_args);
    if (lhv_cmd->parsed()) return run_lhv(lhv_args);
    if (witness_cmd->parsed()) return run_witness(witness_args);
    if (scan_cmd->parsed()) return run_scan(scan_args);
    if (expand_cmd->parsed()) return run_expand(expand_args);
    if (pps_cmd->parsed()) return run_pps(pps_args);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
