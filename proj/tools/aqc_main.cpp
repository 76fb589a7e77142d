// Copyright 2026 The aqc developers
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

#include "aqc/runner.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace aqc;

// "A:B[:STEP]" ranges or comma lists for sweep lengths.
std::vector<int> parse_lengths(const std::string& text) {
  std::vector<int> out;
  if (text.find(':') != std::string::npos) {
    int lo = 0, hi = 0, step = 1;
    char c1 = 0, c2 = 0;
    std::istringstream ss(text);
    ss >> lo >> c1 >> hi;
    if (ss >> c2 >> step) {
      if (c2 != ':') throw CLI::ValidationError("--length", "bad range '" + text + "'");
    }
    if (!ss.eof() || c1 != ':' || step <= 0 || hi < lo) {
      throw CLI::ValidationError("--length", "bad range '" + text + "'");
    }
    for (int v = lo; v <= hi; v += step) out.push_back(v);
    return out;
  }
  std::istringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, ',')) out.push_back(std::stoi(piece));
  if (out.empty()) throw CLI::ValidationError("--length", "no lengths in '" + text + "'");
  return out;
}

std::vector<double> parse_lambda_list(const std::string& text) {
  std::vector<double> out;
  std::istringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, ',')) out.push_back(std::stod(piece));
  if (out.empty()) {
    throw CLI::ValidationError("--lambda-list", "no values in '" + text + "'");
  }
  return out;
}

struct CommonFlags {
  std::string target = "haar";
  int n = 0;
  std::uint64_t seed = 0;
  std::string structure = "sequ";
  std::string length = "-1";
  std::string connectivity = "full";
  std::string optimizer = "nesterov";
  double tol = 1e-6;
  long max_iters = 50000;
  double step = 0.0;
  int threads = 0;
  bool permute = false;
  bool dump_config = false;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool with_target) {
  if (with_target) {
    cmd->add_option("--target", f.target,
                    "Target unitary: file:PATH|haar|toffoli3|toffoli4|fredkin|adder");
  }
  cmd->add_option("--n", f.n, "Qubit count (haar targets and bound)");
  cmd->add_option("--seed", f.seed, "Master seed");
  cmd->add_option("--structure", f.structure, "Structure family: sequ|spin|cart")
      ->check(CLI::IsMember({"sequ", "spin", "cart"}));
  cmd->add_option("--length", f.length,
                  "Unit count (default: the theoretical lower bound); sweep accepts "
                  "A:B[:STEP] or comma lists");
  cmd->add_option("--connectivity", f.connectivity,
                  "Connectivity: full|star|line|file:PATH");
  cmd->add_option("--optimizer", f.optimizer, "Angle optimizer: gd|nesterov")
      ->check(CLI::IsMember({"gd", "nesterov"}));
  cmd->add_option("--tol", f.tol, "Gradient infinity-norm stopping tolerance");
  cmd->add_option("--max-iters", f.max_iters, "Iteration budget per start");
  cmd->add_option("--step", f.step, "Step size (0 = auto from the smoothness bound)");
  cmd->add_option("--threads", f.threads, "Worker threads (0 = all cores)")
      ->envname("AQC_THREADS");
  cmd->add_flag("--permute", f.permute, "Randomly permute the unit order per restart");
  cmd->add_flag("--dump-config", f.dump_config, "Print the effective config and exit");
}

OptimizerConfig make_config(const CommonFlags& f) {
  OptimizerConfig cfg;
  cfg.method = method_from_name(f.optimizer);
  cfg.step = f.step;
  cfg.tolerance = f.tol;
  cfg.max_iters = f.max_iters;
  cfg.seed = f.seed;
  return cfg;
}

int single_length(const CommonFlags& f) {
  const std::vector<int> lens = parse_lengths(f.length);
  if (lens.size() != 1) {
    throw CLI::ValidationError("--length", "this command takes a single length");
  }
  return lens[0];
}

void dump_config(const CommonFlags& f, const std::vector<std::pair<std::string, std::string>>& extra) {
  std::cout << "target=" << f.target << "\n"
            << "n=" << f.n << "\n"
            << "seed=" << f.seed << "\n"
            << "structure=" << f.structure << "\n"
            << "length=" << f.length << "\n"
            << "connectivity=" << f.connectivity << "\n"
            << "optimizer=" << f.optimizer << "\n"
            << "tol=" << format_double(f.tol) << "\n"
            << "max_iters=" << f.max_iters << "\n"
            << "step=" << (f.step == 0.0 ? std::string("auto") : format_double(f.step)) << "\n"
            << "threads=" << f.threads << "\n"
            << "permute=" << (f.permute ? "true" : "false") << "\n";
  for (const auto& [k, v] : extra) std::cout << k << "=" << v << "\n";
}

void write_or_print(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open for writing: " + path);
  out << content;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"aqc: approximate quantum compiler for the CNOT + rotation gate set"};
  app.require_subcommand(1);
  app.set_config("--config");

  CommonFlags cf;
  std::string out_path, report_path;
  int restarts = 1, samples = 20;
  double lambda = 0.0, min_fidelity = 0.0;
  std::string lambda_list, warm_start, synthesis = "on";
  std::string synth_in, synth_out;

  CLI::App* compile = app.add_subcommand("compile", "Optimize angles for a fixed structure");
  add_common(compile, cf, true);
  compile->add_option("--restarts", restarts, "Independent seeded starts");
  compile->add_option("--out", out_path, "Best circuit output file");
  compile->add_option("--report", report_path, "JSON run report file ('-' = stdout)");

  CLI::App* sweep = app.add_subcommand("sweep", "Error statistics over a length range");
  add_common(sweep, cf, false);
  sweep->add_option("--samples", samples, "Haar targets per length");
  sweep->add_option("--restarts", restarts, "Starts per target");
  sweep->add_option("--out", out_path, "CSV output file ('-' = stdout)");

  CLI::App* compress = app.add_subcommand("compress", "Group-LASSO compression pipeline");
  add_common(compress, cf, true);
  compress->add_option("--lambda", lambda, "Single group-LASSO weight");
  compress->add_option("--lambda-list", lambda_list, "Comma list of weights");
  compress->add_option("--warm-start", warm_start,
                       "Circuit file (native or OpenQASM 2) to start from");
  compress->add_option("--synthesis", synthesis, "GF(2) synthesis pass: on|off")
      ->check(CLI::IsMember({"on", "off"}));
  compress->add_option("--min-fidelity", min_fidelity,
                       "Fidelity floor for the emitted best circuit");
  compress->add_option("--out", out_path, "Best compressed circuit file");
  compress->add_option("--report", report_path, "JSON-lines report ('-' = stdout)");

  CLI::App* bound = app.add_subcommand("bound", "Print tlb(n) and qsd_count(n)");
  bound->add_option("--n", cf.n, "Qubit count")->required();

  CLI::App* synth = app.add_subcommand("synth", "Rewrite the CNOT runs of a circuit file");
  synth->add_option("input", synth_in, "Circuit file")->required();
  synth->add_option("--out", synth_out, "Output file ('-' = stdout)");
  synth->add_option("--connectivity", cf.connectivity, "Connectivity for identity rules");
  std::string synth_synthesis = "on";
  synth->add_option("--synthesis", synth_synthesis, "GF(2) synthesis pass: on|off")
      ->check(CLI::IsMember({"on", "off"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 1;
  }

  try {
    if (compile->parsed()) {
      if (cf.dump_config) {
        dump_config(cf, {{"restarts", std::to_string(restarts)},
                         {"out", out_path},
                         {"report", report_path}});
        return 0;
      }
      CompileOptions opts;
      opts.target = TargetSpec::parse(cf.target, cf.n, cf.seed);
      opts.structure = {cf.structure, single_length(cf), cf.permute};
      opts.connectivity = cf.connectivity;
      opts.opt = make_config(cf);
      opts.restarts = restarts;
      opts.threads = cf.threads;
      opts.out_path = out_path;
      opts.report_path = report_path;
      const CompileOutcome outcome = run_compile(opts);
      if (!report_path.empty()) write_or_print(report_path, outcome.report_json);
      std::cerr << "best cost " << format_double(outcome.best.final_cost) << ", fidelity "
                << format_double(outcome.metric.frobenius_fidelity) << ", hst "
                << format_double(outcome.metric.hst_cost) << ", "
                << (outcome.best.converged ? "converged" : "budget exhausted") << "\n";
      return outcome.exit_code;
    }

    if (sweep->parsed()) {
      if (cf.dump_config) {
        dump_config(cf, {{"samples", std::to_string(samples)},
                         {"restarts", std::to_string(restarts)},
                         {"out", out_path}});
        return 0;
      }
      SweepOptions opts;
      opts.n = cf.n > 0 ? cf.n : 3;
      opts.lengths = parse_lengths(cf.length == "-1" ? "0:" + std::to_string(tlb(opts.n))
                                                     : cf.length);
      opts.structure = {cf.structure, 0, cf.permute};
      opts.connectivity = cf.connectivity;
      opts.opt = make_config(cf);
      opts.samples = samples;
      opts.restarts = restarts;
      opts.threads = cf.threads;
      const SweepOutcome outcome = run_sweep(opts);
      write_or_print(out_path, outcome.csv);
      return 0;
    }

    if (compress->parsed()) {
      if (cf.dump_config) {
        dump_config(cf, {{"lambda", format_double(lambda)},
                         {"lambda-list", lambda_list},
                         {"warm-start", warm_start},
                         {"synthesis", synthesis},
                         {"min-fidelity", format_double(min_fidelity)},
                         {"out", out_path},
                         {"report", report_path}});
        return 0;
      }
      CompressOptions opts;
      if (warm_start.empty() || !cf.target.empty()) {
        opts.target = TargetSpec::parse(cf.target, cf.n, cf.seed);
      }
      if (!warm_start.empty()) {
        opts.warm_start_path = warm_start;
        // With a warm start the circuit's own unitary is the default target.
        if (compress->count("--target") == 0) opts.target.reset();
      }
      opts.structure = {cf.structure, cf.length == "-1" ? -1 : single_length(cf), cf.permute};
      opts.connectivity = cf.connectivity;
      opts.lambdas = lambda_list.empty() ? std::vector<double>{lambda}
                                         : parse_lambda_list(lambda_list);
      opts.opt = make_config(cf);
      opts.opt.method = Method::Prox;
      opts.synthesis = synthesis == "on";
      opts.min_fidelity = min_fidelity;
      opts.threads = cf.threads;
      opts.out_path = out_path;
      const CompressOutcome outcome = run_compress(opts);
      if (!report_path.empty()) write_or_print(report_path, outcome.report_jsonl);
      std::cerr << outcome.report_jsonl;
      return outcome.met_floor || min_fidelity == 0.0 ? 0 : 2;
    }

    if (bound->parsed()) {
      std::cout << "tlb(" << cf.n << ") = " << tlb(cf.n) << "\n";
      if (cf.n >= 2) std::cout << "qsd_count(" << cf.n << ") = " << qsd_count(cf.n) << "\n";
      return 0;
    }

    if (synth->parsed()) {
      const Circuit input = read_circuit_file(synth_in);
      const ConnectivityGraph g = resolve_connectivity(cf.connectivity, input.qubits);
      const Circuit rewritten = synth_circuit(input, g, synth_synthesis == "on");
      write_or_print(synth_out, serialize(rewritten));
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
