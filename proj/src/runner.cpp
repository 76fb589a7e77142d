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

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace aqc {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

int default_threads() {
  if (const char* env = std::getenv("AQC_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(int jobs, int threads, const std::function<void(int)>& body) {
  if (threads <= 0) threads = default_threads();
  threads = std::min(threads, jobs);
  if (threads <= 1) {
    for (int i = 0; i < jobs; ++i) body(i);
    return;
  }
  std::vector<std::thread> workers;
  std::exception_ptr error;
  std::mutex error_mutex;
  workers.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    workers.emplace_back([&, t]() {
      try {
        for (int i = t; i < jobs; i += threads) body(i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  if (error) std::rethrow_exception(error);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b,
                          std::uint64_t c) {
  return splitmix64(splitmix64(splitmix64(base ^ splitmix64(a)) ^ splitmix64(b)) ^
                    splitmix64(c));
}

ConnectivityGraph resolve_connectivity(const std::string& text, int qubits) {
  if (text.rfind("file:", 0) == 0) {
    ConnectivityGraph g = parse_connectivity_file(text.substr(5));
    if (g.qubits() != qubits) {
      fail("connectivity file has " + std::to_string(g.qubits()) + " qubits, expected " +
           std::to_string(qubits));
    }
    return g;
  }
  return ConnectivityGraph::named(text, qubits);
}

Structure build_structure(const StructureSpec& spec, int n, const ConnectivityGraph& g) {
  if (spec.name == "sequ") {
    const int len = spec.length >= 0 ? spec.length : static_cast<int>(tlb(n));
    return sequ(n, len, g);
  }
  if (spec.name == "spin") {
    const int len = spec.length >= 0 ? spec.length : static_cast<int>(tlb(n));
    Structure s = spin(n, len);
    if (!validate(s, g)) {
      fail("structure spin is not realizable on connectivity '" + g.name() + "'");
    }
    return s;
  }
  if (spec.name == "cart") {
    Structure s = cart(n);
    if (spec.length >= 0 && spec.length != s.length()) {
      fail("structure cart has fixed length " + std::to_string(s.length()) +
           "; --length cannot override it");
    }
    if (!validate(s, g)) {
      fail("structure cart is not realizable on connectivity '" + g.name() + "'");
    }
    return s;
  }
  fail("unknown structure: " + spec.name);
}

namespace {

RestartSummary summarize(const OptimizeResult& r, const Structure& s, const Matrix& u,
                         std::uint64_t seed) {
  RestartSummary out;
  out.seed = seed;
  out.cost = r.final_cost;
  const MetricReport m = metrics(assemble(s, r.theta), u);
  out.hst_cost = m.hst_cost;
  out.fidelity = m.frobenius_fidelity;
  out.grad_norm = r.grad_norm;
  out.iterations = r.iterations;
  out.converged = r.converged;
  return out;
}

// V_ct has determinant (-1)^L for n = 2 (the two-qubit CNOT has determinant
// -1), so a special-unitary target is reachable only up to the coset phase.
// Align the target into the image so exact compilation means cost zero.
Matrix align_target_to_image(Matrix u, int n, int length) {
  if (n == 2 && length % 2 == 1) {
    return Matrix(std::polar(1.0, std::numbers::pi / 4.0) * u);
  }
  return u;
}

nlohmann::json optimizer_json(const OptimizerConfig& cfg, int restarts) {
  nlohmann::json j;
  j["method"] = method_name(cfg.method);
  j["step"] = cfg.step == 0.0 ? nlohmann::json("auto") : nlohmann::json(cfg.step);
  j["tolerance"] = cfg.tolerance;
  j["max_iters"] = cfg.max_iters;
  j["seed"] = cfg.seed;
  j["restarts"] = restarts;
  return j;
}

}  // namespace

CompileOutcome run_compile(const CompileOptions& opts) {
  const auto t_start = std::chrono::steady_clock::now();
  if (opts.restarts < 1) fail("compile: restarts must be positive");
  if (opts.opt.method == Method::Prox) {
    fail("compile: prox is a compression method; use the compress command");
  }
  Matrix u = load(opts.target);
  const int n = qubits_for_dim(u.rows());
  const ConnectivityGraph g = resolve_connectivity(opts.connectivity, n);
  const Structure base = build_structure(opts.structure, n, g);
  u = align_target_to_image(std::move(u), n, base.length());

  struct Slot {
    OptimizeResult result;
    Structure structure{1, {}};
    RestartSummary summary;
  };
  std::vector<Slot> slots(opts.restarts);
  parallel_for(opts.restarts, opts.threads, [&](int r) {
    const std::uint64_t seed = opts.opt.seed + static_cast<std::uint64_t>(r);
    Structure s = opts.structure.permute ? permute_units(base, seed) : base;
    OptimizerConfig cfg = opts.opt;
    cfg.seed = seed;
    OptimizeResult res = cfg.method == Method::Gd ? gd(s, u, cfg) : nesterov(s, u, cfg);
    slots[r].summary = summarize(res, s, u, seed);
    slots[r].result = std::move(res);
    slots[r].structure = std::move(s);
  });

  // Deterministic reduction by (cost, seed).
  int best = 0;
  for (int r = 1; r < opts.restarts; ++r) {
    const auto& a = slots[r].summary;
    const auto& b = slots[best].summary;
    if (a.cost < b.cost || (a.cost == b.cost && a.seed < b.seed)) best = r;
  }

  const MetricReport best_metric =
      metrics(assemble(slots[best].structure, slots[best].result.theta), u);
  CompileOutcome out{slots[best].structure, std::move(slots[best].result),
                     slots[best].summary,  {},
                     best_metric,          0.0,
                     0,                    ""};
  out.restarts.reserve(opts.restarts);
  for (const auto& slot : slots) out.restarts.push_back(slot.summary);
  out.exit_code = out.best.converged ? 0 : 2;

  if (!opts.out_path.empty()) {
    write_circuit_file(opts.out_path, emit_circuit(out.structure, out.best.theta));
  }

  const auto t_end = std::chrono::steady_clock::now();
  out.wall_ms = std::chrono::duration<double, std::milli>(t_end - t_start).count();

  nlohmann::json j;
  j["target"] = opts.target.describe();
  j["structure"]["name"] = opts.structure.name;
  j["structure"]["length"] = out.structure.length();
  j["structure"]["permute"] = opts.structure.permute;
  j["connectivity"] = g.name();
  j["optimizer"] = optimizer_json(opts.opt, opts.restarts);
  j["final_cost"] = out.best.final_cost;
  j["hst_cost"] = out.metric.hst_cost;
  j["frobenius_fidelity"] = out.metric.frobenius_fidelity;
  j["grad_norm"] = out.best.grad_norm;
  j["iterations"] = out.best.iterations;
  j["converged"] = out.best.converged;
  j["best_restart_seed"] = out.best_summary.seed;
  j["circuit_path"] = opts.out_path;
  j["wall_ms"] = out.wall_ms;
  out.report_json = j.dump(2) + "\n";
  return out;
}

double median(std::vector<double> values) {
  if (values.empty()) fail("median of empty set");
  std::sort(values.begin(), values.end());
  const std::size_t m = values.size() / 2;
  return values.size() % 2 == 1 ? values[m] : 0.5 * (values[m - 1] + values[m]);
}

SweepOutcome run_sweep(const SweepOptions& opts) {
  if (opts.samples < 1 || opts.restarts < 1) fail("sweep: samples and restarts must be positive");
  if (opts.lengths.empty()) fail("sweep: no lengths given");
  const ConnectivityGraph g = resolve_connectivity(opts.connectivity, opts.n);

  // Shared Haar targets across lengths, so per-L statistics are paired.
  std::vector<Matrix> targets(opts.samples);
  for (int i = 0; i < opts.samples; ++i) {
    targets[i] = haar_random(opts.n, derive_seed(opts.opt.seed, 1, i));
  }

  SweepOutcome out;
  out.rows.resize(opts.lengths.size());
  const int jobs = static_cast<int>(opts.lengths.size()) * opts.samples;
  std::vector<double> costs(jobs), fids(jobs);
  parallel_for(jobs, opts.threads, [&](int job) {
    const int li = job / opts.samples;
    const int sample = job % opts.samples;
    const StructureSpec spec{opts.structure.name, opts.lengths[li],
                             opts.structure.permute};
    const Structure base = build_structure(spec, opts.n, g);
    const Matrix target = align_target_to_image(targets[sample], opts.n, base.length());
    double best_cost = 0.0, best_fid = 0.0;
    for (int r = 0; r < opts.restarts; ++r) {
      const std::uint64_t seed = derive_seed(opts.opt.seed, 2, job, r);
      Structure s = spec.permute ? permute_units(base, seed) : base;
      OptimizerConfig cfg = opts.opt;
      cfg.seed = seed;
      const OptimizeResult res =
          cfg.method == Method::Gd ? gd(s, target, cfg) : nesterov(s, target, cfg);
      const MetricReport m = metrics(assemble(s, res.theta), target);
      if (r == 0 || res.final_cost < best_cost) {
        best_cost = res.final_cost;
        best_fid = m.frobenius_fidelity;
      }
    }
    costs[job] = best_cost;
    fids[job] = best_fid;
  });

  std::ostringstream csv;
  csv << "L,samples,restarts,mean_cost,median_cost,std_cost,mean_fidelity,median_fidelity\n";
  for (std::size_t li = 0; li < opts.lengths.size(); ++li) {
    SweepRow& row = out.rows[li];
    row.length = opts.lengths[li];
    for (int i = 0; i < opts.samples; ++i) {
      row.best_costs.push_back(costs[li * opts.samples + i]);
      row.best_fidelities.push_back(fids[li * opts.samples + i]);
    }
    const double mean_cost =
        std::accumulate(row.best_costs.begin(), row.best_costs.end(), 0.0) / opts.samples;
    const double mean_fid =
        std::accumulate(row.best_fidelities.begin(), row.best_fidelities.end(), 0.0) /
        opts.samples;
    double var = 0.0;
    for (double cst : row.best_costs) var += (cst - mean_cost) * (cst - mean_cost);
    var /= opts.samples;
    csv << row.length << "," << opts.samples << "," << opts.restarts << ","
        << format_double(mean_cost) << "," << format_double(median(row.best_costs)) << ","
        << format_double(std::sqrt(var)) << "," << format_double(mean_fid) << ","
        << format_double(median(row.best_fidelities)) << "\n";
  }
  out.csv = csv.str();
  return out;
}

CompressOutcome run_compress(const CompressOptions& opts) {
  if (opts.lambdas.empty()) fail("compress: no lambda values given");

  Matrix u;
  Structure base{1, {}};
  AngleVector theta0;
  if (!opts.warm_start_path.empty()) {
    const Circuit warm = read_circuit_file(opts.warm_start_path);
    UnitForm form = to_unit_form(warm);
    base = std::move(form.structure);
    theta0 = std::move(form.angles);
    if (opts.target.has_value()) {
      u = load(*opts.target);
      if (u.rows() != dim_for_qubits(base.qubits())) {
        fail("compress: warm-start circuit and target dimensions differ");
      }
      u = align_target_to_image(std::move(u), base.qubits(), base.length());
    } else {
      // The circuit's own unitary lies in the ansatz image by construction
      // (no determinant normalization wanted or needed).
      u = circuit_matrix(warm);
    }
  } else {
    if (!opts.target.has_value()) fail("compress: need a target or a warm-start circuit");
    u = load(*opts.target);
    const int n = qubits_for_dim(u.rows());
    const ConnectivityGraph g0 = resolve_connectivity(opts.connectivity, n);
    base = build_structure(opts.structure, n, g0);
    u = align_target_to_image(std::move(u), n, base.length());
    theta0 = random_angles(param_count(base), opts.opt.seed);
  }
  const int n = base.qubits();
  const ConnectivityGraph g = resolve_connectivity(opts.connectivity, n);

  CompressOutcome out;
  out.per_lambda.resize(opts.lambdas.size(),
                        CompressionOutcome{Structure{1, {}}, AngleVector{}, {}});
  parallel_for(static_cast<int>(opts.lambdas.size()), opts.threads, [&](int i) {
    out.per_lambda[i] =
        compress_from(base, u, opts.lambdas[i], opts.opt, g, opts.synthesis, theta0);
  });

  std::ostringstream stream;
  for (const auto& oc : out.per_lambda) stream << to_json_line(oc.report) << "\n";
  out.report_jsonl = stream.str();

  // Best circuit per fidelity floor: fewest CNOTs among results meeting the
  // floor; highest fidelity as the best-effort fallback.
  for (std::size_t i = 0; i < out.per_lambda.size(); ++i) {
    const auto& rep = out.per_lambda[i].report;
    if (rep.fidelity_after >= opts.min_fidelity) {
      if (!out.met_floor || rep.cnots_after < out.per_lambda[out.best_index].report.cnots_after) {
        out.best_index = static_cast<int>(i);
        out.met_floor = true;
      }
    } else if (!out.met_floor &&
               (out.best_index < 0 ||
                rep.fidelity_after > out.per_lambda[out.best_index].report.fidelity_after)) {
      out.best_index = static_cast<int>(i);
    }
  }
  if (!opts.out_path.empty() && out.best_index >= 0) {
    const auto& chosen = out.per_lambda[out.best_index];
    write_circuit_file(opts.out_path, emit_circuit(chosen.structure, chosen.angles));
  }
  return out;
}

Circuit synth_circuit(const Circuit& input, const ConnectivityGraph& g,
                      bool use_synthesis) {
  Circuit out;
  out.qubits = input.qubits;
  std::vector<CnotUnit> run;
  auto flush = [&]() {
    if (run.empty()) return;
    std::vector<CnotUnit> word = run;
    if (use_synthesis) {
      std::vector<CnotUnit> synth = synthesize(input.qubits, word);
      if (synth.size() <= word.size()) word = std::move(synth);
    }
    word = apply_identities(input.qubits, std::move(word), g);
    for (const auto& p : word) {
      out.gates.push_back({Gate::Kind::Cnot, 0, 0.0, p.control, p.target});
    }
    run.clear();
  };
  for (const auto& gate : input.gates) {
    if (gate.kind == Gate::Kind::Cnot && gate.control < gate.target) {
      run.push_back({gate.control, gate.target});
    } else {
      flush();
      out.gates.push_back(gate);
    }
  }
  flush();
  return out;
}

}  // namespace aqc
