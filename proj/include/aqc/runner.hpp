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

#ifndef AQC_RUNNER_HPP
#define AQC_RUNNER_HPP

#include "aqc/rewrite.hpp"
#include "aqc/targets.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace aqc {

/// --threads, falling back to AQC_THREADS and then the hardware count.
int default_threads();

/// Runs body(0..jobs-1) on up to `threads` workers with a static index
/// partition; results written per index stay deterministic regardless of
/// the worker count.
void parallel_for(int jobs, int threads, const std::function<void(int)>& body);

/// Deterministic seed derivation for nested experiment loops.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0,
                          std::uint64_t c = 0);

/// Resolves "full" / "star" / "line" / "file:PATH".
ConnectivityGraph resolve_connectivity(const std::string& text, int qubits);

struct StructureSpec {
  std::string name = "sequ";  // sequ | spin | cart
  /// Unit count; < 0 selects the default (tlb(n) for sequ/spin, fixed for cart).
  int length = -1;
  bool permute = false;
};

/// Builds and validates the base structure against the connectivity graph.
Structure build_structure(const StructureSpec& spec, int n, const ConnectivityGraph& g);

struct CompileOptions {
  TargetSpec target;
  StructureSpec structure;
  std::string connectivity = "full";
  OptimizerConfig opt;
  int restarts = 1;
  int threads = 0;  // 0 = default_threads()
  std::string out_path;
  std::string report_path;
};

struct RestartSummary {
  std::uint64_t seed = 0;
  double cost = 0.0;
  double hst_cost = 0.0;
  double fidelity = 0.0;
  double grad_norm = 0.0;
  long iterations = 0;
  bool converged = false;
};

struct CompileOutcome {
  Structure structure;  // of the best restart (permutation-aware)
  OptimizeResult best;
  RestartSummary best_summary;
  std::vector<RestartSummary> restarts;
  MetricReport metric;
  double wall_ms = 0.0;
  int exit_code = 0;  // 0 converged, 2 budget exhaustion
  std::string report_json;
};

CompileOutcome run_compile(const CompileOptions& opts);

struct SweepOptions {
  int n = 3;
  std::vector<int> lengths;
  StructureSpec structure;
  std::string connectivity = "full";
  OptimizerConfig opt;
  int samples = 20;
  int restarts = 1;
  int threads = 0;
};

struct SweepRow {
  int length = 0;
  std::vector<double> best_costs;       // per sample
  std::vector<double> best_fidelities;  // per sample
};

struct SweepOutcome {
  std::vector<SweepRow> rows;
  std::string csv;
};

/// For each L, optimizes `samples` Haar targets with `restarts` starts each
/// and reports per-sample best error statistics. The Haar targets are shared
/// across lengths so per-L medians are paired.
SweepOutcome run_sweep(const SweepOptions& opts);

struct CompressOptions {
  std::optional<TargetSpec> target;
  StructureSpec structure;
  std::string connectivity = "full";
  /// Warm-start circuit file (native format or OpenQASM 2). When set, the
  /// structure and initial angles come from the file; when no target is
  /// given the circuit's own unitary is the compression target.
  std::string warm_start_path;
  std::vector<double> lambdas = {0.0};
  OptimizerConfig opt;
  bool synthesis = true;
  double min_fidelity = 0.0;
  int threads = 0;
  std::string out_path;
};

struct CompressOutcome {
  std::vector<CompressionOutcome> per_lambda;
  /// Index of the shortest result with fidelity >= min_fidelity, or the
  /// highest-fidelity result when none reaches the floor.
  int best_index = -1;
  bool met_floor = false;
  std::string report_jsonl;
};

CompressOutcome run_compress(const CompressOptions& opts);

/// Rewrites the rotation-free downward-CNOT runs of a circuit file through
/// synthesis (per-run accept/reject) and the identity rules.
Circuit synth_circuit(const Circuit& input, const ConnectivityGraph& g,
                      bool use_synthesis);

double median(std::vector<double> values);

}  // namespace aqc

#endif  // AQC_RUNNER_HPP
