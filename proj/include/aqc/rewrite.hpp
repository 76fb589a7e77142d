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

#ifndef AQC_REWRITE_HPP
#define AQC_REWRITE_HPP

#include "aqc/optimize.hpp"
#include "aqc/structures.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace aqc {

/// n x n bits over Z2 with unit diagonal and zero above the diagonal, the
/// group LT(n, Z2) that downward-facing CNOT words multiply in.
class Gf2LowerMatrix {
 public:
  explicit Gf2LowerMatrix(int size);  // identity
  static Gf2LowerMatrix from_word(int size, const std::vector<CnotUnit>& word);

  int size() const { return size_; }
  bool bit(int row, int col) const;
  /// Left-multiplies by the elementary matrix of CNOT(control -> target):
  /// row_target ^= row_control. Requires control < target.
  void apply_cnot(int control, int target);
  Gf2LowerMatrix operator*(const Gf2LowerMatrix& rhs) const;
  bool is_identity() const;
  friend bool operator==(const Gf2LowerMatrix&, const Gf2LowerMatrix&) = default;

  /// Reads off an equivalent word by Gaussian elimination, column 1 first,
  /// rows top to bottom; at most n(n-1)/2 CNOTs.
  std::vector<CnotUnit> synthesize_word() const;

  /// Image of a basis-state bit vector (bit q-1 holds qubit q).
  std::uint64_t apply_to_bits(std::uint64_t bits) const;

 private:
  int size_;
  std::vector<std::uint64_t> rows_;
};

/// The "synthesis" rewrite: multiplies the word's elementary matrices in
/// LT(n, Z2) and reads off an equivalent word of length <= n(n-1)/2.
std::vector<CnotUnit> synthesize(int n, const std::vector<CnotUnit>& word);

/// Fixpoint application of adjacent-pair cancellation, commutation towards
/// a canonical order, and the two mirror contractions
/// (a->b)(b->c)(a->b) = (b->c)(a->c) and (b->c)(a->b)(b->c) = (a->b)(a->c),
/// the latter applied only when the introduced pair (a->c) is an edge of g.
/// The result is functionally equal to the input and never longer.
std::vector<CnotUnit> apply_identities(int n, std::vector<CnotUnit> word,
                                       const ConnectivityGraph& g);

struct EliminatedCircuit {
  Circuit circuit;
  /// Maximal rotation-free CNOT runs produced by zeroed units, as
  /// [first_gate, first_gate + gate_count) index ranges into circuit.gates.
  struct Run {
    int first_gate = 0;
    int gate_count = 0;
  };
  std::vector<Run> cnot_runs;
};

/// Emits the circuit for (s, theta) with the rotations of exactly-zero
/// groups removed (plus any individual rotation stored as exactly 0) and
/// the resulting bare CNOT runs marked for compaction.
EliminatedCircuit eliminate_zero_units(const Structure& s, const AngleVector& theta);

struct CompressionReport {
  double lambda = 0.0;
  int cnots_before = 0;
  int cnots_after = 0;
  double cost_after = 0.0;
  double fidelity_after = 0.0;
  long iters_prox = 0;
  long iters_reopt = 0;
  double wall_ms = 0.0;
};

/// Flat JSON record {lambda, cnots_before, cnots_after, cost_after,
/// fidelity_after, iters_prox, iters_reopt, wall_ms}.
std::string to_json_line(const CompressionReport& report);

struct CompressionOutcome {
  Structure structure;
  AngleVector angles;
  CompressionReport report;
};

/// The full compression pipeline: proximal group-LASSO descent, zero-unit
/// elimination, per-run synthesis (only when enabled and only when it does
/// not lengthen the run), identity rules under g, then Nesterov
/// re-optimization warm-started from the surviving angles.
CompressionOutcome compress(const Structure& s, const Matrix& u, double lambda,
                            const OptimizerConfig& cfg, const ConnectivityGraph& g,
                            bool use_synthesis);

/// As compress, but starting the proximal descent from a given angle vector
/// (the warm-start workflow).
CompressionOutcome compress_from(const Structure& s, const Matrix& u, double lambda,
                                 const OptimizerConfig& cfg, const ConnectivityGraph& g,
                                 bool use_synthesis, AngleVector theta0);

}  // namespace aqc

#endif  // AQC_REWRITE_HPP
