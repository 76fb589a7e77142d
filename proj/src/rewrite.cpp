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

#include "aqc/rewrite.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <stdexcept>

namespace aqc {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

}  // namespace

Gf2LowerMatrix::Gf2LowerMatrix(int size) : size_(size) {
  if (size < 1 || size > 64) fail("Gf2LowerMatrix: size out of range");
  rows_.resize(size_);
  for (int i = 0; i < size_; ++i) rows_[i] = 1ULL << i;
}

Gf2LowerMatrix Gf2LowerMatrix::from_word(int size, const std::vector<CnotUnit>& word) {
  Gf2LowerMatrix m(size);
  for (const auto& u : word) m.apply_cnot(u.control, u.target);
  return m;
}

bool Gf2LowerMatrix::bit(int row, int col) const {
  return (rows_.at(row - 1) >> (col - 1)) & 1ULL;
}

void Gf2LowerMatrix::apply_cnot(int control, int target) {
  if (control < 1 || target > size_ || control >= target) {
    fail("Gf2LowerMatrix: need 1 <= control < target <= n");
  }
  rows_[target - 1] ^= rows_[control - 1];
}

Gf2LowerMatrix Gf2LowerMatrix::operator*(const Gf2LowerMatrix& rhs) const {
  if (size_ != rhs.size_) fail("Gf2LowerMatrix: size mismatch");
  Gf2LowerMatrix out(size_);
  for (int i = 0; i < size_; ++i) {
    std::uint64_t acc = 0;
    std::uint64_t mask = rows_[i];
    while (mask) {
      const int j = std::countr_zero(mask);
      acc ^= rhs.rows_[j];
      mask &= mask - 1;
    }
    out.rows_[i] = acc;
  }
  return out;
}

bool Gf2LowerMatrix::is_identity() const {
  for (int i = 0; i < size_; ++i) {
    if (rows_[i] != (1ULL << i)) return false;
  }
  return true;
}

std::vector<CnotUnit> Gf2LowerMatrix::synthesize_word() const {
  Gf2LowerMatrix work = *this;
  std::vector<CnotUnit> ops;
  for (int col = 1; col <= size_; ++col) {
    for (int row = col + 1; row <= size_; ++row) {
      if (work.bit(row, col)) {
        work.rows_[row - 1] ^= work.rows_[col - 1];
        ops.push_back({col, row});
      }
    }
  }
  // The recorded eliminations multiply the matrix away from the left, so
  // the equivalent circuit word is their reversal.
  std::reverse(ops.begin(), ops.end());
  return ops;
}

std::uint64_t Gf2LowerMatrix::apply_to_bits(std::uint64_t bits) const {
  std::uint64_t out = 0;
  for (int i = 0; i < size_; ++i) {
    if (std::popcount(rows_[i] & bits) & 1) out |= 1ULL << i;
  }
  return out;
}

std::vector<CnotUnit> synthesize(int n, const std::vector<CnotUnit>& word) {
  for (const auto& u : word) {
    if (u.control < 1 || u.target > n || u.control >= u.target) {
      fail("synthesize: word contains a non-downward pair " +
           std::to_string(u.control) + "->" + std::to_string(u.target));
    }
  }
  return Gf2LowerMatrix::from_word(n, word).synthesize_word();
}

namespace {

// CNOT(a->b) and CNOT(c->d) commute unless one's control is the other's
// target.
bool commutes(const CnotUnit& p, const CnotUnit& q) {
  return p.control != q.target && q.control != p.target;
}

bool lex_less(const CnotUnit& p, const CnotUnit& q) {
  return p.control < q.control || (p.control == q.control && p.target < q.target);
}

// One cancellation / contraction / commutation sweep; true when changed.
bool rewrite_pass(std::vector<CnotUnit>& word, const ConnectivityGraph& g) {
  bool changed = false;
  // Adjacent equal pairs cancel.
  for (std::size_t i = 0; i + 1 < word.size();) {
    if (word[i] == word[i + 1]) {
      word.erase(word.begin() + static_cast<long>(i), word.begin() + static_cast<long>(i) + 2);
      changed = true;
      if (i > 0) --i;
    } else {
      ++i;
    }
  }
  // Mirror contractions, guarded by connectivity.
  for (std::size_t i = 0; i + 2 < word.size(); ++i) {
    const CnotUnit& x = word[i];
    const CnotUnit& y = word[i + 1];
    if (!(word[i + 2] == x)) continue;
    if (x.target == y.control && g.has_edge(x.control, y.target)) {
      // (a->b)(b->c)(a->b) = (b->c)(a->c)
      const CnotUnit ac{x.control, y.target};
      word[i] = y;
      word[i + 1] = ac;
      word.erase(word.begin() + static_cast<long>(i) + 2);
      changed = true;
    } else if (y.target == x.control && g.has_edge(y.control, x.target)) {
      // (b->c)(a->b)(b->c) = (a->b)(a->c)
      const CnotUnit ac{y.control, x.target};
      word[i] = y;
      word[i + 1] = ac;
      word.erase(word.begin() + static_cast<long>(i) + 2);
      changed = true;
    }
  }
  // Commute towards the canonical (control, target) order to expose more
  // cancellations.
  for (std::size_t i = 0; i + 1 < word.size(); ++i) {
    if (commutes(word[i], word[i + 1]) && lex_less(word[i + 1], word[i])) {
      std::swap(word[i], word[i + 1]);
      changed = true;
    }
  }
  return changed;
}

}  // namespace

std::vector<CnotUnit> apply_identities(int n, std::vector<CnotUnit> word,
                                       const ConnectivityGraph& g) {
  for (const auto& u : word) {
    if (u.control < 1 || u.target > n || u.control >= u.target) {
      fail("apply_identities: word contains a non-downward pair");
    }
  }
  // Bounded pass count so the commutation sweeps cannot cycle.
  const std::size_t max_passes = 10 * std::max<std::size_t>(word.size(), 1);
  for (std::size_t pass = 0; pass < max_passes; ++pass) {
    if (!rewrite_pass(word, g)) break;
  }
  return word;
}

EliminatedCircuit eliminate_zero_units(const Structure& s, const AngleVector& theta) {
  if (theta.size() != param_count(s)) fail("eliminate_zero_units: angle count mismatch");
  const int n = s.qubits();
  EliminatedCircuit out;
  out.circuit.qubits = n;
  auto& gates = out.circuit.gates;

  auto push_rotation = [&](Gate::Kind kind, int qubit, double angle) {
    if (angle == 0.0) return;  // exact stored zeros only
    gates.push_back({kind, qubit, angle, 0, 0});
  };

  for (int q = 1; q <= n; ++q) {
    const int base = 3 * (q - 1);
    push_rotation(Gate::Kind::Rz, q, theta[base + 2]);
    push_rotation(Gate::Kind::Ry, q, theta[base + 1]);
    push_rotation(Gate::Kind::Rz, q, theta[base]);
  }

  int run_start = -1;
  auto close_run = [&]() {
    if (run_start >= 0) {
      out.cnot_runs.push_back({run_start, static_cast<int>(gates.size()) - run_start});
      run_start = -1;
    }
  };

  for (int ell = 1; ell <= s.length(); ++ell) {
    const auto& u = s.unit(ell);
    const int base = unit_angle_base(n, ell);
    const bool zero_group = theta.segment(base, 4).isZero(0.0);
    if (zero_group) {
      if (run_start < 0) run_start = static_cast<int>(gates.size());
      gates.push_back({Gate::Kind::Cnot, 0, 0.0, u.control, u.target});
    } else {
      close_run();
      gates.push_back({Gate::Kind::Cnot, 0, 0.0, u.control, u.target});
      push_rotation(Gate::Kind::Ry, u.control, theta[base]);
      push_rotation(Gate::Kind::Rz, u.control, theta[base + 1]);
      push_rotation(Gate::Kind::Ry, u.target, theta[base + 2]);
      push_rotation(Gate::Kind::Rx, u.target, theta[base + 3]);
    }
  }
  close_run();
  return out;
}

std::string to_json_line(const CompressionReport& report) {
  nlohmann::json j;
  j["lambda"] = report.lambda;
  j["cnots_before"] = report.cnots_before;
  j["cnots_after"] = report.cnots_after;
  j["cost_after"] = report.cost_after;
  j["fidelity_after"] = report.fidelity_after;
  j["iters_prox"] = report.iters_prox;
  j["iters_reopt"] = report.iters_reopt;
  j["wall_ms"] = report.wall_ms;
  return j.dump();
}

namespace {

std::vector<CnotUnit> compact_run(int n, const std::vector<CnotUnit>& run,
                                  const ConnectivityGraph& g, bool use_synthesis) {
  std::vector<CnotUnit> word = run;
  if (use_synthesis) {
    std::vector<CnotUnit> synth = synthesize(n, word);
    // Synthesis can lengthen words already shorter than n(n-1)/2.
    if (synth.size() <= word.size()) word = std::move(synth);
  }
  return apply_identities(n, std::move(word), g);
}

}  // namespace

CompressionOutcome compress_from(const Structure& s, const Matrix& u, double lambda,
                                 const OptimizerConfig& cfg, const ConnectivityGraph& g,
                                 bool use_synthesis, AngleVector theta0) {
  const auto t_start = std::chrono::steady_clock::now();
  const int n = s.qubits();

  OptimizerConfig prox_cfg = cfg;
  prox_cfg.method = Method::Prox;
  prox_cfg.lambda = lambda;
  const OptimizeResult sparse = prox_group_lasso_from(s, u, prox_cfg, std::move(theta0));

  // Interleave compacted bare-CNOT runs with the surviving live units,
  // carrying the live angles over as the warm start.
  std::vector<CnotUnit> new_units;
  std::vector<std::array<double, 4>> new_angles;
  std::vector<CnotUnit> run;
  auto flush_run = [&]() {
    if (run.empty()) return;
    for (const auto& p : compact_run(n, run, g, use_synthesis)) {
      new_units.push_back(p);
      new_angles.push_back({0.0, 0.0, 0.0, 0.0});
    }
    run.clear();
  };
  std::size_t next_zero = 0;
  for (int ell = 1; ell <= s.length(); ++ell) {
    const bool zero = next_zero < sparse.zero_groups.size() &&
                      sparse.zero_groups[next_zero] == ell;
    if (zero) {
      ++next_zero;
      run.push_back(s.unit(ell));
    } else {
      flush_run();
      const int base = unit_angle_base(n, ell);
      new_units.push_back(s.unit(ell));
      new_angles.push_back({sparse.theta[base], sparse.theta[base + 1],
                            sparse.theta[base + 2], sparse.theta[base + 3]});
    }
  }
  flush_run();

  Structure compacted(n, new_units);
  AngleVector warm = AngleVector::Zero(param_count(compacted));
  warm.head(3 * n) = sparse.theta.head(3 * n);
  for (std::size_t i = 0; i < new_angles.size(); ++i) {
    const int base = unit_angle_base(n, static_cast<int>(i) + 1);
    for (int k = 0; k < 4; ++k) warm[base + k] = new_angles[i][k];
  }

  OptimizerConfig reopt_cfg = cfg;
  reopt_cfg.method = Method::Nesterov;
  reopt_cfg.lambda = 0.0;
  const OptimizeResult reopt = nesterov_from(compacted, u, reopt_cfg, warm);

  const auto t_end = std::chrono::steady_clock::now();

  CompressionOutcome out{std::move(compacted), reopt.theta, {}};
  out.report.lambda = lambda;
  out.report.cnots_before = s.length();
  out.report.cnots_after = out.structure.length();
  out.report.cost_after = reopt.final_cost;
  out.report.fidelity_after = metrics(assemble(out.structure, out.angles), u).frobenius_fidelity;
  out.report.iters_prox = sparse.iterations;
  out.report.iters_reopt = reopt.iterations;
  out.report.wall_ms =
      std::chrono::duration<double, std::milli>(t_end - t_start).count();
  return out;
}

CompressionOutcome compress(const Structure& s, const Matrix& u, double lambda,
                            const OptimizerConfig& cfg, const ConnectivityGraph& g,
                            bool use_synthesis) {
  return compress_from(s, u, lambda, cfg, g, use_synthesis,
                       random_angles(param_count(s), cfg.seed));
}

}  // namespace aqc
