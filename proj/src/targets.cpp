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

#include "aqc/targets.hpp"

#include <functional>
#include <stdexcept>

namespace aqc {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

// Permutation matrix of a classical reversible map on basis indices
// (qubit 1 is the most significant bit).
Matrix permutation_gate(int n, const std::function<long(long)>& image) {
  const long d = dim_for_qubits(n);
  Matrix m = Matrix::Zero(d, d);
  for (long col = 0; col < d; ++col) m(image(col), col) = 1.0;
  return m;
}

}  // namespace

Matrix toffoli(int n) {
  if (n < 3) fail("toffoli: n must be at least 3");
  const long d = dim_for_qubits(n);
  const long controls = d - 2;  // bits of qubits 1..n-1 all set, qubit n clear
  return special_unitarize(permutation_gate(n, [&](long x) {
    return (x & controls) == controls ? (x ^ 1L) : x;
  }));
}

Matrix fredkin() {
  // Control on qubit 1 (bit 2), swap qubits 2 and 3 (bits 1 and 0).
  return special_unitarize(permutation_gate(3, [](long x) {
    if ((x & 4L) == 0) return x;
    const long b2 = (x >> 1) & 1L, b3 = x & 1L;
    return (x & ~3L) | (b3 << 1) | b2;
  }));
}

Matrix full_adder() {
  // Qubits (1,2,3,4) = (cin, a, b, ancilla); bits are 3,2,1,0.
  return special_unitarize(permutation_gate(4, [](long x) {
    long cin = (x >> 3) & 1L, a = (x >> 2) & 1L, b = (x >> 1) & 1L, anc = x & 1L;
    anc ^= a & b;    // Toffoli(2,3 -> 4)
    b ^= a;          // CNOT(2 -> 3)
    anc ^= cin & b;  // Toffoli(1,3 -> 4)
    b ^= cin;        // CNOT(1 -> 3)
    return (cin << 3) | (a << 2) | (b << 1) | anc;
  }));
}

TargetSpec TargetSpec::parse(const std::string& text, int qubits, std::uint64_t seed) {
  TargetSpec spec;
  spec.seed = seed;
  if (text.rfind("file:", 0) == 0) {
    spec.kind = Kind::File;
    spec.path = text.substr(5);
    if (spec.path.empty()) fail("target: empty file path");
    return spec;
  }
  if (text == "haar") {
    if (qubits < 1) fail("target haar requires a positive qubit count (--n)");
    spec.kind = Kind::Haar;
    spec.qubits = qubits;
    return spec;
  }
  if (text == "toffoli3" || text == "toffoli4") {
    spec.kind = Kind::Toffoli;
    spec.qubits = text.back() == '3' ? 3 : 4;
    return spec;
  }
  if (text == "fredkin") {
    spec.kind = Kind::Fredkin;
    spec.qubits = 3;
    return spec;
  }
  if (text == "adder") {
    spec.kind = Kind::Adder;
    spec.qubits = 4;
    return spec;
  }
  fail("unknown target: " + text);
}

std::string TargetSpec::describe() const {
  switch (kind) {
    case Kind::File:
      return "file:" + path;
    case Kind::Haar:
      return "haar(n=" + std::to_string(qubits) + ",seed=" + std::to_string(seed) + ")";
    case Kind::Toffoli:
      return "toffoli" + std::to_string(qubits);
    case Kind::Fredkin:
      return "fredkin";
    case Kind::Adder:
      return "adder";
  }
  return "?";
}

Matrix load(const TargetSpec& spec) {
  switch (spec.kind) {
    case TargetSpec::Kind::File: {
      const Matrix u = read_unitary_file(spec.path);
      if (unitarity_defect(u) > 1e-6) {
        fail("target file " + spec.path + " is not unitary, ||U†U - I||_F = " +
             format_double(unitarity_defect(u)));
      }
      return special_unitarize(u, 1e-6);
    }
    case TargetSpec::Kind::Haar:
      return haar_random(spec.qubits, spec.seed);
    case TargetSpec::Kind::Toffoli:
      return toffoli(spec.qubits);
    case TargetSpec::Kind::Fredkin:
      return fredkin();
    case TargetSpec::Kind::Adder:
      return full_adder();
  }
  fail("load: bad target kind");
}

}  // namespace aqc
