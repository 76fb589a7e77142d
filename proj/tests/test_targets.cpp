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

#include "aqc/circuit.hpp"
#include "support.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

using namespace aqc;
using aqc::testing::max_abs;

namespace {

// A gate is a permutation matrix up to one global phase.
bool is_permutation_up_to_phase(const Matrix& m) {
  const long d = m.rows();
  Complex phase(0, 0);
  for (long c = 0; c < d; ++c) {
    int nonzero = 0;
    for (long r = 0; r < d; ++r) {
      const double mag = std::abs(m(r, c));
      if (mag > 1e-9) {
        ++nonzero;
        if (std::abs(mag - 1.0) > 1e-9) return false;
        if (phase == Complex(0, 0)) phase = m(r, c);
        if (std::abs(m(r, c) - phase) > 1e-9) return false;
      }
    }
    if (nonzero != 1) return false;
  }
  return true;
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("/tmp/aqc_test_" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("toffoli permutes the all-controls states", "[targets]") {
  const Matrix t3 = toffoli(3);
  REQUIRE(is_permutation_up_to_phase(t3));
  REQUIRE(unitarity_defect(t3) <= 1e-12);
  // Basis states 6 and 7 swap; everything else is fixed (up to the phase).
  const Complex phase = t3(0, 0);
  REQUIRE(std::abs(t3(7, 6) - phase) <= 1e-12);
  REQUIRE(std::abs(t3(6, 7) - phase) <= 1e-12);
  for (long i = 0; i < 6; ++i) REQUIRE(std::abs(t3(i, i) - phase) <= 1e-12);

  const Matrix t4 = toffoli(4);
  const Complex phase4 = t4(0, 0);
  REQUIRE(std::abs(t4(15, 14) - phase4) <= 1e-12);
  REQUIRE(std::abs(t4(14, 15) - phase4) <= 1e-12);

  // Involution up to the normalization phase.
  REQUIRE(metrics(t3 * t3, Matrix::Identity(8, 8)).hst_cost <= 1e-12);
  REQUIRE_THROWS_AS(toffoli(2), std::invalid_argument);
}

TEST_CASE("fredkin swaps 101 and 110", "[targets]") {
  const Matrix f = fredkin();
  REQUIRE(is_permutation_up_to_phase(f));
  const Complex phase = f(0, 0);
  REQUIRE(std::abs(f(6, 5) - phase) <= 1e-12);
  REQUIRE(std::abs(f(5, 6) - phase) <= 1e-12);
  for (long i : {0, 1, 2, 3, 4, 7}) REQUIRE(std::abs(f(i, i) - phase) <= 1e-12);
  REQUIRE(metrics(f * f, Matrix::Identity(8, 8)).hst_cost <= 1e-12);
  REQUIRE(unitarity_defect(f) <= 1e-12);
}

TEST_CASE("full_adder computes sum and majority on classical inputs", "[targets]") {
  const Matrix adder = full_adder();
  REQUIRE(is_permutation_up_to_phase(adder));
  // Enumerate all 8 classical inputs (cin, a, b) with the ancilla clear.
  for (long cin = 0; cin <= 1; ++cin) {
    for (long a = 0; a <= 1; ++a) {
      for (long b = 0; b <= 1; ++b) {
        const long in = (cin << 3) | (a << 2) | (b << 1);
        long out_state = -1;
        for (long r = 0; r < 16; ++r) {
          if (std::abs(adder(r, in)) > 0.5) out_state = r;
        }
        const long sum = (out_state >> 1) & 1;
        const long carry = out_state & 1;
        REQUIRE(sum == ((a + b + cin) & 1));
        REQUIRE(carry == ((a + b + cin) >> 1));
        REQUIRE(((out_state >> 3) & 1) == cin);
        REQUIRE(((out_state >> 2) & 1) == a);
      }
    }
  }
}

TEST_CASE("full_adder equals the product of its defining gate list", "[targets]") {
  // Toffoli(2,3->4), CNOT(2->3), Toffoli(1,3->4), CNOT(1->3), as matrices.
  const long d = 16;
  auto toffoli_on = [&](int c1, int c2, int t) {
    Matrix m = Matrix::Zero(d, d);
    for (long col = 0; col < d; ++col) {
      const long b1 = (col >> (4 - c1)) & 1, b2 = (col >> (4 - c2)) & 1;
      m((b1 & b2) ? col ^ (1L << (4 - t)) : col, col) = 1.0;
    }
    return m;
  };
  const Matrix oracle = cnot_matrix(4, 1, 3) * toffoli_on(1, 3, 4) *
                        cnot_matrix(4, 2, 3) * toffoli_on(2, 3, 4);
  REQUIRE(metrics(full_adder(), oracle).hst_cost <= 1e-12);
}

TEST_CASE("target spec parsing", "[targets]") {
  REQUIRE(TargetSpec::parse("toffoli3", 0, 0).qubits == 3);
  REQUIRE(TargetSpec::parse("toffoli4", 0, 0).qubits == 4);
  REQUIRE(TargetSpec::parse("fredkin", 0, 0).qubits == 3);
  REQUIRE(TargetSpec::parse("adder", 0, 0).qubits == 4);
  REQUIRE(TargetSpec::parse("haar", 3, 9).seed == 9);
  REQUIRE(TargetSpec::parse("file:/tmp/u.txt", 0, 0).path == "/tmp/u.txt");
  REQUIRE_THROWS_AS(TargetSpec::parse("haar", 0, 0), std::invalid_argument);
  REQUIRE_THROWS_AS(TargetSpec::parse("toffoli2", 0, 0), std::invalid_argument);
}

TEST_CASE("load round-trips a Haar matrix through the file format", "[targets]") {
  const Matrix u = haar_random(3, 33);
  TempFile file("haar3.txt");
  write_unitary_file(file.path, u);
  TargetSpec spec;
  spec.kind = TargetSpec::Kind::File;
  spec.path = file.path;
  const Matrix back = load(spec);
  // u is already special unitary, so the loader's normalization is a no-op.
  REQUIRE(max_abs(back - u) <= 1e-12);
}

TEST_CASE("load rejects non-unitary file content", "[targets]") {
  Matrix bad = Matrix::Identity(4, 4);
  bad(0, 0) = 1.5;
  TempFile file("bad.txt");
  write_unitary_file(file.path, bad);
  TargetSpec spec;
  spec.kind = TargetSpec::Kind::File;
  spec.path = file.path;
  REQUIRE_THROWS_WITH(load(spec), Catch::Matchers::ContainsSubstring("not unitary"));
}

TEST_CASE("all constructed targets are special unitary", "[targets]") {
  for (const Matrix& m : {toffoli(3), toffoli(4), fredkin(), full_adder()}) {
    REQUIRE(unitarity_defect(m) <= 1e-12);
    REQUIRE(std::abs(m.determinant() - Complex(1, 0)) <= 1e-8);
  }
}

TEST_CASE("qasm warm-start file is importable and assemblable", "[targets]") {
  TempFile file("warm.qasm");
  {
    std::ofstream out(file.path);
    out << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[3];\n"
        << "u3(0.4,0.2,-0.3) q[0];\ncx q[0],q[1];\nrx(pi/4) q[2];\ncx q[2],q[1];\n";
  }
  const Circuit c = read_circuit_file(file.path);
  REQUIRE(c.qubits == 3);
  const UnitForm form = to_unit_form(c);
  REQUIRE(form.structure.length() == 2);
  REQUIRE(metrics(assemble(form.structure, form.angles), circuit_matrix(c)).hst_cost <=
          1e-9);
}
