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

#ifndef AQC_CIRCUIT_HPP
#define AQC_CIRCUIT_HPP

#include "aqc/matrix.hpp"

#include <string>
#include <vector>

namespace aqc {

/// One CNOT-unit location, 1-based, control < target.
struct CnotUnit {
  int control = 0;
  int target = 0;
  friend bool operator==(const CnotUnit&, const CnotUnit&) = default;
};

/// An ordered list of CNOT-unit locations on n qubits (an element of J(L)).
class Structure {
 public:
  Structure(int qubits, std::vector<CnotUnit> units);

  int qubits() const { return qubits_; }
  int length() const { return static_cast<int>(units_.size()); }
  const std::vector<CnotUnit>& units() const { return units_; }
  /// 1-based unit access.
  const CnotUnit& unit(int ell) const { return units_.at(ell - 1); }

  friend bool operator==(const Structure&, const Structure&) = default;

 private:
  int qubits_;
  std::vector<CnotUnit> units_;
};

// Angle vectors have length 3n + 4L: three angles per qubit for the initial
// Rz·Ry·Rz layer, then four per CNOT unit in the order
// (Ry-control, Rz-control, Ry-target, Rx-target). Within a qubit's initial
// triple, the first angle binds the leftmost Rz of the matrix product
// Rz(a)·Ry(b)·Rz(c), i.e. the rotation applied last in circuit time.
using AngleVector = Eigen::VectorXd;

int param_count(const Structure& s);
/// 0-based offset of the 4-angle group of unit ell (1-based) in the vector.
int unit_angle_base(int qubits, int ell);

/// The CNOT-unit matrix: CNOT first, then Ry(ry_c)·Rz(rz_c) on the control
/// wire and Ry(ry_t)·Rx(rx_t) on the target wire (circuit time order).
Matrix cnot_unit_matrix(int n, int control, int target, double ry_c, double rz_c,
                        double ry_t, double rx_t);

/// The initial one-qubit layer (x)_q Rz·Ry·Rz from the first 3n angles.
Matrix initial_layer(int n, const AngleVector& theta);

/// V_ct(theta) = CU_{ct(L)} ··· CU_{ct(1)} · initial_layer. O(L d^3) flops.
Matrix assemble(const Structure& s, const AngleVector& theta);

struct Gate {
  enum class Kind { Rx, Ry, Rz, Cnot };
  Kind kind = Kind::Rx;
  int qubit = 0;    // rotations
  double angle = 0.0;
  int control = 0;  // cnot; may point either direction in a Circuit
  int target = 0;

  friend bool operator==(const Gate&, const Gate&) = default;
};

/// A concrete gate list applied left to right. Matrix products therefore
/// compose right to left; all oracles share this convention.
struct Circuit {
  int qubits = 0;
  std::vector<Gate> gates;

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

/// The gate list whose left-to-right application reproduces assemble(s, theta).
Circuit emit_circuit(const Structure& s, const AngleVector& theta);

/// Naive per-gate matrix product of a circuit.
Matrix circuit_matrix(const Circuit& c);

// Text format: header "qubits <n>", then one gate per line,
// "rx|ry|rz <qubit> <angle-radians>" or "cx <control> <target>"; '#' comments.
std::string serialize(const Circuit& c);
Circuit parse_circuit(const std::string& text);
Circuit parse_circuit_file(const std::string& path);
void write_circuit_file(const std::string& path, const Circuit& c);

// Structure file: header "qubits <n>" then "unit <j> <k>" lines, j < k.
std::string serialize_structure(const Structure& s);
Structure parse_structure(const std::string& text);
Structure parse_structure_file(const std::string& path);

/// OpenQASM 2 subset importer (rx/ry/rz/cx/u3 only, one qreg); u3 is
/// expanded to Rz·Ry·Rz, so the import is exact up to a global phase.
Circuit import_qasm(const std::string& text);
/// Reads either the native circuit format or OpenQASM 2 (sniffed by header).
Circuit read_circuit_file(const std::string& path);

/// u = Rz(z_left) · Ry(y) · Rz(z_right), exact (no phase) for det(u) = 1.
/// Angles are not wrapped: a 2-pi shift of any angle negates the product.
struct EulerZyz {
  double z_left = 0.0;
  double y = 0.0;
  double z_right = 0.0;
};
EulerZyz zyz_angles(const Gate2& u);

struct UnitForm {
  Structure structure;
  AngleVector angles;
};

/// Rewrites an arbitrary rx/ry/rz/cx circuit as a CNOT-unit circuit with the
/// same CNOT count: upward CNOTs are flipped with an Ry sandwich, runs of
/// rotations are refactored into the per-unit slots, and the excess rotation
/// of each slot is commuted backwards through its CNOT. The result matches
/// the input up to a global phase.
UnitForm to_unit_form(const Circuit& c);

}  // namespace aqc

#endif  // AQC_CIRCUIT_HPP
