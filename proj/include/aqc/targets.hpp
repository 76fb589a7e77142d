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

#ifndef AQC_TARGETS_HPP
#define AQC_TARGETS_HPP

#include "aqc/matrix.hpp"

#include <cstdint>
#include <string>

namespace aqc {

/// The n-qubit Toffoli (multi-controlled X): flips qubit n iff qubits
/// 1..n-1 are all |1>. Special-unitarized. n >= 3.
Matrix toffoli(int n);

/// Controlled swap of qubits 2 and 3 with control 1. Special-unitarized.
Matrix fredkin();

/// The reversible 1-bit full adder on (cin, a, b, 0) -> (cin, a, sum, carry),
/// realized as the standard two-Toffoli / two-CNOT ripple network:
///   Toffoli(2,3 -> 4), CNOT(2 -> 3), Toffoli(1,3 -> 4), CNOT(1 -> 3).
/// Special-unitarized.
Matrix full_adder();

struct TargetSpec {
  enum class Kind { File, Haar, Toffoli, Fredkin, Adder };
  Kind kind = Kind::Haar;
  int qubits = 0;
  std::string path;
  std::uint64_t seed = 0;

  /// Parses "file:PATH", "haar", "toffoli3", "toffoli4", "fredkin", "adder".
  /// haar requires qubits > 0; seed applies to haar only.
  static TargetSpec parse(const std::string& text, int qubits, std::uint64_t seed);

  std::string describe() const;
};

/// Dispatches to the constructors or the unitary file reader; the result is
/// always special-unitarized. File content with ||U†U - I||_F > 1e-6 is
/// rejected.
Matrix load(const TargetSpec& spec);

}  // namespace aqc

#endif  // AQC_TARGETS_HPP
