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

#ifndef AQC_STRUCTURES_HPP
#define AQC_STRUCTURES_HPP

#include "aqc/circuit.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace aqc {

/// Undirected qubit connectivity. Presets: full (all pairs), star (qubit 1
/// as hub), line (nearest neighbours).
class ConnectivityGraph {
 public:
  ConnectivityGraph(int qubits, std::vector<std::pair<int, int>> edges,
                    std::string name = "custom");

  static ConnectivityGraph full(int qubits);
  static ConnectivityGraph star(int qubits);
  static ConnectivityGraph line(int qubits);
  /// Resolves "full" / "star" / "line" by name.
  static ConnectivityGraph named(const std::string& name, int qubits);

  int qubits() const { return qubits_; }
  const std::string& name() const { return name_; }
  bool has_edge(int j, int k) const;
  /// Edges normalized to j < k, sorted.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

 private:
  int qubits_;
  std::vector<std::pair<int, int>> edges_;
  std::string name_;
};

std::string serialize_connectivity(const ConnectivityGraph& g);
ConnectivityGraph parse_connectivity(const std::string& text);
ConnectivityGraph parse_connectivity_file(const std::string& path);

/// Theoretical lower bound ceil((4^n - 3n - 1) / 4) on the CNOT count for
/// exact compilation of almost all of SU(2^n).
long tlb(int n);

/// CNOT count of the quantum Shannon decomposition,
/// 23/48 4^n - 3/2 2^n + 4/3, rounded to the nearest integer.
long qsd_count(int n);

/// L CNOT units cycling through the pairs j < k in the order
/// n(j-1) + (k - j(j+1)/2), skipping pairs that are not edges of g and
/// repeating until exactly L units are emitted.
Structure sequ(int n, int length, const ConnectivityGraph& g);
Structure sequ(int n, int length);

/// Alternating nearest-neighbour blocks (1->2, 3->4, ...) and
/// (2->3, 4->5, ...), truncated to exactly L units.
Structure spin(int n, int length);

/// The recursive quantum-Shannon-decomposition CNOT layout. For n = 3 this
/// is the fixed 22-unit list; n = 2 is the three-CNOT block. Supported for
/// 2 <= n <= 6.
Structure cart(int n);

/// True iff every unit of s lies on an edge of g.
bool validate(const Structure& s, const ConnectivityGraph& g);

/// Uniformly random permutation of the unit order, seeded.
Structure permute_units(const Structure& s, std::uint64_t seed);

}  // namespace aqc

#endif  // AQC_STRUCTURES_HPP
