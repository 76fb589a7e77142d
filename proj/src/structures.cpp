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

#include "aqc/structures.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace aqc {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

}  // namespace

ConnectivityGraph::ConnectivityGraph(int qubits, std::vector<std::pair<int, int>> edges,
                                     std::string name)
    : qubits_(qubits), name_(std::move(name)) {
  if (qubits_ < 1) fail("connectivity: qubit count must be positive");
  std::set<std::pair<int, int>> normalized;
  for (auto [j, k] : edges) {
    if (j > k) std::swap(j, k);
    if (j < 1 || k > qubits_ || j == k) {
      fail("connectivity: edge " + std::to_string(j) + "-" + std::to_string(k) +
           " out of range");
    }
    normalized.insert({j, k});
  }
  edges_.assign(normalized.begin(), normalized.end());
}

ConnectivityGraph ConnectivityGraph::full(int qubits) {
  std::vector<std::pair<int, int>> edges;
  for (int j = 1; j <= qubits; ++j) {
    for (int k = j + 1; k <= qubits; ++k) edges.push_back({j, k});
  }
  return ConnectivityGraph(qubits, std::move(edges), "full");
}

ConnectivityGraph ConnectivityGraph::star(int qubits) {
  std::vector<std::pair<int, int>> edges;
  for (int j = 1; j < qubits; ++j) edges.push_back({1, j + 1});
  return ConnectivityGraph(qubits, std::move(edges), "star");
}

ConnectivityGraph ConnectivityGraph::line(int qubits) {
  std::vector<std::pair<int, int>> edges;
  for (int j = 1; j < qubits; ++j) edges.push_back({j, j + 1});
  return ConnectivityGraph(qubits, std::move(edges), "line");
}

ConnectivityGraph ConnectivityGraph::named(const std::string& name, int qubits) {
  if (name == "full") return full(qubits);
  if (name == "star") return star(qubits);
  if (name == "line") return line(qubits);
  fail("unknown connectivity preset: " + name);
}

bool ConnectivityGraph::has_edge(int j, int k) const {
  if (j > k) std::swap(j, k);
  return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(j, k));
}

std::string serialize_connectivity(const ConnectivityGraph& g) {
  std::ostringstream out;
  out << "qubits " << g.qubits() << "\n";
  for (const auto& [j, k] : g.edges()) out << "edge " << j << " " << k << "\n";
  return out.str();
}

ConnectivityGraph parse_connectivity(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  long line_no = 0;
  int n = 0;
  bool have_header = false;
  std::vector<std::pair<int, int>> edges;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw.substr(0, raw.find('#'));
    std::istringstream tok(line);
    std::string op;
    if (!(tok >> op)) continue;
    if (!have_header) {
      if (op != "qubits" || !(tok >> n) || n < 1) {
        fail("connectivity file, line " + std::to_string(line_no) +
             ": expected 'qubits <n>'");
      }
      have_header = true;
      continue;
    }
    int j = 0, k = 0;
    if (op != "edge" || !(tok >> j >> k)) {
      fail("connectivity file, line " + std::to_string(line_no) +
           ": expected 'edge <j> <k>'");
    }
    edges.push_back({j, k});
  }
  if (!have_header) fail("connectivity file: missing 'qubits <n>' header");
  return ConnectivityGraph(n, std::move(edges), "file");
}

ConnectivityGraph parse_connectivity_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_connectivity(buf.str());
}

long tlb(int n) {
  if (n < 1) fail("tlb: n must be positive");
  const long numerator = (1L << (2 * n)) - 3L * n - 1;
  return (numerator + 3) / 4;  // exact ceiling for a nonnegative numerator
}

long qsd_count(int n) {
  if (n < 2) fail("qsd_count: n must be at least 2");
  const double value = 23.0 / 48.0 * std::pow(4.0, n) - 1.5 * std::pow(2.0, n) + 4.0 / 3.0;
  return std::lround(value);
}

Structure sequ(int n, int length, const ConnectivityGraph& g) {
  if (length < 0) fail("sequ: length must be nonnegative");
  if (g.qubits() != n) fail("sequ: connectivity qubit count mismatch");
  if (g.edges().empty()) fail("sequ: connectivity graph has no edges");
  // Pairs ordered by the key n(j-1) + (k - j(j+1)/2).
  std::vector<std::pair<long, CnotUnit>> keyed;
  for (int j = 1; j <= n; ++j) {
    for (int k = j + 1; k <= n; ++k) {
      const long key = static_cast<long>(n) * (j - 1) + (k - j * (j + 1) / 2);
      keyed.push_back({key, {j, k}});
    }
  }
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<CnotUnit> cycle;
  for (const auto& [key, unit] : keyed) {
    if (g.has_edge(unit.control, unit.target)) cycle.push_back(unit);
  }
  if (cycle.empty()) fail("sequ: no pair survives the connectivity filter");
  std::vector<CnotUnit> units;
  units.reserve(length);
  for (int i = 0; i < length; ++i) units.push_back(cycle[i % cycle.size()]);
  return Structure(n, std::move(units));
}

Structure sequ(int n, int length) { return sequ(n, length, ConnectivityGraph::full(n)); }

Structure spin(int n, int length) {
  if (n < 2) fail("spin: n must be at least 2");
  if (length < 0) fail("spin: length must be nonnegative");
  std::vector<CnotUnit> odd_block, even_block;
  for (int j = 1; j + 1 <= n; j += 2) odd_block.push_back({j, j + 1});
  for (int j = 2; j + 1 <= n; j += 2) even_block.push_back({j, j + 1});
  std::vector<CnotUnit> units;
  units.reserve(length);
  bool odd = true;
  while (static_cast<int>(units.size()) < length) {
    const auto& block = odd ? odd_block : even_block;
    for (const auto& u : block) {
      if (static_cast<int>(units.size()) == length) break;
      units.push_back(u);
    }
    odd = !odd;
  }
  return Structure(n, std::move(units));
}

namespace {

// The 22-unit n = 3 layout: four three-CNOT two-qubit blocks interleaved
// with the multiplexed-rotation words (2->3, 1->3, 2->3[, 1->3]).
Structure cart3() {
  const std::vector<CnotUnit> units = {
      {1, 2}, {1, 2}, {1, 2}, {2, 3}, {1, 3}, {2, 3}, {1, 2}, {1, 2},
      {1, 2}, {2, 3}, {1, 3}, {2, 3}, {1, 3}, {1, 2}, {1, 2}, {1, 2},
      {2, 3}, {1, 3}, {2, 3}, {1, 2}, {1, 2}, {1, 2}};
  return Structure(3, units);
}

}  // namespace

Structure cart(int n) {
  if (n < 2 || n > 6) fail("cart: supported for 2 <= n <= 6");
  if (n == 2) return Structure(2, {{1, 2}, {1, 2}, {1, 2}});
  if (n == 3) return cart3();
  // Recursive expansion for n > 3: starting from the two-qubit base block,
  // each level interleaves four copies of the previous word with three
  // copies of a multiplexor word targeting qubit n; the multiplexor doubles
  // per level with one control lowered at its seam.
  std::vector<CnotUnit> word = {{1, 2}, {1, 2}, {1, 2}};
  std::vector<CnotUnit> mult = {{n - 1, n}, {n - 2, n}, {n - 1, n}, {n - 2, n}};
  for (int level = 0; level < n - 2; ++level) {
    std::vector<CnotUnit> next;
    next.reserve(4 * word.size() + 3 * mult.size());
    for (int rep = 0; rep < 3; ++rep) {
      next.insert(next.end(), word.begin(), word.end());
      next.insert(next.end(), mult.begin(), mult.end());
    }
    next.insert(next.end(), word.begin(), word.end());
    word = std::move(next);
    if (level + 1 < n - 2) {
      mult.back().control -= 1;
      std::vector<CnotUnit> doubled = mult;
      doubled.insert(doubled.end(), mult.begin(), mult.end());
      mult = std::move(doubled);
    }
  }
  return Structure(n, std::move(word));
}

bool validate(const Structure& s, const ConnectivityGraph& g) {
  if (s.qubits() != g.qubits()) fail("validate: qubit count mismatch");
  for (const auto& u : s.units()) {
    if (!g.has_edge(u.control, u.target)) return false;
  }
  return true;
}

Structure permute_units(const Structure& s, std::uint64_t seed) {
  std::vector<CnotUnit> units = s.units();
  std::mt19937_64 rng(seed);
  std::shuffle(units.begin(), units.end(), rng);
  return Structure(s.qubits(), std::move(units));
}

}  // namespace aqc
