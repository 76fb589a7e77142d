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

#include "aqc/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace aqc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

double wrap_2pi(double x) {
  double w = x - kTwoPi * std::floor(x / kTwoPi);
  if (w >= kTwoPi) w -= kTwoPi;
  if (w < 0) w = 0;
  return w;
}

// Basis-index image of a column under CNOT(control->target); an involution.
long cnot_image(int n, int control, int target, long col) {
  const long cbit = 1L << (n - control);
  const long tbit = 1L << (n - target);
  return (col & cbit) ? (col ^ tbit) : col;
}

// I (x) u_a (x) I (x) u_b (x) I with 1-based a < b.
Matrix embed_pair(int n, int a, const Gate2& ua, int b, const Gate2& ub) {
  Matrix m = kron(Matrix::Identity(1L << (a - 1), 1L << (a - 1)), ua);
  const long mid = 1L << (b - a - 1);
  if (mid > 1) m = kron(m, Matrix::Identity(mid, mid));
  m = kron(m, ub);
  const long right = 1L << (n - b);
  if (right > 1) m = kron(m, Matrix::Identity(right, right));
  return m;
}

}  // namespace

Structure::Structure(int qubits, std::vector<CnotUnit> units)
    : qubits_(qubits), units_(std::move(units)) {
  if (qubits_ < 1) fail("structure: qubit count must be positive");
  for (const auto& u : units_) {
    if (u.control < 1 || u.target > qubits_ || u.control >= u.target) {
      fail("structure: unit " + std::to_string(u.control) + "->" +
           std::to_string(u.target) + " violates 1 <= control < target <= n");
    }
  }
}

int param_count(const Structure& s) { return 3 * s.qubits() + 4 * s.length(); }

int unit_angle_base(int qubits, int ell) { return 3 * qubits + 4 * (ell - 1); }

Matrix cnot_unit_matrix(int n, int control, int target, double ry_c, double rz_c,
                        double ry_t, double rx_t) {
  if (control < 1 || target > n || control >= target) {
    fail("cnot_unit_matrix: need 1 <= control < target <= n");
  }
  const Gate2 uc = rz_matrix(rz_c) * ry_matrix(ry_c);
  const Gate2 ut = rx_matrix(rx_t) * ry_matrix(ry_t);
  const Matrix rot = embed_pair(n, control, uc, target, ut);
  const long d = rot.rows();
  Matrix cu(d, d);
  for (long col = 0; col < d; ++col) {
    cu.col(col) = rot.col(cnot_image(n, control, target, col));
  }
  return cu;
}

Matrix initial_layer(int n, const AngleVector& theta) {
  Matrix m = Matrix::Identity(1, 1);
  for (int q = 1; q <= n; ++q) {
    const int base = 3 * (q - 1);
    const Gate2 u = rz_matrix(theta[base]) * ry_matrix(theta[base + 1]) *
                    rz_matrix(theta[base + 2]);
    m = kron(m, Matrix(u));
  }
  return m;
}

Matrix assemble(const Structure& s, const AngleVector& theta) {
  if (theta.size() != param_count(s)) {
    fail("assemble: expected " + std::to_string(param_count(s)) + " angles, got " +
         std::to_string(theta.size()));
  }
  const int n = s.qubits();
  Matrix v = initial_layer(n, theta);
  for (int ell = 1; ell <= s.length(); ++ell) {
    const auto& u = s.unit(ell);
    const int base = unit_angle_base(n, ell);
    v = cnot_unit_matrix(n, u.control, u.target, theta[base], theta[base + 1],
                         theta[base + 2], theta[base + 3]) *
        v;
  }
  return v;
}

Circuit emit_circuit(const Structure& s, const AngleVector& theta) {
  if (theta.size() != param_count(s)) fail("emit_circuit: angle count mismatch");
  const int n = s.qubits();
  Circuit c;
  c.qubits = n;
  for (int q = 1; q <= n; ++q) {
    const int base = 3 * (q - 1);
    c.gates.push_back({Gate::Kind::Rz, q, theta[base + 2], 0, 0});
    c.gates.push_back({Gate::Kind::Ry, q, theta[base + 1], 0, 0});
    c.gates.push_back({Gate::Kind::Rz, q, theta[base], 0, 0});
  }
  for (int ell = 1; ell <= s.length(); ++ell) {
    const auto& u = s.unit(ell);
    const int base = unit_angle_base(n, ell);
    c.gates.push_back({Gate::Kind::Cnot, 0, 0.0, u.control, u.target});
    c.gates.push_back({Gate::Kind::Ry, u.control, theta[base], 0, 0});
    c.gates.push_back({Gate::Kind::Rz, u.control, theta[base + 1], 0, 0});
    c.gates.push_back({Gate::Kind::Ry, u.target, theta[base + 2], 0, 0});
    c.gates.push_back({Gate::Kind::Rx, u.target, theta[base + 3], 0, 0});
  }
  return c;
}

Matrix circuit_matrix(const Circuit& c) {
  const long d = dim_for_qubits(c.qubits);
  Matrix v = Matrix::Identity(d, d);
  for (const auto& g : c.gates) {
    switch (g.kind) {
      case Gate::Kind::Rx:
        v = embed_single_qubit(c.qubits, g.qubit, rx_matrix(g.angle)) * v;
        break;
      case Gate::Kind::Ry:
        v = embed_single_qubit(c.qubits, g.qubit, ry_matrix(g.angle)) * v;
        break;
      case Gate::Kind::Rz:
        v = embed_single_qubit(c.qubits, g.qubit, rz_matrix(g.angle)) * v;
        break;
      case Gate::Kind::Cnot:
        v = cnot_matrix(c.qubits, g.control, g.target) * v;
        break;
    }
  }
  return v;
}

std::string serialize(const Circuit& c) {
  std::ostringstream out;
  out << "qubits " << c.qubits << "\n";
  for (const auto& g : c.gates) {
    switch (g.kind) {
      case Gate::Kind::Rx:
        out << "rx " << g.qubit << " " << format_double(g.angle) << "\n";
        break;
      case Gate::Kind::Ry:
        out << "ry " << g.qubit << " " << format_double(g.angle) << "\n";
        break;
      case Gate::Kind::Rz:
        out << "rz " << g.qubit << " " << format_double(g.angle) << "\n";
        break;
      case Gate::Kind::Cnot:
        out << "cx " << g.control << " " << g.target << "\n";
        break;
    }
  }
  return out.str();
}

namespace {

// Strips '#' comments and surrounding whitespace.
std::string clean_line(const std::string& line) {
  std::string s = line.substr(0, line.find('#'));
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void line_fail(long line_no, const std::string& what) {
  fail("line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

Circuit parse_circuit(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  long line_no = 0;
  Circuit c;
  bool have_header = false;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = clean_line(raw);
    if (line.empty()) continue;
    std::istringstream tok(line);
    std::string op;
    tok >> op;
    if (!have_header) {
      int n = 0;
      if (op != "qubits" || !(tok >> n) || n < 1) {
        line_fail(line_no, "expected header 'qubits <n>'");
      }
      c.qubits = n;
      have_header = true;
      continue;
    }
    if (op == "rx" || op == "ry" || op == "rz") {
      int q = 0;
      double angle = 0;
      if (!(tok >> q >> angle)) line_fail(line_no, "expected '" + op + " <qubit> <angle>'");
      if (q < 1 || q > c.qubits) line_fail(line_no, "qubit index out of range");
      if (!std::isfinite(angle)) line_fail(line_no, "angle must be finite");
      const auto kind = op == "rx"   ? Gate::Kind::Rx
                        : op == "ry" ? Gate::Kind::Ry
                                     : Gate::Kind::Rz;
      c.gates.push_back({kind, q, angle, 0, 0});
    } else if (op == "cx") {
      int a = 0, b = 0;
      if (!(tok >> a >> b)) line_fail(line_no, "expected 'cx <control> <target>'");
      if (a < 1 || a > c.qubits || b < 1 || b > c.qubits || a == b) {
        line_fail(line_no, "cx indices out of range");
      }
      c.gates.push_back({Gate::Kind::Cnot, 0, 0.0, a, b});
    } else {
      line_fail(line_no, "unknown gate '" + op + "'");
    }
    std::string rest;
    if (tok >> rest) line_fail(line_no, "trailing tokens");
  }
  if (!have_header) fail("circuit file: missing 'qubits <n>' header");
  return c;
}

Circuit parse_circuit_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_circuit(buf.str());
}

void write_circuit_file(const std::string& path, const Circuit& c) {
  std::ofstream out(path);
  if (!out) fail("cannot open for writing: " + path);
  out << serialize(c);
}

std::string serialize_structure(const Structure& s) {
  std::ostringstream out;
  out << "qubits " << s.qubits() << "\n";
  for (const auto& u : s.units()) {
    out << "unit " << u.control << " " << u.target << "\n";
  }
  return out.str();
}

Structure parse_structure(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  long line_no = 0;
  int n = 0;
  bool have_header = false;
  std::vector<CnotUnit> units;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = clean_line(raw);
    if (line.empty()) continue;
    std::istringstream tok(line);
    std::string op;
    tok >> op;
    if (!have_header) {
      if (op != "qubits" || !(tok >> n) || n < 1) {
        line_fail(line_no, "expected header 'qubits <n>'");
      }
      have_header = true;
      continue;
    }
    if (op != "unit") line_fail(line_no, "expected 'unit <control> <target>'");
    int j = 0, k = 0;
    if (!(tok >> j >> k)) line_fail(line_no, "expected 'unit <control> <target>'");
    if (j < 1 || k > n || j >= k) {
      line_fail(line_no, "unit requires 1 <= control < target <= n");
    }
    units.push_back({j, k});
  }
  if (!have_header) fail("structure file: missing 'qubits <n>' header");
  return Structure(n, std::move(units));
}

Structure parse_structure_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_structure(buf.str());
}

// ---------------------------------------------------------------------------
// OpenQASM 2 subset

namespace {

// Arithmetic over +,-,*,/,(), numeric literals and "pi".
class ExprParser {
 public:
  explicit ExprParser(const std::string& text) : text_(text) {}

  double parse() {
    const double v = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("bad angle expression: " + text_);
    return v;
  }

 private:
  double expr() {
    double v = term();
    while (true) {
      skip_ws();
      if (peek() == '+') {
        ++pos_;
        v += term();
      } else if (peek() == '-') {
        ++pos_;
        v -= term();
      } else {
        return v;
      }
    }
  }

  double term() {
    double v = unary();
    while (true) {
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        v *= unary();
      } else if (peek() == '/') {
        ++pos_;
        v /= unary();
      } else {
        return v;
      }
    }
  }

  double unary() {
    skip_ws();
    if (peek() == '-') {
      ++pos_;
      return -unary();
    }
    if (peek() == '+') {
      ++pos_;
      return unary();
    }
    return atom();
  }

  double atom() {
    skip_ws();
    if (peek() == '(') {
      ++pos_;
      const double v = expr();
      skip_ws();
      if (peek() != ')') fail("unbalanced parenthesis in angle expression");
      ++pos_;
      return v;
    }
    if (std::isalpha(static_cast<unsigned char>(peek()))) {
      std::string name;
      while (pos_ < text_.size() &&
             std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
        name += text_[pos_++];
      }
      if (name == "pi") return kPi;
      fail("unknown identifier in angle expression: " + name);
    }
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(text_.substr(pos_), &used);
    } catch (const std::exception&) {
      fail("bad numeric literal in angle expression: " + text_);
    }
    pos_ += used;
    return v;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  std::string text_;
  std::size_t pos_ = 0;
};

struct QasmStatement {
  std::string name;
  std::vector<double> params;
  std::vector<int> qubits;  // 0-based register offsets
};

}  // namespace

Circuit import_qasm(const std::string& text) {
  // Strip // comments, then split on ';'.
  std::string cleaned;
  std::istringstream lines(text);
  std::string raw;
  while (std::getline(lines, raw)) {
    cleaned += raw.substr(0, raw.find("//"));
    cleaned += '\n';
  }
  std::vector<std::string> statements;
  std::string cur;
  for (char ch : cleaned) {
    if (ch == ';') {
      statements.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }

  Circuit c;
  std::string reg_name;
  int reg_size = 0;

  auto parse_qubit = [&](const std::string& token) -> int {
    const auto open = token.find('[');
    const auto close = token.find(']');
    if (open == std::string::npos || close == std::string::npos || close < open) {
      fail("qasm: bad qubit reference '" + token + "'");
    }
    const std::string name = token.substr(0, open);
    if (name != reg_name) fail("qasm: unknown register '" + name + "'");
    const int idx = std::stoi(token.substr(open + 1, close - open - 1));
    if (idx < 0 || idx >= reg_size) fail("qasm: qubit index out of range");
    return idx;
  };

  for (const std::string& stmt_raw : statements) {
    std::string stmt;
    for (char ch : stmt_raw) stmt += (ch == '\n' || ch == '\t') ? ' ' : ch;
    const auto first = stmt.find_first_not_of(' ');
    if (first == std::string::npos) continue;
    stmt = stmt.substr(first);

    if (stmt.rfind("OPENQASM", 0) == 0 || stmt.rfind("include", 0) == 0 ||
        stmt.rfind("creg", 0) == 0 || stmt.rfind("barrier", 0) == 0) {
      continue;
    }
    if (stmt.rfind("qreg", 0) == 0) {
      std::istringstream tok(stmt.substr(4));
      std::string decl;
      tok >> decl;
      const auto open = decl.find('[');
      const auto close = decl.find(']');
      if (open == std::string::npos || close == std::string::npos) {
        fail("qasm: bad qreg declaration");
      }
      if (!reg_name.empty()) fail("qasm: multiple qregs are not supported");
      reg_name = decl.substr(0, open);
      reg_size = std::stoi(decl.substr(open + 1, close - open - 1));
      c.qubits = reg_size;
      continue;
    }

    // Gate application: name[(params)] qargs
    std::string name;
    std::size_t pos = 0;
    while (pos < stmt.size() &&
           (std::isalnum(static_cast<unsigned char>(stmt[pos])) || stmt[pos] == '_')) {
      name += stmt[pos++];
    }
    std::vector<double> params;
    if (pos < stmt.size() && stmt[pos] == '(') {
      const auto close = stmt.find(')', pos);
      if (close == std::string::npos) fail("qasm: unbalanced '(' in '" + stmt + "'");
      std::string inner = stmt.substr(pos + 1, close - pos - 1);
      std::string piece;
      std::istringstream ss(inner);
      while (std::getline(ss, piece, ',')) params.push_back(ExprParser(piece).parse());
      pos = close + 1;
    }
    std::vector<int> qubits;
    std::string rest = stmt.substr(pos);
    std::string piece;
    std::istringstream ss(rest);
    while (std::getline(ss, piece, ',')) {
      std::istringstream tok(piece);
      std::string qtok;
      if (tok >> qtok) qubits.push_back(parse_qubit(qtok));
    }
    if (reg_name.empty()) fail("qasm: gate before qreg declaration");

    if (name == "rx" || name == "ry" || name == "rz") {
      if (params.size() != 1 || qubits.size() != 1) fail("qasm: bad " + name + " statement");
      const auto kind = name == "rx"   ? Gate::Kind::Rx
                        : name == "ry" ? Gate::Kind::Ry
                                       : Gate::Kind::Rz;
      c.gates.push_back({kind, qubits[0] + 1, params[0], 0, 0});
    } else if (name == "u3") {
      if (params.size() != 3 || qubits.size() != 1) fail("qasm: bad u3 statement");
      // u3(theta, phi, lambda) = Rz(phi) Ry(theta) Rz(lambda) up to global phase.
      const int q = qubits[0] + 1;
      c.gates.push_back({Gate::Kind::Rz, q, params[2], 0, 0});
      c.gates.push_back({Gate::Kind::Ry, q, params[0], 0, 0});
      c.gates.push_back({Gate::Kind::Rz, q, params[1], 0, 0});
    } else if (name == "cx") {
      if (qubits.size() != 2) fail("qasm: bad cx statement");
      c.gates.push_back({Gate::Kind::Cnot, 0, 0.0, qubits[0] + 1, qubits[1] + 1});
    } else {
      fail("qasm: unsupported statement '" + name + "' (subset: rx, ry, rz, cx, u3)");
    }
  }
  if (reg_name.empty()) fail("qasm: missing qreg declaration");
  return c;
}

Circuit read_circuit_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  if (text.find("OPENQASM") != std::string::npos) return import_qasm(text);
  return parse_circuit(text);
}

// ---------------------------------------------------------------------------
// Euler angles and unit-form rewriting

EulerZyz zyz_angles(const Gate2& u) {
  // Rz(a) Ry(b) Rz(c) = [[cos(b/2) e^{-i(a+c)/2}, -sin(b/2) e^{-i(a-c)/2}],
  //                      [sin(b/2) e^{ i(a-c)/2},  cos(b/2) e^{ i(a+c)/2}]]
  // which is exact (no phase freedom) when det(u) = 1. Angles are left
  // unwrapped: shifting any one of them by 2 pi negates the product.
  EulerZyz e;
  const double abs00 = std::abs(u(0, 0));
  const double abs10 = std::abs(u(1, 0));
  e.y = 2.0 * std::atan2(abs10, abs00);
  if (abs10 == 0.0) {
    e.z_left = 2.0 * std::arg(u(1, 1));
    e.z_right = 0.0;
    return e;
  }
  if (abs00 == 0.0) {
    e.z_left = 2.0 * std::arg(u(1, 0));
    e.z_right = 0.0;
    return e;
  }
  const double sum = 2.0 * std::arg(u(1, 1));   // a + c
  const double diff = 2.0 * std::arg(u(1, 0));  // a - c
  e.z_left = 0.5 * (sum + diff);
  e.z_right = 0.5 * (sum - diff);
  return e;
}

namespace {

// u = Rx(x_left) Ry(y) Rx(x_right), via Rx(t) = Ry(pi/2) Rz(t) Ry(-pi/2).
EulerZyz xyx_angles(const Gate2& u) {
  const Gate2 w = ry_matrix(-kPi / 2) * u * ry_matrix(kPi / 2);
  return zyz_angles(w);
}

struct Span {
  Gate2 matrix = Gate2::Identity();
};

}  // namespace

UnitForm to_unit_form(const Circuit& c) {
  const int n = c.qubits;

  // Flatten to downward CNOTs; an upward CNOT(k->j), j < k, equals
  //   [Ry(-pi/2)_j, Ry(pi/2)_k] CNOT(j->k) [Ry(pi/2)_j, Ry(-pi/2)_k]
  // read in circuit time order.
  std::vector<Gate> flat;
  for (const auto& g : c.gates) {
    if (g.kind == Gate::Kind::Cnot && g.control > g.target) {
      const int j = g.target, k = g.control;
      flat.push_back({Gate::Kind::Ry, j, -kPi / 2, 0, 0});
      flat.push_back({Gate::Kind::Ry, k, kPi / 2, 0, 0});
      flat.push_back({Gate::Kind::Cnot, 0, 0.0, j, k});
      flat.push_back({Gate::Kind::Ry, j, kPi / 2, 0, 0});
      flat.push_back({Gate::Kind::Ry, k, -kPi / 2, 0, 0});
    } else {
      flat.push_back(g);
    }
  }

  // Per-qubit rotation spans delimited by the CNOTs touching that qubit.
  std::vector<CnotUnit> units;
  std::vector<std::vector<Span>> spans(n + 1, std::vector<Span>(1));
  // spans[q][i] holds the rotations after the i-th CNOT touching q;
  // unit_of[q][i-1] is the unit index of that CNOT.
  std::vector<std::vector<int>> unit_of(n + 1);
  for (const auto& g : flat) {
    switch (g.kind) {
      case Gate::Kind::Rx:
        spans[g.qubit].back().matrix = rx_matrix(g.angle) * spans[g.qubit].back().matrix;
        break;
      case Gate::Kind::Ry:
        spans[g.qubit].back().matrix = ry_matrix(g.angle) * spans[g.qubit].back().matrix;
        break;
      case Gate::Kind::Rz:
        spans[g.qubit].back().matrix = rz_matrix(g.angle) * spans[g.qubit].back().matrix;
        break;
      case Gate::Kind::Cnot: {
        units.push_back({g.control, g.target});
        const int idx = static_cast<int>(units.size());
        for (int q : {g.control, g.target}) {
          unit_of[q].push_back(idx);
          spans[q].emplace_back();
        }
        break;
      }
    }
  }

  Structure s(n, units);
  AngleVector theta = AngleVector::Zero(param_count(s));

  // Reduce right to left: each span keeps its two slot rotations, and the
  // excess rotation (Rz on a control wire, Rx on a target wire) commutes
  // backwards through the delimiting CNOT into the previous span.
  for (int q = 1; q <= n; ++q) {
    for (int i = static_cast<int>(spans[q].size()) - 1; i >= 1; --i) {
      const int ell = unit_of[q][i - 1];
      const bool is_control = s.unit(ell).control == q;
      const Gate2 u = spans[q][i].matrix;
      const int base = unit_angle_base(n, ell);
      if (is_control) {
        const EulerZyz e = zyz_angles(u);  // u = Rz(b) Ry(a) Rz(delta)
        theta[base] = wrap_2pi(e.y);
        theta[base + 1] = wrap_2pi(e.z_left);
        spans[q][i - 1].matrix = rz_matrix(e.z_right) * spans[q][i - 1].matrix;
      } else {
        const EulerZyz e = xyx_angles(u);  // u = Rx(b) Ry(a) Rx(delta)
        theta[base + 2] = wrap_2pi(e.y);
        theta[base + 3] = wrap_2pi(e.z_left);
        spans[q][i - 1].matrix = rx_matrix(e.z_right) * spans[q][i - 1].matrix;
      }
    }
    const EulerZyz e = zyz_angles(spans[q][0].matrix);
    const int base = 3 * (q - 1);
    theta[base] = wrap_2pi(e.z_left);
    theta[base + 1] = wrap_2pi(e.y);
    theta[base + 2] = wrap_2pi(e.z_right);
  }

  return UnitForm{std::move(s), std::move(theta)};
}

}  // namespace aqc
