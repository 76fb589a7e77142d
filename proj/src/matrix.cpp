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

#include "aqc/matrix.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cassert>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace aqc {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

}  // namespace

long dim_for_qubits(int n) {
  if (n < 1 || n > 62) fail("qubit count out of range: " + std::to_string(n));
  return 1L << n;
}

int qubits_for_dim(long d) {
  if (d < 2 || (d & (d - 1)) != 0) {
    fail("dimension is not a power of two: " + std::to_string(d));
  }
  int n = 0;
  while ((1L << n) < d) ++n;
  return n;
}

Gate2 pauli_x() {
  Gate2 m;
  m << 0, 1, 1, 0;
  return m;
}

Gate2 pauli_y() {
  Gate2 m;
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

Gate2 pauli_z() {
  Gate2 m;
  m << 1, 0, 0, -1;
  return m;
}

Gate2 rx_matrix(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  Gate2 m;
  m << Complex(c, 0), Complex(0, -s), Complex(0, -s), Complex(c, 0);
  return m;
}

Gate2 ry_matrix(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  Gate2 m;
  m << c, -s, s, c;
  return m;
}

Gate2 rz_matrix(double theta) {
  Gate2 m;
  m << std::polar(1.0, -theta / 2), 0, 0, std::polar(1.0, theta / 2);
  return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  return Eigen::kroneckerProduct(a, b);
}

Matrix embed_single_qubit(int n, int qubit, const Gate2& u) {
  if (qubit < 1 || qubit > n) fail("qubit index out of range");
  const long left = 1L << (qubit - 1);
  const long right = 1L << (n - qubit);
  Matrix m = kron(Matrix::Identity(left, left), u);
  if (right > 1) m = kron(m, Matrix::Identity(right, right));
  return m;
}

Matrix cnot_matrix(int n, int control, int target) {
  if (control < 1 || control > n || target < 1 || target > n) {
    fail("cnot index out of range");
  }
  if (control == target) fail("cnot control equals target");
  const long d = dim_for_qubits(n);
  // Qubit q occupies bit (n - q) of the basis index; qubit 1 is the MSB.
  const long cbit = 1L << (n - control);
  const long tbit = 1L << (n - target);
  Matrix m = Matrix::Zero(d, d);
  for (long col = 0; col < d; ++col) {
    const long row = (col & cbit) ? (col ^ tbit) : col;
    m(row, col) = 1.0;
  }
  return m;
}

double unitarity_defect(const Matrix& u) {
  const long d = u.rows();
  return (u.adjoint() * u - Matrix::Identity(d, d)).norm();
}

bool is_unitary(const Matrix& u, double tol) {
  return u.rows() == u.cols() && unitarity_defect(u) <= tol;
}

bool is_special_unitary(const Matrix& u, double tol, double det_tol) {
  return is_unitary(u, tol) && std::abs(u.determinant() - Complex(1, 0)) <= det_tol;
}

Matrix special_unitarize(const Matrix& u, double tol) {
  const double defect = unitarity_defect(u);
  if (u.rows() != u.cols() || defect > tol) {
    std::ostringstream msg;
    msg << "special_unitarize: input is not unitary, ||U†U - I||_F = " << defect;
    throw std::invalid_argument(msg.str());
  }
  const Complex det = u.determinant();
  const double d = static_cast<double>(u.rows());
  // Principal d-th root: magnitude root times exp(i arg/d) with arg in (-pi, pi].
  const Complex root = std::polar(std::pow(std::abs(det), 1.0 / d), std::arg(det) / d);
  return u / root;
}

double frobenius_cost(const Matrix& v, const Matrix& u) {
  if (v.rows() != u.rows() || v.cols() != u.cols()) {
    fail("frobenius_cost: dimension mismatch");
  }
  const double d = static_cast<double>(u.rows());
  const double cost = d - (u.adjoint() * v).trace().real();
#ifndef NDEBUG
  const double direct = 0.5 * (v - u).squaredNorm();
  assert(std::abs(cost - direct) <= 1e-9 * std::max(1.0, direct));
#endif
  return cost;
}

MetricReport metrics(const Matrix& v, const Matrix& u) {
  if (v.rows() != u.rows() || v.cols() != u.cols()) {
    fail("metrics: dimension mismatch");
  }
  const double d = static_cast<double>(u.rows());
  const Complex t = (v.adjoint() * u).trace();
  MetricReport r;
  r.frobenius_cost = d - t.real();
  r.hst_cost = 1.0 - std::norm(t) / (d * d);
  r.frobenius_fidelity =
      1.0 - d / (d + 1.0) + (d - r.frobenius_cost) * (d - r.frobenius_cost) / (d * (d + 1.0));
  return r;
}

Matrix haar_random(int n, std::uint64_t seed) {
  const long d = dim_for_qubits(n);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix ginibre(d, d);
  for (long r = 0; r < d; ++r) {
    for (long c = 0; c < d; ++c) {
      const double re = normal(rng);
      const double im = normal(rng);
      ginibre(r, c) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<Matrix> qr(ginibre);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (long c = 0; c < d; ++c) {
    const Complex diag = r(c, c);
    const Complex phase = diag == Complex(0, 0) ? Complex(1, 0) : diag / std::abs(diag);
    q.col(c) *= phase;
  }
  return special_unitarize(q);
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_unitary(std::ostream& out, const Matrix& u) {
  const int n = qubits_for_dim(u.rows());
  if (u.rows() != u.cols()) fail("write_unitary: matrix is not square");
  out << "n " << n << "\n";
  for (long r = 0; r < u.rows(); ++r) {
    for (long c = 0; c < u.cols(); ++c) {
      out << r << " " << c << " " << format_double(u(r, c).real()) << " "
          << format_double(u(r, c).imag()) << "\n";
    }
  }
}

void write_unitary_file(const std::string& path, const Matrix& u) {
  std::ofstream out(path);
  if (!out) fail("cannot open for writing: " + path);
  write_unitary(out, u);
}

Matrix read_unitary(std::istream& in) {
  std::string line;
  long line_no = 0;
  auto parse_error = [&](const std::string& what) -> void {
    fail("unitary file, line " + std::to_string(line_no) + ": " + what);
  };
  if (!std::getline(in, line)) fail("unitary file: empty input");
  ++line_no;
  std::istringstream header(line);
  std::string tag;
  int n = 0;
  if (!(header >> tag >> n) || tag != "n") parse_error("expected header 'n <qubits>'");
  const long d = dim_for_qubits(n);
  Matrix u(d, d);
  long next = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream entry(line);
    long r = 0, c = 0;
    double re = 0, im = 0;
    if (!(entry >> r >> c >> re >> im)) parse_error("expected '<row> <col> <re> <im>'");
    if (r < 0 || r >= d || c < 0 || c >= d) parse_error("index out of range");
    const long idx = r * d + c;
    if (idx < next) parse_error("duplicate or out-of-order entry");
    if (idx > next) parse_error("entries must appear in row-major order");
    u(r, c) = Complex(re, im);
    ++next;
  }
  if (next != d * d) {
    fail("unitary file: expected " + std::to_string(d * d) + " entries, got " +
         std::to_string(next));
  }
  return u;
}

Matrix read_unitary_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open: " + path);
  return read_unitary(in);
}

}  // namespace aqc
