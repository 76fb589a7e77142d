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

#ifndef AQC_MATRIX_HPP
#define AQC_MATRIX_HPP

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace aqc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Gate2 = Eigen::Matrix2cd;

/// Frobenius tolerance for the U†U = I check. Sized for d <= 64 and
/// products of up to ~1e3 double-precision factors.
inline constexpr double kUnitaryTol = 1e-10;
/// Tolerance on |det(U) - 1| for special-unitary values.
inline constexpr double kDetTol = 1e-8;

/// 2^n as a matrix dimension.
long dim_for_qubits(int n);

/// Number of qubits for a dimension d; throws unless d is a power of two.
int qubits_for_dim(long d);

Gate2 pauli_x();
Gate2 pauli_y();
Gate2 pauli_z();

// Rotation gates exp(-i theta sigma / 2).
Gate2 rx_matrix(double theta);
Gate2 ry_matrix(double theta);
Gate2 rz_matrix(double theta);

/// Kronecker product of two dense complex matrices.
Matrix kron(const Matrix& a, const Matrix& b);

/// I_{2^{q-1}} (x) u (x) I_{2^{n-q}} with 1-based qubit index q.
Matrix embed_single_qubit(int n, int qubit, const Gate2& u);

/// CNOT with 1-based control/target on an n-qubit register (qubit 1 is the
/// most significant bit of the basis index). Both control < target and
/// control > target are supported.
Matrix cnot_matrix(int n, int control, int target);

/// ||U†U - I||_F, the diagnostic reported when a unitarity check fails.
double unitarity_defect(const Matrix& u);
bool is_unitary(const Matrix& u, double tol = kUnitaryTol);
bool is_special_unitary(const Matrix& u, double tol = kUnitaryTol,
                        double det_tol = kDetTol);

/// U / det(U)^{1/d} with the principal d-th root (arg in (-pi, pi]).
/// Throws std::invalid_argument when the input fails the unitarity check.
Matrix special_unitarize(const Matrix& u, double tol = kUnitaryTol);

/// f(V) = (1/2) ||V - U||_F^2, evaluated as d - Re Tr[U†V].
double frobenius_cost(const Matrix& v, const Matrix& u);

struct MetricReport {
  double frobenius_cost = 0.0;
  double hst_cost = 0.0;
  double frobenius_fidelity = 0.0;
};

/// All three metrics from the single trace Tr[V†U].
MetricReport metrics(const Matrix& v, const Matrix& u);

/// Haar-distributed special unitary on n qubits: complex Ginibre sample,
/// QR factorization, columns rescaled by the phases of R's diagonal, then
/// special_unitarize. Deterministic for a fixed seed.
Matrix haar_random(int n, std::uint64_t seed);

/// A double printed with 17 significant digits (round-trip exact).
std::string format_double(double v);

// Text format: line 1 "n <qubits>", then d^2 lines "<row> <col> <re> <im>"
// (0-indexed, row-major order required, duplicates rejected).
void write_unitary(std::ostream& out, const Matrix& u);
void write_unitary_file(const std::string& path, const Matrix& u);
Matrix read_unitary(std::istream& in);
Matrix read_unitary_file(const std::string& path);

}  // namespace aqc

#endif  // AQC_MATRIX_HPP
