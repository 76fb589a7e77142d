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

#include "aqc/gradient.hpp"

#include <cmath>
#include <stdexcept>

namespace aqc {

namespace {

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

// <A, B> = Tr[A† B].
Complex trace_inner(const Matrix& a, const Matrix& b) {
  return (a.conjugate().cwiseProduct(b)).sum();
}

// The initial layer with the rotation of one angle slot replaced by its
// Pauli-inserted derivative factor (without the -i/2 constant).
Matrix initial_layer_sigma(int n, const AngleVector& theta, int angle_index) {
  Matrix m = Matrix::Identity(1, 1);
  for (int q = 1; q <= n; ++q) {
    const int base = 3 * (q - 1);
    Gate2 u = rz_matrix(theta[base]) * ry_matrix(theta[base + 1]) *
              rz_matrix(theta[base + 2]);
    if (angle_index == base) {
      u = pauli_z() * u;
    } else if (angle_index == base + 1) {
      u = rz_matrix(theta[base]) * pauli_y() * ry_matrix(theta[base + 1]) *
          rz_matrix(theta[base + 2]);
    } else if (angle_index == base + 2) {
      u = u * pauli_z();
    }
    m = kron(m, Matrix(u));
  }
  return m;
}

}  // namespace

GradientWorkspace build_workspace(const Structure& s, const AngleVector& theta) {
  if (theta.size() != param_count(s)) {
    throw std::invalid_argument("build_workspace: angle count mismatch");
  }
  const int n = s.qubits();
  const int len = s.length();
  const long d = 1L << n;

  GradientWorkspace ws;
  ws.layers.reserve(len + 1);
  ws.layers.push_back(initial_layer(n, theta));
  for (int ell = 1; ell <= len; ++ell) {
    const auto& u = s.unit(ell);
    const int base = unit_angle_base(n, ell);
    ws.layers.push_back(cnot_unit_matrix(n, u.control, u.target, theta[base],
                                         theta[base + 1], theta[base + 2],
                                         theta[base + 3]));
  }

  ws.pre.resize(len + 2);
  ws.pre[0] = Matrix::Identity(d, d);
  for (int i = 0; i <= len; ++i) ws.pre[i + 1] = ws.layers[i] * ws.pre[i];

  ws.post.resize(len + 2);
  ws.post[len + 1] = Matrix::Identity(d, d);
  for (int i = len; i >= 0; --i) ws.post[i] = ws.post[i + 1] * ws.layers[i];

  return ws;
}

CostGradient cost_and_gradient(const Structure& s, const AngleVector& theta,
                               const Matrix& u) {
  const int n = s.qubits();
  const long d = 1L << n;
  if (u.rows() != d || u.cols() != d) {
    throw std::invalid_argument("cost_and_gradient: target dimension mismatch");
  }
  const GradientWorkspace ws = build_workspace(s, theta);

  CostGradient out;
  out.gradient.resize(theta.size());
  out.cost = static_cast<double>(d) - trace_inner(u, ws.value()).real();

  // grad_k = -Re Tr[(dV/dtheta_k)† U] with dV = post[m+1] dlayer_m pre[m].
  // Writing dlayer = -(i/2) layer_sigma gives grad_k = (1/2) Im Tr[layer_sigma† G_m]
  // with G_m = post[m+1]† U pre[m]†.

  // Initial layer (3n angles).
  {
    const Matrix g0 = ws.post[1].adjoint() * u;  // pre[0] = I
    for (int k = 0; k < 3 * n; ++k) {
      out.gradient[k] = 0.5 * trace_inner(initial_layer_sigma(n, theta, k), g0).imag();
    }
  }

  for (int ell = 1; ell <= s.length(); ++ell) {
    const auto& unit = s.unit(ell);
    const int j = unit.control, k = unit.target;
    const int base = unit_angle_base(n, ell);
    const Gate2 uc = rz_matrix(theta[base + 1]) * ry_matrix(theta[base]);
    const Gate2 ut = rx_matrix(theta[base + 3]) * ry_matrix(theta[base + 2]);
    const Matrix cnot = cnot_matrix(n, j, k);
    const Matrix g = ws.post[ell + 1].adjoint() * u * ws.pre[ell].adjoint();
    const Matrix g_cnot = g * cnot;  // CNOT is self-adjoint
    // Control-side angles: layer_sigma = embed(uc', j) embed(ut, k) CNOT, so
    // Tr[layer_sigma† G] = Tr[embed(uc', j)† (G CNOT embed(ut, k)†)].
    const Matrix h_c = g_cnot * embed_single_qubit(n, k, ut.adjoint());
    out.gradient[base] =
        0.5 * trace_inner(embed_single_qubit(n, j, uc * pauli_y()), h_c).imag();
    out.gradient[base + 1] =
        0.5 * trace_inner(embed_single_qubit(n, j, pauli_z() * uc), h_c).imag();
    // Target-side angles.
    const Matrix h_t = embed_single_qubit(n, j, uc.adjoint()) * g_cnot;
    out.gradient[base + 2] =
        0.5 * trace_inner(embed_single_qubit(n, k, ut * pauli_y()), h_t).imag();
    out.gradient[base + 3] =
        0.5 * trace_inner(embed_single_qubit(n, k, pauli_x() * ut), h_t).imag();
  }
  return out;
}

double smoothness_bound(int n, int length) {
  if (n < 1 || length < 0) {
    throw std::invalid_argument("smoothness_bound: bad arguments");
  }
  return (3.0 * n + 4.0 * length - 0.75) * std::pow(2.0, n);
}

double hessian_diagonal_check(const Structure& s, const AngleVector& theta,
                              const Matrix& u, double step) {
  const long d = 1L << s.qubits();
  const double f0 = frobenius_cost(assemble(s, theta), u);
  const double identity_value = 0.25 * static_cast<double>(d) - 0.25 * f0;
  double worst = 0.0;
  AngleVector probe = theta;
  for (int k = 0; k < theta.size(); ++k) {
    probe[k] = theta[k] + step;
    const double fp = frobenius_cost(assemble(s, probe), u);
    probe[k] = theta[k] - step;
    const double fm = frobenius_cost(assemble(s, probe), u);
    probe[k] = theta[k];
    const double second = (fp - 2.0 * f0 + fm) / (step * step);
    worst = std::max(worst, std::abs(second - identity_value));
  }
  return worst;
}

}  // namespace aqc
