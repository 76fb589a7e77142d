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

#ifndef AQC_GRADIENT_HPP
#define AQC_GRADIENT_HPP

#include "aqc/circuit.hpp"

#include <vector>

namespace aqc {

/// Layer matrices of V_ct(theta) together with all partial products, the
/// memory-for-flops scheme behind the O(L d^3) gradient.
///
/// layers[0] is the initial rotation layer and layers[m], m >= 1, the m-th
/// CNOT unit. pre[i] = layers[i-1]···layers[0] (pre[0] = I) and
/// post[i] = layers[L]···layers[i] (post[L+1] = I), so that
/// post[i] * pre[i] = V_ct(theta) at every split point i.
struct GradientWorkspace {
  std::vector<Matrix> layers;
  std::vector<Matrix> pre;
  std::vector<Matrix> post;

  const Matrix& value() const { return pre.back(); }
};

GradientWorkspace build_workspace(const Structure& s, const AngleVector& theta);

struct CostGradient {
  double cost = 0.0;
  Eigen::VectorXd gradient;
};

/// f_ct(theta) = (1/2)||V_ct(theta) - U||_F^2 and its analytic gradient,
/// grad_k = -Re Tr[(dV/dtheta_k)† U], computed with prefix/suffix reuse in
/// O(L d^3) flops and O(L d^2) storage.
CostGradient cost_and_gradient(const Structure& s, const AngleVector& theta,
                               const Matrix& u);

/// (3n + 4L - 3/4) 2^n, the Hessian spectral bound; its reciprocal is the
/// default step size.
double smoothness_bound(int n, int length);

/// Max deviation of the central-finite-difference diagonal second
/// derivatives from the identity d/4 - (1/8)||V - U||_F^2. Diagnostic only.
double hessian_diagonal_check(const Structure& s, const AngleVector& theta,
                              const Matrix& u, double step = 1e-4);

}  // namespace aqc

#endif  // AQC_GRADIENT_HPP
