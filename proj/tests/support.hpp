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
//
// Test-only oracles, kept independent of the implementation paths they
// check: central finite differences for derivatives and a bit-vector
// simulator for CNOT words.

#ifndef AQC_TESTS_SUPPORT_HPP
#define AQC_TESTS_SUPPORT_HPP

#include "aqc/circuit.hpp"
#include "aqc/gradient.hpp"

#include <cstdint>
#include <vector>

namespace aqc::testing {

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

/// Central finite-difference gradient of f_ct at theta.
inline Eigen::VectorXd fd_gradient(const Structure& s, const AngleVector& theta,
                                   const Matrix& u, double h = 1e-5) {
  Eigen::VectorXd g(theta.size());
  AngleVector probe = theta;
  for (int k = 0; k < theta.size(); ++k) {
    probe[k] = theta[k] + h;
    const double fp = frobenius_cost(assemble(s, probe), u);
    probe[k] = theta[k] - h;
    const double fm = frobenius_cost(assemble(s, probe), u);
    probe[k] = theta[k];
    g[k] = (fp - fm) / (2.0 * h);
  }
  return g;
}

/// Central finite-difference Hessian (symmetric by construction).
inline Eigen::MatrixXd fd_hessian(const Structure& s, const AngleVector& theta,
                                  const Matrix& u, double h = 1e-4) {
  const int p = static_cast<int>(theta.size());
  Eigen::MatrixXd hess(p, p);
  AngleVector probe = theta;
  auto cost = [&](const AngleVector& t) { return frobenius_cost(assemble(s, t), u); };
  const double f0 = cost(theta);
  for (int i = 0; i < p; ++i) {
    probe[i] = theta[i] + h;
    const double fp = cost(probe);
    probe[i] = theta[i] - h;
    const double fm = cost(probe);
    probe[i] = theta[i];
    hess(i, i) = (fp - 2.0 * f0 + fm) / (h * h);
  }
  for (int i = 0; i < p; ++i) {
    for (int j = i + 1; j < p; ++j) {
      probe[i] = theta[i] + h;
      probe[j] = theta[j] + h;
      const double fpp = cost(probe);
      probe[j] = theta[j] - h;
      const double fpm = cost(probe);
      probe[i] = theta[i] - h;
      probe[j] = theta[j] + h;
      const double fmp = cost(probe);
      probe[j] = theta[j] - h;
      const double fmm = cost(probe);
      probe[i] = theta[i];
      probe[j] = theta[j];
      hess(i, j) = hess(j, i) = (fpp - fpm - fmp + fmm) / (4.0 * h * h);
    }
  }
  return hess;
}

/// Image of an n-bit basis state under a CNOT word (bit q-1 holds qubit q),
/// simulated gate by gate.
inline std::uint64_t cnot_word_image(const std::vector<CnotUnit>& word,
                                     std::uint64_t bits) {
  for (const auto& u : word) {
    if ((bits >> (u.control - 1)) & 1ULL) bits ^= 1ULL << (u.target - 1);
  }
  return bits;
}

/// Functional equality of two CNOT words on all 2^n basis states.
inline bool cnot_words_equal(int n, const std::vector<CnotUnit>& a,
                             const std::vector<CnotUnit>& b) {
  for (std::uint64_t x = 0; x < (1ULL << n); ++x) {
    if (cnot_word_image(a, x) != cnot_word_image(b, x)) return false;
  }
  return true;
}

}  // namespace aqc::testing

#endif  // AQC_TESTS_SUPPORT_HPP
