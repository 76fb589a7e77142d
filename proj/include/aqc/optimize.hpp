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

#ifndef AQC_OPTIMIZE_HPP
#define AQC_OPTIMIZE_HPP

#include "aqc/gradient.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace aqc {

enum class Method { Gd, Nesterov, Prox };

Method method_from_name(const std::string& name);
std::string method_name(Method m);

struct OptimizerConfig {
  Method method = Method::Nesterov;
  /// Step size; 0 selects auto: 1/smoothness_bound, doubled while descent
  /// holds and halved back (never below the bound) when it does not.
  double step = 0.0;
  /// Stopping tolerance on the gradient infinity norm (gd/nesterov).
  double tolerance = 1e-6;
  long max_iters = 50000;
  /// Group-LASSO weight; prox only.
  double lambda = 0.0;
  std::uint64_t seed = 0;
};

struct OptimizeResult {
  AngleVector theta;
  double final_cost = 0.0;
  double grad_norm = 0.0;
  long iterations = 0;
  bool converged = false;
  /// 1-based unit indices whose four angles are stored as exact zeros
  /// (prox only).
  std::vector<int> zero_groups;
};

/// Called once per iteration with the objective value (cost, or cost plus
/// the group penalty for prox). Used by tests to assert per-iteration
/// descent.
using IterationObserver = std::function<void(long iteration, double objective)>;

/// Uniform draw from [0, 2pi)^p, deterministic for a fixed seed.
AngleVector random_angles(int count, std::uint64_t seed);

/// Wraps every angle into [0, 2pi) while preserving the assembled matrix
/// exactly: each 2-pi shift negates one rotation factor, so when the total
/// shift parity is odd the initial triple of qubit 1 is rewritten to the
/// equivalent in-range triple of its negated SU(2) block.
AngleVector wrap_angles(const Structure& s, const AngleVector& theta);

OptimizeResult gd(const Structure& s, const Matrix& u, const OptimizerConfig& cfg,
                  const IterationObserver& observer = {});
OptimizeResult gd_from(const Structure& s, const Matrix& u, const OptimizerConfig& cfg,
                       AngleVector theta0, const IterationObserver& observer = {});

OptimizeResult nesterov(const Structure& s, const Matrix& u, const OptimizerConfig& cfg,
                        const IterationObserver& observer = {});
OptimizeResult nesterov_from(const Structure& s, const Matrix& u,
                             const OptimizerConfig& cfg, AngleVector theta0,
                             const IterationObserver& observer = {});

OptimizeResult prox_group_lasso(const Structure& s, const Matrix& u,
                                const OptimizerConfig& cfg,
                                const IterationObserver& observer = {});
OptimizeResult prox_group_lasso_from(const Structure& s, const Matrix& u,
                                     const OptimizerConfig& cfg, AngleVector theta0,
                                     const IterationObserver& observer = {});

/// Runs cfg.method from a seeded random start.
OptimizeResult optimize(const Structure& s, const Matrix& u, const OptimizerConfig& cfg,
                        const IterationObserver& observer = {});

/// Eigenvalues of V_ct(theta)† U, the stationary-point diagnostic: at a
/// phase-aligned global minimum they collapse to a single e^{i alpha}.
Eigen::VectorXcd stationary_spectrum(const Structure& s, const AngleVector& theta,
                                     const Matrix& u);

}  // namespace aqc

#endif  // AQC_OPTIMIZE_HPP
