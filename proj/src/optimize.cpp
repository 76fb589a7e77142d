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

#include "aqc/optimize.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>

namespace aqc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double cost_at(const Structure& s, const AngleVector& theta, const Matrix& u) {
  return frobenius_cost(assemble(s, theta), u);
}

void check_finite(double cost, long iteration, const char* who) {
  if (!std::isfinite(cost)) {
    throw std::runtime_error(std::string(who) + ": non-finite cost at iteration " +
                             std::to_string(iteration));
  }
}

// Angles in [0, 2pi)^3 with Rz(a) Ry(b) Rz(c) equal to g exactly (including
// sign), for det(g) = 1 inputs. The chart does not cover all of SU(2): for
// roughly half of the group only -g is representable, in which case this
// returns nullopt.
std::optional<std::array<double, 3>> su2_triple_in_range(const Gate2& g) {
  auto build = [](const std::array<double, 3>& t) -> Gate2 {
    return rz_matrix(t[0]) * ry_matrix(t[1]) * rz_matrix(t[2]);
  };
  auto accept = [&](const std::array<double, 3>& t)
      -> std::optional<std::array<double, 3>> {
    for (double v : t) {
      if (!(v >= 0.0 && v < kTwoPi)) return std::nullopt;
    }
    if ((build(t) - g).cwiseAbs().maxCoeff() < 1e-9) return t;
    return std::nullopt;
  };
  const double mag_bottom = std::abs(g(1, 1));
  const double mag_lower = std::abs(g(1, 0));
  // Diagonal: Rz(A+C) with A+C free mod 4 pi; split evenly to stay in range.
  if (mag_lower < 1e-12) {
    double span = 2.0 * std::arg(g(1, 1));
    span -= 4.0 * kPi * std::floor(span / (4.0 * kPi));
    if (auto t = accept({span / 2.0, 0.0, span / 2.0})) return t;
    return std::nullopt;
  }
  // Antidiagonal: Ry(pi) with A-C fixed mod 4 pi.
  if (mag_bottom < 1e-12) {
    const double diff = 2.0 * std::arg(g(1, 0));
    if (auto t = accept({diff >= 0 ? diff : 0.0, kPi, diff >= 0 ? 0.0 : -diff})) return t;
    return std::nullopt;
  }
  // Generic: A+C = sigma (mod 4 pi), A-C = delta (mod 4 pi), with the y angle
  // in either the [0, pi] chart or its 2 pi - y partner (which shifts sigma
  // by 2 pi).
  const double y1 = 2.0 * std::atan2(mag_lower, mag_bottom);
  const double sigma = 2.0 * std::arg(g(1, 1));
  const double delta = 2.0 * std::arg(g(1, 0));  // in (-2 pi, 2 pi]
  for (int chart = 0; chart < 2; ++chart) {
    const double y = chart == 0 ? y1 : kTwoPi - y1;
    double s = chart == 0 ? sigma : sigma + kTwoPi;
    s -= 4.0 * kPi * std::floor(s / (4.0 * kPi));
    if (auto t = accept({(s + delta) / 2.0, y, (s - delta) / 2.0})) return t;
  }
  return std::nullopt;
}

}  // namespace

Method method_from_name(const std::string& name) {
  if (name == "gd") return Method::Gd;
  if (name == "nesterov") return Method::Nesterov;
  if (name == "prox") return Method::Prox;
  throw std::invalid_argument("unknown optimizer: " + name);
}

std::string method_name(Method m) {
  switch (m) {
    case Method::Gd:
      return "gd";
    case Method::Nesterov:
      return "nesterov";
    case Method::Prox:
      return "prox";
  }
  return "?";
}

AngleVector random_angles(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, kTwoPi);
  AngleVector theta(count);
  for (int i = 0; i < count; ++i) theta[i] = uniform(rng);
  return theta;
}

AngleVector wrap_angles(const Structure& s, const AngleVector& theta) {
  AngleVector w(theta.size());
  long parity = 0;
  for (int k = 0; k < theta.size(); ++k) {
    double m = std::floor(theta[k] / kTwoPi);
    double v = theta[k] - m * kTwoPi;
    if (v >= kTwoPi) {
      v -= kTwoPi;
      m += 1;
    }
    if (v < 0) {
      v += kTwoPi;
      m -= 1;
    }
    w[k] = v;
    parity += std::lround(m);
  }
  if (parity % 2 != 0) {
    // An odd number of 2-pi shifts negated the assembled matrix. Restore it
    // by rewriting some qubit's initial triple to an in-range triple of its
    // negated block; when no triple admits one (the chart covers only one
    // sign of a generic SU(2) element) the result stays at -V, which every
    // reported metric except the raw pre-wrap cost is blind to.
    for (int q = 1; q <= s.qubits(); ++q) {
      const int base = 3 * (q - 1);
      const Gate2 block =
          rz_matrix(w[base]) * ry_matrix(w[base + 1]) * rz_matrix(w[base + 2]);
      if (const auto fixed = su2_triple_in_range(Gate2(-block))) {
        w[base] = (*fixed)[0];
        w[base + 1] = (*fixed)[1];
        w[base + 2] = (*fixed)[2];
        break;
      }
    }
  }
  return w;
}

namespace {

struct StepControl {
  double alpha = 0.0;
  double floor = 0.0;
  bool fixed = false;
};

StepControl make_step_control(const OptimizerConfig& cfg, int n, int length) {
  StepControl sc;
  sc.floor = 1.0 / smoothness_bound(n, length);
  sc.fixed = cfg.step > 0.0;
  sc.alpha = sc.fixed ? cfg.step : sc.floor;
  return sc;
}

OptimizeResult finish(const Structure& s, const Matrix& u, AngleVector theta,
                      double grad_norm, long iterations, bool converged) {
  OptimizeResult r;
  // The cost is the optimizer's achieved value, taken before wrapping; the
  // wrapped angles assemble to the same matrix up to a global sign.
  r.final_cost = cost_at(s, theta, u);
  r.theta = wrap_angles(s, theta);
  r.grad_norm = grad_norm;
  r.iterations = iterations;
  r.converged = converged;
  return r;
}

}  // namespace

OptimizeResult gd_from(const Structure& s, const Matrix& u, const OptimizerConfig& cfg,
                       AngleVector theta0, const IterationObserver& observer) {
  StepControl sc = make_step_control(cfg, s.qubits(), s.length());
  AngleVector theta = std::move(theta0);
  CostGradient cg = cost_and_gradient(s, theta, u);
  check_finite(cg.cost, 0, "gd");
  if (observer) observer(0, cg.cost);
  double grad_norm = cg.gradient.cwiseAbs().maxCoeff();
  if (grad_norm <= cfg.tolerance) return finish(s, u, theta, grad_norm, 0, true);

  long t = 0;
  bool converged = false;
  while (t < cfg.max_iters) {
    ++t;
    AngleVector next = theta - sc.alpha * cg.gradient;
    if (!sc.fixed) {
      double f_next = cost_at(s, next, u);
      while (f_next > cg.cost && sc.alpha > sc.floor) {
        sc.alpha = std::max(sc.alpha / 2.0, sc.floor);
        next = theta - sc.alpha * cg.gradient;
        f_next = cost_at(s, next, u);
      }
      sc.alpha *= 2.0;
    }
    theta = std::move(next);
    cg = cost_and_gradient(s, theta, u);
    check_finite(cg.cost, t, "gd");
    if (observer) observer(t, cg.cost);
    grad_norm = cg.gradient.cwiseAbs().maxCoeff();
    if (grad_norm <= cfg.tolerance) {
      converged = true;
      break;
    }
  }
  return finish(s, u, theta, grad_norm, t, converged);
}

OptimizeResult gd(const Structure& s, const Matrix& u, const OptimizerConfig& cfg,
                  const IterationObserver& observer) {
  return gd_from(s, u, cfg, random_angles(param_count(s), cfg.seed), observer);
}

OptimizeResult nesterov_from(const Structure& s, const Matrix& u,
                             const OptimizerConfig& cfg, AngleVector theta0,
                             const IterationObserver& observer) {
  StepControl sc = make_step_control(cfg, s.qubits(), s.length());
  AngleVector theta = std::move(theta0);
  CostGradient cg0 = cost_and_gradient(s, theta, u);
  check_finite(cg0.cost, 0, "nesterov");
  if (observer) observer(0, cg0.cost);
  double grad_norm = cg0.gradient.cwiseAbs().maxCoeff();
  if (grad_norm <= cfg.tolerance) return finish(s, u, theta, grad_norm, 0, true);

  AngleVector theta_prev = theta;
  double f_curr = cg0.cost;
  long momentum = 0;  // steps since the last restart
  long t = 0;
  bool converged = false;
  while (t < cfg.max_iters) {
    ++t;
    const double beta =
        static_cast<double>(momentum) / (static_cast<double>(momentum) + 3.0);
    const AngleVector y = theta + beta * (theta - theta_prev);
    const CostGradient cgy = cost_and_gradient(s, y, u);
    check_finite(cgy.cost, t, "nesterov");
    grad_norm = cgy.gradient.cwiseAbs().maxCoeff();
    if (grad_norm <= cfg.tolerance) {
      theta = y;
      converged = true;
      if (observer) observer(t, cgy.cost);
      break;
    }
    AngleVector next = y - sc.alpha * cgy.gradient;
    double f_next = cost_at(s, next, u);
    if (!sc.fixed) {
      while (f_next > f_curr && sc.alpha > sc.floor) {
        sc.alpha = std::max(sc.alpha / 2.0, sc.floor);
        next = y - sc.alpha * cgy.gradient;
        f_next = cost_at(s, next, u);
      }
    }
    check_finite(f_next, t, "nesterov");
    if (f_next > f_curr) {
      // Function-value adaptive restart: drop the momentum and retry from
      // the current iterate.
      momentum = 0;
      theta_prev = theta;
      if (observer) observer(t, f_curr);
      continue;
    }
    theta_prev = theta;
    theta = std::move(next);
    f_curr = f_next;
    ++momentum;
    if (!sc.fixed) sc.alpha *= 2.0;
    if (observer) observer(t, f_curr);
  }
  return finish(s, u, theta, grad_norm, t, converged);
}

OptimizeResult nesterov(const Structure& s, const Matrix& u, const OptimizerConfig& cfg,
                        const IterationObserver& observer) {
  return nesterov_from(s, u, cfg, random_angles(param_count(s), cfg.seed), observer);
}

namespace {

double group_penalty(const Structure& s, const AngleVector& theta, double lambda) {
  if (lambda == 0.0) return 0.0;
  double p = 0.0;
  for (int ell = 1; ell <= s.length(); ++ell) {
    p += theta.segment(unit_angle_base(s.qubits(), ell), 4).norm();
  }
  return lambda * p;
}

// One proximal step: plain gradient step on the 3n initial angles, gradient
// step followed by block soft-thresholding on each unit group; thresholded
// groups are stored as exact zeros.
AngleVector prox_step(const Structure& s, const AngleVector& theta,
                      const Eigen::VectorXd& gradient, double alpha, double lambda) {
  const int n = s.qubits();
  AngleVector next = theta - alpha * gradient;
  for (int ell = 1; ell <= s.length(); ++ell) {
    const int base = unit_angle_base(n, ell);
    auto group = next.segment(base, 4);
    const double norm = group.norm();
    if (norm <= alpha * lambda) {
      group.setZero();
    } else {
      group *= (norm - alpha * lambda) / norm;
    }
  }
  return next;
}

}  // namespace

OptimizeResult prox_group_lasso_from(const Structure& s, const Matrix& u,
                                     const OptimizerConfig& cfg, AngleVector theta0,
                                     const IterationObserver& observer) {
  if (cfg.lambda < 0) throw std::invalid_argument("prox: lambda must be nonnegative");
  StepControl sc = make_step_control(cfg, s.qubits(), s.length());
  AngleVector theta = std::move(theta0);
  CostGradient cg = cost_and_gradient(s, theta, u);
  check_finite(cg.cost, 0, "prox");
  double objective = cg.cost + group_penalty(s, theta, cfg.lambda);
  if (observer) observer(0, objective);

  long t = 0;
  // The regularized objective is nonsmooth, so there is no gradient-norm
  // stop; the budget is the iteration count.
  while (t < cfg.max_iters) {
    ++t;
    AngleVector next = prox_step(s, theta, cg.gradient, sc.alpha, cfg.lambda);
    double obj_next = cost_at(s, next, u) + group_penalty(s, next, cfg.lambda);
    if (!sc.fixed) {
      while (obj_next > objective && sc.alpha > sc.floor) {
        sc.alpha = std::max(sc.alpha / 2.0, sc.floor);
        next = prox_step(s, theta, cg.gradient, sc.alpha, cfg.lambda);
        obj_next = cost_at(s, next, u) + group_penalty(s, next, cfg.lambda);
      }
      sc.alpha *= 2.0;
    }
    theta = std::move(next);
    cg = cost_and_gradient(s, theta, u);
    check_finite(cg.cost, t, "prox");
    objective = cg.cost + group_penalty(s, theta, cfg.lambda);
    if (observer) observer(t, objective);
  }

  const double grad_norm = cg.gradient.cwiseAbs().maxCoeff();
  OptimizeResult r = finish(s, u, theta, grad_norm, t, false);
  for (int ell = 1; ell <= s.length(); ++ell) {
    const int base = unit_angle_base(s.qubits(), ell);
    if (r.theta.segment(base, 4).isZero(0.0)) r.zero_groups.push_back(ell);
  }
  return r;
}

OptimizeResult prox_group_lasso(const Structure& s, const Matrix& u,
                                const OptimizerConfig& cfg,
                                const IterationObserver& observer) {
  return prox_group_lasso_from(s, u, cfg, random_angles(param_count(s), cfg.seed),
                               observer);
}

OptimizeResult optimize(const Structure& s, const Matrix& u, const OptimizerConfig& cfg,
                        const IterationObserver& observer) {
  switch (cfg.method) {
    case Method::Gd:
      return gd(s, u, cfg, observer);
    case Method::Nesterov:
      return nesterov(s, u, cfg, observer);
    case Method::Prox:
      return prox_group_lasso(s, u, cfg, observer);
  }
  throw std::logic_error("optimize: bad method");
}

Eigen::VectorXcd stationary_spectrum(const Structure& s, const AngleVector& theta,
                                     const Matrix& u) {
  const Matrix m = assemble(s, theta).adjoint() * u;
  Eigen::ComplexEigenSolver<Matrix> solver(m, false);
  return solver.eigenvalues();
}

}  // namespace aqc
