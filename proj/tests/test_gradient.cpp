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

#include "aqc/structures.hpp"
#include "support.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <numbers>
#include <random>

using namespace aqc;
using aqc::testing::fd_gradient;
using aqc::testing::fd_hessian;
using aqc::testing::max_abs;

namespace {

constexpr double kPi = std::numbers::pi;

Structure random_structure(int n, int length, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick_j(1, n - 1);
  std::vector<CnotUnit> units;
  for (int i = 0; i < length; ++i) {
    const int j = pick_j(rng);
    std::uniform_int_distribution<int> pick_k(j + 1, n);
    units.push_back({j, pick_k(rng)});
  }
  return Structure(n, units);
}

AngleVector random_theta(int count, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uniform(0.0, 2 * kPi);
  AngleVector theta(count);
  for (int i = 0; i < count; ++i) theta[i] = uniform(rng);
  return theta;
}

double relative_component_error(const Eigen::VectorXd& analytic,
                                const Eigen::VectorXd& reference) {
  double worst = 0.0;
  for (int k = 0; k < analytic.size(); ++k) {
    worst = std::max(worst, std::abs(analytic[k] - reference[k]) /
                                std::max(1.0, std::abs(reference[k])));
  }
  return worst;
}

}  // namespace

TEST_CASE("workspace splits multiply back to the assembled matrix", "[gradient]") {
  std::mt19937_64 rng(1);
  const Structure s = random_structure(3, 6, rng);
  const AngleVector theta = random_theta(param_count(s), rng);
  const GradientWorkspace ws = build_workspace(s, theta);
  const Matrix v = assemble(s, theta);
  REQUIRE(max_abs(ws.value() - v) <= 1e-12);
  for (std::size_t i = 0; i < ws.pre.size(); ++i) {
    REQUIRE(max_abs(ws.post[i] * ws.pre[i] - v) <= 1e-9);
  }
}

TEST_CASE("gradient vanishes at the identity compilation", "[gradient]") {
  const Structure s(2, {});
  const AngleVector theta = AngleVector::Zero(6);
  const auto cg = cost_and_gradient(s, theta, Matrix::Identity(4, 4));
  REQUIRE(cg.cost == Catch::Approx(0.0).margin(1e-12));
  REQUIRE(cg.gradient.cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("gradient matches central finite differences", "[gradient]") {
  std::mt19937_64 rng(2);
  const Structure s = random_structure(3, 5, rng);
  const AngleVector theta = random_theta(param_count(s), rng);
  const Matrix u = haar_random(3, 99);
  const auto cg = cost_and_gradient(s, theta, u);
  REQUIRE(cg.cost == Catch::Approx(frobenius_cost(assemble(s, theta), u)).margin(1e-10));
  REQUIRE(relative_component_error(cg.gradient, fd_gradient(s, theta, u)) <= 1e-6);
}

TEST_CASE("gradient-FD agreement across 100 random instances", "[gradient]") {
  std::mt19937_64 rng(3);
  double worst = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const Structure s =
        n == 1 ? Structure(1, {}) : random_structure(n, static_cast<int>(rng() % 21), rng);
    const AngleVector theta = random_theta(param_count(s), rng);
    const Matrix u = haar_random(s.qubits(), rng());
    const auto cg = cost_and_gradient(s, theta, u);
    worst =
        std::max(worst, relative_component_error(cg.gradient, fd_gradient(s, theta, u)));
  }
  INFO("max relative component error " << worst);
  REQUIRE(worst <= 1e-6);
}

TEST_CASE("gradient negates under a 2pi shift of one angle", "[gradient]") {
  std::mt19937_64 rng(4);
  const Structure s = random_structure(3, 4, rng);
  const AngleVector theta = random_theta(param_count(s), rng);
  const Matrix u = haar_random(3, 5);
  const auto base = cost_and_gradient(s, theta, u);
  for (int k : {0, 7, param_count(s) - 1}) {
    AngleVector shifted = theta;
    shifted[k] += 2 * kPi;
    const auto moved = cost_and_gradient(s, shifted, u);
    REQUIRE((moved.gradient + base.gradient).cwiseAbs().maxCoeff() <= 1e-9);
    shifted[k] += 2 * kPi;
    const auto back = cost_and_gradient(s, shifted, u);
    REQUIRE((back.gradient - base.gradient).cwiseAbs().maxCoeff() <= 1e-9);
  }
}

TEST_CASE("smoothness_bound formula", "[gradient]") {
  REQUIRE(smoothness_bound(3, 14) == Catch::Approx(514.0));
  REQUIRE(smoothness_bound(1, 0) == Catch::Approx(4.5));
  for (int length = 0; length < 5; ++length) {
    REQUIRE(smoothness_bound(3, length + 1) > smoothness_bound(3, length));
  }
}

TEST_CASE("diagonal Hessian identity at special points", "[gradient]") {
  // V(theta) = U exactly: every diagonal entry is d/4.
  const Structure s(2, {});
  AngleVector theta(6);
  theta << 0.4, 1.2, 2.2, 5.1, 0.7, 3.3;
  const Matrix u = assemble(s, theta);
  REQUIRE(hessian_diagonal_check(s, theta, u) <= 1e-5);

  // V = -U for n = 1, L = 0: diagonal = -d/4; the identity still holds.
  const Structure s1(1, {});
  AngleVector t1(3);
  t1 << kPi, 0.0, kPi;  // Rz(pi)Rz(pi) = -I
  const Matrix u1 = Matrix::Identity(2, 2);
  REQUIRE(frobenius_cost(assemble(s1, t1), u1) == Catch::Approx(4.0).margin(1e-12));
  REQUIRE(hessian_diagonal_check(s1, t1, u1) <= 1e-5);
  // Direct check of the identity value d/4 - f/4 = -d/4 at f = 2d.
  const auto fd = fd_hessian(s1, t1, u1, 1e-4);
  for (int k = 0; k < 3; ++k) {
    REQUIRE(fd(k, k) == Catch::Approx(-0.5).margin(1e-5));
  }
}

TEST_CASE("diagonal Hessian identity at random points", "[gradient]") {
  std::mt19937_64 rng(6);
  const Structure s = random_structure(3, 4, rng);
  const AngleVector theta = random_theta(param_count(s), rng);
  const Matrix u = haar_random(3, 7);
  REQUIRE(hessian_diagonal_check(s, theta, u, 1e-4) <= 1e-4);
}

TEST_CASE("finite-difference Hessian eigenvalues within the spectral bound",
          "[gradient]") {
  std::mt19937_64 rng(8);
  for (int rep = 0; rep < 3; ++rep) {
    const Structure s = random_structure(3, 3, rng);
    const AngleVector theta = random_theta(param_count(s), rng);
    const Matrix u = haar_random(3, rng());
    const Eigen::MatrixXd h = fd_hessian(s, theta, u, 1e-4);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
    const double bound = smoothness_bound(s.qubits(), s.length());
    REQUIRE(eig.eigenvalues().minCoeff() >= -bound - 1e-3);
    REQUIRE(eig.eigenvalues().maxCoeff() <= bound + 1e-3);
  }
}
