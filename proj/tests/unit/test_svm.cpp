// Copyright 2026 The RFA Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "rfa/error.hpp"
#include "rfa/svm.hpp"

using rfa::Matrix;

namespace {

struct Problem {
  Matrix x;
  std::vector<int> y;
};

// Two overlapping Gaussian clouds, so some multipliers end at C.
Problem overlapping(std::size_t n, std::size_t d, double shift, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z(0.0, 1.0);
  Problem p{Matrix(n, d), {}};
  for (std::size_t i = 0; i < n; ++i) {
    const int label = i % 2 ? 1 : -1;
    p.y.push_back(label);
    for (std::size_t k = 0; k < d; ++k) p.x(i, k) = z(rng) + (k == 0 ? label * shift : 0.0);
  }
  return p;
}

}  // namespace

TEST_CASE("two points on a line") {
  Matrix gram(2, 2);
  gram(0, 0) = gram(1, 1) = 1.0;
  gram(0, 1) = gram(1, 0) = -1.0;  // linear kernel of x = +1 and x = -1
  const std::vector<int> y{1, -1};
  const auto sol = rfa::solve_binary_svm(gram, y, {.c = 10.0});
  CHECK(sol.converged);
  CHECK(sol.alpha[0] == doctest::Approx(0.5));
  CHECK(sol.alpha[1] == doctest::Approx(0.5));
  CHECK(sol.rho == doctest::Approx(0.0));
  CHECK(sol.objective == doctest::Approx(-0.5));

  const auto capped = rfa::solve_binary_svm(gram, y, {.c = 0.2});
  CHECK(capped.alpha[0] == doctest::Approx(0.2));
  CHECK(capped.objective == doctest::Approx(2 * 0.04 - 0.4));
}

TEST_CASE("KKT gap of the zero start") {
  const auto p = overlapping(10, 3, 1.0, 1);
  const Matrix k = rfa::rbf_kernel_matrix(p.x, 0.5);
  const std::vector<double> zero(10, 0.0);
  CHECK(rfa::kkt_gap(k, p.y, zero, 1.0) == doctest::Approx(2.0));
  CHECK(rfa::dual_objective(k, p.y, zero) == 0.0);
}

TEST_CASE("solver agrees with a generic QP route") {
  struct Case {
    std::size_t n;
    double shift, gamma, c;
    std::uint64_t seed;
  };
  for (const Case cs : {Case{40, 0.8, 0.5, 1.0, 2}, Case{80, 1.5, 0.1, 10.0, 3}, Case{120, 0.5, 1.0, 0.5, 4},
                        Case{200, 1.0, 0.2, 2.0, 5}}) {
    CAPTURE(cs.n);
    const auto p = overlapping(cs.n, 4, cs.shift, cs.seed);
    const Matrix k = rfa::rbf_kernel_matrix(p.x, cs.gamma);
    const auto sol = rfa::solve_binary_svm(k, p.y, {.c = cs.c});
    CHECK(sol.converged);
    CHECK(sol.kkt_gap < 1e-3);
    CHECK(rfa::kkt_gap(k, p.y, sol.alpha, cs.c) == doctest::Approx(sol.kkt_gap));
    double balance = 0.0;
    for (std::size_t i = 0; i < cs.n; ++i) {
      CHECK(sol.alpha[i] >= 0.0);
      CHECK(sol.alpha[i] <= cs.c);
      balance += p.y[i] * sol.alpha[i];
    }
    CHECK(std::abs(balance) < 1e-9);
    CHECK(sol.objective == doctest::Approx(rfa::dual_objective(k, p.y, sol.alpha)).epsilon(1e-12));
    const double oracle = rfa::testing::qp_oracle_objective(k, p.y, cs.c);
    CHECK(std::abs(sol.objective - oracle) <= 1e-3 * std::abs(oracle));
  }
}

TEST_CASE("decision values separate a separable problem") {
  const auto p = overlapping(60, 2, 4.0, 8);
  const Matrix k = rfa::rbf_kernel_matrix(p.x, 0.5);
  const auto sol = rfa::solve_binary_svm(k, p.y, {.c = 100.0});
  for (std::size_t i = 0; i < 60; ++i) {
    double f = -sol.rho;
    for (std::size_t j = 0; j < 60; ++j) f += sol.alpha[j] * p.y[j] * k(i, j);
    CHECK(f * p.y[i] > 0.0);
  }
}

TEST_CASE("invalid problems are rejected") {
  const Matrix k(3, 3, 1.0);
  CHECK_THROWS_AS(rfa::solve_binary_svm(k, std::vector<int>{1, 1, 1}), rfa::Error);
  CHECK_THROWS_AS(rfa::solve_binary_svm(k, std::vector<int>{1, 0, -1}), rfa::Error);
  CHECK_THROWS_AS(rfa::solve_binary_svm(k, std::vector<int>{1, -1}), rfa::Error);
  CHECK_THROWS_AS(rfa::solve_binary_svm(k, std::vector<int>{1, -1, 1}, {.c = 0.0}), rfa::Error);
}

TEST_CASE("kernel helpers") {
  const auto p = overlapping(30, 5, 1.0, 12);
  const Matrix d2 = rfa::squared_distances(p.x);
  CHECK(d2 == rfa::serial::squared_distances(p.x));
  CHECK(rfa::rbf_kernel_matrix(p.x, 0.3) == rfa::serial::rbf_kernel_matrix(p.x, 0.3));
  for (std::size_t i = 0; i < 30; ++i) {
    CHECK(d2(i, i) == 0.0);
    for (std::size_t j = 0; j < 30; ++j) CHECK(d2(i, j) == d2(j, i));
  }
  double manual = 0.0;
  for (std::size_t k = 0; k < 5; ++k) manual += (p.x(3, k) - p.x(7, k)) * (p.x(3, k) - p.x(7, k));
  CHECK(d2(3, 7) == doctest::Approx(manual));

  const std::vector<std::size_t> index{4, 0, 9};
  const Matrix sub = rfa::rbf_from_distances(d2, index, 0.3);
  const Matrix full = rfa::rbf_kernel_matrix(p.x, 0.3);
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) CHECK(sub(a, b) == doctest::Approx(full(index[a], index[b])));
}
