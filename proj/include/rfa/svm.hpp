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

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rfa/matrix.hpp"

namespace rfa {

double squared_distance(std::span<const double> a, std::span<const double> b);

/// Pairwise squared Euclidean distances between the rows of `x`.
Matrix squared_distances(const Matrix& x);

/// K_ij = exp(-gamma * |x_i - x_j|^2).
Matrix rbf_kernel_matrix(const Matrix& x, double gamma);

/// RBF kernel on the rows/columns `index` of a precomputed distance matrix.
Matrix rbf_from_distances(const Matrix& d2, std::span<const std::size_t> index, double gamma);

namespace serial {

Matrix squared_distances(const Matrix& x);
Matrix rbf_kernel_matrix(const Matrix& x, double gamma);

}  // namespace serial

struct BinarySvmOptions {
  double c = 1.0;
  double tolerance = 1e-3;         // stop when m(alpha) - M(alpha) < tolerance
  std::size_t max_iterations = 0;  // 0 picks max(10^7, 100 n)
};

/// Solution of the C-SVC dual
///   min 1/2 a'Qa - e'a   s.t. 0 <= a_i <= C, y'a = 0,  Q_ij = y_i y_j K_ij.
/// The decision function is f(x) = sum_i a_i y_i K(x_i, x) - rho.
struct BinarySvmSolution {
  std::vector<double> alpha;
  double rho = 0.0;
  double objective = 0.0;
  std::size_t iterations = 0;
  double kkt_gap = 0.0;
  bool converged = false;
};

/// SMO with second-order working-set selection. `labels` holds +1 / -1.
BinarySvmSolution solve_binary_svm(const Matrix& gram, std::span<const int> labels,
                                   const BinarySvmOptions& opts = {});

/// Maximal KKT violation m(alpha) - M(alpha), recomputed from scratch.
double kkt_gap(const Matrix& gram, std::span<const int> labels,
               std::span<const double> alpha, double c);

double dual_objective(const Matrix& gram, std::span<const int> labels,
                      std::span<const double> alpha);

}  // namespace rfa
