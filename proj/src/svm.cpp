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

#include "rfa/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rfa/error.hpp"

namespace rfa {
namespace {

constexpr double kTau = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

Matrix squared_distances(const Matrix& x) {
  const std::size_t n = x.rows();
  Matrix d2(n, n);
  const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t ii = 0; ii < rows; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    for (std::size_t j = 0; j < i; ++j) {
      const double v = squared_distance(x.row(i), x.row(j));
      d2(i, j) = v;
      d2(j, i) = v;
    }
  }
  return d2;
}

Matrix rbf_kernel_matrix(const Matrix& x, double gamma) {
  Matrix k = squared_distances(x);
  auto values = k.data();
  const auto count = static_cast<std::ptrdiff_t>(values.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) values[i] = std::exp(-gamma * values[i]);
  return k;
}

Matrix rbf_from_distances(const Matrix& d2, std::span<const std::size_t> index, double gamma) {
  const std::size_t n = index.size();
  Matrix k(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto src = d2.row(index[i]);
    auto dst = k.row(i);
    for (std::size_t j = 0; j < n; ++j) dst[j] = std::exp(-gamma * src[index[j]]);
  }
  return k;
}

namespace serial {

Matrix squared_distances(const Matrix& x) {
  const std::size_t n = x.rows();
  Matrix d2(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const double v = squared_distance(x.row(i), x.row(j));
      d2(i, j) = v;
      d2(j, i) = v;
    }
  }
  return d2;
}

Matrix rbf_kernel_matrix(const Matrix& x, double gamma) {
  Matrix k = serial::squared_distances(x);
  for (double& v : k.data()) v = std::exp(-gamma * v);
  return k;
}

}  // namespace serial

namespace {

bool in_up(int y, double a, double c) { return y > 0 ? a < c : a > 0.0; }
bool in_low(int y, double a, double c) { return y > 0 ? a > 0.0 : a < c; }

// -y_i * grad_i ranges over I_up (max) and I_low (min).
double violation(std::span<const int> y, std::span<const double> alpha,
                 std::span<const double> grad, double c) {
  double up = -kInf, low = kInf;
  for (std::size_t t = 0; t < y.size(); ++t) {
    const double v = -y[t] * grad[t];
    if (in_up(y[t], alpha[t], c)) up = std::max(up, v);
    if (in_low(y[t], alpha[t], c)) low = std::min(low, v);
  }
  if (up == -kInf || low == kInf) return 0.0;
  return std::max(0.0, up - low);
}

std::vector<double> gradient(const Matrix& gram, std::span<const int> y,
                             std::span<const double> alpha) {
  const std::size_t n = y.size();
  std::vector<double> g(n, -1.0);
  for (std::size_t j = 0; j < n; ++j) {
    if (alpha[j] == 0.0) continue;
    const auto kj = gram.row(j);
    for (std::size_t i = 0; i < n; ++i) g[i] += y[i] * y[j] * kj[i] * alpha[j];
  }
  return g;
}

}  // namespace

double kkt_gap(const Matrix& gram, std::span<const int> labels,
               std::span<const double> alpha, double c) {
  const auto g = gradient(gram, labels, alpha);
  return violation(labels, alpha, g, c);
}

double dual_objective(const Matrix& gram, std::span<const int> labels,
                      std::span<const double> alpha) {
  const auto g = gradient(gram, labels, alpha);
  double obj = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) obj += alpha[i] * (g[i] - 1.0);
  return 0.5 * obj;
}

BinarySvmSolution solve_binary_svm(const Matrix& gram, std::span<const int> y,
                                   const BinarySvmOptions& opts) {
  const std::size_t n = y.size();
  require(gram.rows() == n && gram.cols() == n, "Gram matrix does not match label count");
  require(opts.c > 0.0, "SVM penalty C must be positive");
  require(opts.tolerance > 0.0, "KKT tolerance must be positive");
  require(std::all_of(y.begin(), y.end(), [](int v) { return v == 1 || v == -1; }),
          "binary labels must be +1 or -1");
  require(std::any_of(y.begin(), y.end(), [](int v) { return v > 0; }) &&
              std::any_of(y.begin(), y.end(), [](int v) { return v < 0; }),
          "binary problem needs both classes");

  const double C = opts.c;
  const std::size_t max_iter =
      opts.max_iterations > 0 ? opts.max_iterations : std::max<std::size_t>(10'000'000, 100 * n);

  BinarySvmSolution sol;
  sol.alpha.assign(n, 0.0);
  auto& alpha = sol.alpha;
  std::vector<double> grad(n, -1.0);

  std::size_t iter = 0;
  for (; iter < max_iter; ++iter) {
    // i: maximal violator in I_up.
    double gmax = -kInf;
    std::ptrdiff_t i = -1;
    for (std::size_t t = 0; t < n; ++t) {
      if (in_up(y[t], alpha[t], C) && -y[t] * grad[t] >= gmax) {
        gmax = -y[t] * grad[t];
        i = static_cast<std::ptrdiff_t>(t);
      }
    }
    // j: second-order choice in I_low.
    double gmax2 = -kInf;
    double best_obj = kInf;
    std::ptrdiff_t j = -1;
    if (i >= 0) {
      const auto ki = gram.row(static_cast<std::size_t>(i));
      const double kii = ki[static_cast<std::size_t>(i)];
      for (std::size_t t = 0; t < n; ++t) {
        if (!in_low(y[t], alpha[t], C)) continue;
        const double yg = y[t] * grad[t];
        gmax2 = std::max(gmax2, yg);
        const double diff = gmax + yg;
        if (diff > 0.0) {
          double quad = kii + gram(t, t) - 2.0 * ki[t];
          if (quad <= 0.0) quad = kTau;
          const double obj = -(diff * diff) / quad;
          if (obj <= best_obj) {
            best_obj = obj;
            j = static_cast<std::ptrdiff_t>(t);
          }
        }
      }
    }
    if (i < 0 || j < 0 || gmax + gmax2 < opts.tolerance) break;

    const auto a = static_cast<std::size_t>(i);
    const auto b = static_cast<std::size_t>(j);
    const double old_a = alpha[a], old_b = alpha[b];
    const double kab = gram(a, b);
    if (y[a] != y[b]) {
      double quad = gram(a, a) + gram(b, b) - 2.0 * kab;
      if (quad <= 0.0) quad = kTau;
      const double delta = (-grad[a] - grad[b]) / quad;
      const double diff = alpha[a] - alpha[b];
      alpha[a] += delta;
      alpha[b] += delta;
      if (diff > 0.0) {
        if (alpha[b] < 0.0) { alpha[b] = 0.0; alpha[a] = diff; }
      } else {
        if (alpha[a] < 0.0) { alpha[a] = 0.0; alpha[b] = -diff; }
      }
      if (diff > 0.0) {
        if (alpha[a] > C) { alpha[a] = C; alpha[b] = C - diff; }
      } else {
        if (alpha[b] > C) { alpha[b] = C; alpha[a] = C + diff; }
      }
    } else {
      double quad = gram(a, a) + gram(b, b) - 2.0 * kab;
      if (quad <= 0.0) quad = kTau;
      const double delta = (grad[a] - grad[b]) / quad;
      const double sum = alpha[a] + alpha[b];
      alpha[a] -= delta;
      alpha[b] += delta;
      if (sum > C) {
        if (alpha[a] > C) { alpha[a] = C; alpha[b] = sum - C; }
      } else {
        if (alpha[b] < 0.0) { alpha[b] = 0.0; alpha[a] = sum; }
      }
      if (sum > C) {
        if (alpha[b] > C) { alpha[b] = C; alpha[a] = sum - C; }
      } else {
        if (alpha[a] < 0.0) { alpha[a] = 0.0; alpha[b] = sum; }
      }
    }

    const double da = (alpha[a] - old_a) * y[a];
    const double db = (alpha[b] - old_b) * y[b];
    const auto ka = gram.row(a);
    const auto kb = gram.row(b);
    for (std::size_t t = 0; t < n; ++t) grad[t] += y[t] * (ka[t] * da + kb[t] * db);
  }
  sol.iterations = iter;

  // rho: mean of y*grad over free vectors, else midpoint of the feasible band.
  double ub = kInf, lb = -kInf, free_sum = 0.0;
  std::size_t free_count = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double yg = y[t] * grad[t];
    if (alpha[t] >= C) {
      if (y[t] < 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else if (alpha[t] <= 0.0) {
      if (y[t] > 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else {
      ++free_count;
      free_sum += yg;
    }
  }
  sol.rho = free_count > 0 ? free_sum / static_cast<double>(free_count) : 0.5 * (ub + lb);

  double obj = 0.0;
  for (std::size_t t = 0; t < n; ++t) obj += alpha[t] * (grad[t] - 1.0);
  sol.objective = 0.5 * obj;
  sol.kkt_gap = violation(y, alpha, grad, C);
  sol.converged = sol.kkt_gap < opts.tolerance;
  return sol;
}

}  // namespace rfa
