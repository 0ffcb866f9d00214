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

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "rfa/dataset.hpp"
#include "rfa/matrix.hpp"
#include "rfa/metrics.hpp"

namespace rfa {

/// Per-feature affine map fitted on the training split. Zero-variance
/// features keep scale 1.
struct Standardizer {
  std::vector<double> mean;
  std::vector<double> scale;

  static Standardizer fit(const Matrix& x);
  void apply(std::span<double> row) const;
  Matrix transform(Matrix x) const;
};

/// One class pair of the one-vs-one decomposition. Positive decision
/// values vote for `positive`.
struct BinaryMachine {
  std::size_t positive = 0;
  std::size_t negative = 0;
  Matrix support_vectors;  // standardized
  std::vector<double> coefficients;  // alpha_i * y_i, within [-C, C]
  double rho = 0.0;

  double decision(std::span<const double> x_std, double gamma) const;
};

struct SvmModel {
  std::vector<std::string> feature_names;
  std::vector<std::string> labels;
  Standardizer standardizer;
  double c = 1.0;
  double gamma = 1.0;
  std::vector<BinaryMachine> machines;

  /// Raw (unstandardized) feature row to class index.
  std::size_t predict_index(std::span<const double> raw) const;
  const std::string& predict(std::span<const double> raw) const;
  /// Rows of `raw` predicted in parallel.
  std::vector<std::size_t> predict_all(const Matrix& raw) const;
};

inline constexpr int kModelFormatVersion = 1;

nlohmann::json to_json(const SvmModel& model);
SvmModel model_from_json(const nlohmann::json& doc);

/// Pairwise voting; ties go to the larger summed decision value, then to
/// the lower class index.
std::size_t vote(std::span<const double> decisions,
                 std::span<const std::pair<std::size_t, std::size_t>> pairs,
                 std::size_t n_classes);

/// Stratified split. Each class contributes round(test_fraction * n_c)
/// test rows; rows keep their original relative order.
std::pair<Dataset, Dataset> split_dataset(const Dataset& ds, double test_fraction,
                                          std::uint64_t seed);

/// Fold id per row, stratified by `classes` (class index per row).
std::vector<std::size_t> stratified_folds(std::span<const std::size_t> classes,
                                          std::size_t folds, std::uint64_t seed);

struct GridSpec {
  std::vector<double> c_values{0.1, 1.0, 10.0, 100.0};
  std::vector<double> gamma_values{0.001, 0.01, 0.1, 1.0};
  bool heuristic_gamma = true;  // adds 1 / (d * mean feature variance)
};

struct TrainOptions {
  GridSpec grid;
  std::size_t folds = 5;
  std::uint64_t seed = 0;
  double tolerance = 1e-3;
};

struct GridPoint {
  double c = 0.0;
  double gamma = 0.0;
  double cv_accuracy = 0.0;
};

struct MachineDiagnostics {
  std::string positive;
  std::string negative;
  std::size_t samples = 0;
  std::size_t support_vectors = 0;
  std::size_t iterations = 0;
  double objective = 0.0;
  double kkt_gap = 0.0;  // independently recomputed after solving
  bool converged = false;
};

struct TrainResult {
  SvmModel model;
  std::vector<GridPoint> grid;
  GridPoint best;
  std::vector<MachineDiagnostics> machines;
};

/// Standardizes, grid-searches (C, gamma) by stratified k-fold CV accuracy
/// and refits the best pair on the whole training set.
TrainResult train(const Dataset& train_set, const TrainOptions& opts = {});

nlohmann::json to_json(const TrainResult& result);

/// Class index of every labeled row, per `labels`. Throws schema_mismatch
/// on unknown or missing labels.
std::vector<std::size_t> class_indices(const Dataset& ds, std::span<const std::string> labels);

Matrix feature_matrix(const Dataset& ds);

EvalReport evaluate(const SvmModel& model, const Dataset& test);

struct FeatureImportance {
  std::string feature;
  double mean_drop = 0.0;
  double std_drop = 0.0;
};

/// Mean accuracy drop when one column is shuffled, sorted descending.
std::vector<FeatureImportance> permutation_importance(const SvmModel& model, const Dataset& test,
                                                      int n_repeats = 20, std::uint64_t seed = 0);

}  // namespace rfa
