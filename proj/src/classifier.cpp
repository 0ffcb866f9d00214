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

#include "rfa/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "rfa/error.hpp"
#include "rfa/svm.hpp"

namespace rfa {

// ---------------------------------------------------------------- scaling

Standardizer Standardizer::fit(const Matrix& x) {
  require(x.rows() > 0, "cannot standardize an empty matrix");
  Standardizer s;
  const std::size_t d = x.cols();
  const double n = static_cast<double>(x.rows());
  s.mean.assign(d, 0.0);
  s.scale.assign(d, 1.0);
  for (std::size_t r = 0; r < x.rows(); ++r) {
    for (std::size_t c = 0; c < d; ++c) s.mean[c] += x(r, c);
  }
  for (double& m : s.mean) m /= n;
  std::vector<double> var(d, 0.0);
  for (std::size_t r = 0; r < x.rows(); ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      const double dv = x(r, c) - s.mean[c];
      var[c] += dv * dv;
    }
  }
  for (std::size_t c = 0; c < d; ++c) {
    const double sd = std::sqrt(var[c] / n);
    s.scale[c] = sd > 0.0 ? sd : 1.0;
  }
  return s;
}

void Standardizer::apply(std::span<double> row) const {
  for (std::size_t c = 0; c < row.size(); ++c) row[c] = (row[c] - mean[c]) / scale[c];
}

Matrix Standardizer::transform(Matrix x) const {
  for (std::size_t r = 0; r < x.rows(); ++r) apply(x.row(r));
  return x;
}

// --------------------------------------------------------------- predicting

double BinaryMachine::decision(std::span<const double> x_std, double gamma) const {
  double f = -rho;
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    f += coefficients[i] * std::exp(-gamma * squared_distance(support_vectors.row(i), x_std));
  }
  return f;
}

std::size_t vote(std::span<const double> decisions,
                 std::span<const std::pair<std::size_t, std::size_t>> pairs,
                 std::size_t n_classes) {
  std::vector<int> votes(n_classes, 0);
  std::vector<double> sums(n_classes, 0.0);
  for (std::size_t m = 0; m < pairs.size(); ++m) {
    const auto [pos, neg] = pairs[m];
    ++votes[decisions[m] > 0.0 ? pos : neg];
    sums[pos] += decisions[m];
    sums[neg] -= decisions[m];
  }
  std::size_t best = 0;
  for (std::size_t k = 1; k < n_classes; ++k) {
    if (votes[k] > votes[best] || (votes[k] == votes[best] && sums[k] > sums[best])) best = k;
  }
  return best;
}

std::size_t SvmModel::predict_index(std::span<const double> raw) const {
  require(raw.size() == feature_names.size(), "feature row has the wrong width");
  std::vector<double> x(raw.begin(), raw.end());
  standardizer.apply(x);
  std::vector<double> decisions(machines.size());
  std::vector<std::pair<std::size_t, std::size_t>> pairs(machines.size());
  for (std::size_t m = 0; m < machines.size(); ++m) {
    decisions[m] = machines[m].decision(x, gamma);
    pairs[m] = {machines[m].positive, machines[m].negative};
  }
  return vote(decisions, pairs, labels.size());
}

const std::string& SvmModel::predict(std::span<const double> raw) const {
  return labels[predict_index(raw)];
}

std::vector<std::size_t> SvmModel::predict_all(const Matrix& raw) const {
  std::vector<std::size_t> out(raw.rows());
  const auto rows = static_cast<std::ptrdiff_t>(raw.rows());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < rows; ++r) {
    out[static_cast<std::size_t>(r)] = predict_index(raw.row(static_cast<std::size_t>(r)));
  }
  return out;
}

// -------------------------------------------------------------- persistence

nlohmann::json to_json(const SvmModel& model) {
  nlohmann::json machines = nlohmann::json::array();
  for (const auto& m : model.machines) {
    nlohmann::json svs = nlohmann::json::array();
    for (std::size_t i = 0; i < m.support_vectors.rows(); ++i) {
      const auto row = m.support_vectors.row(i);
      svs.push_back(std::vector<double>(row.begin(), row.end()));
    }
    machines.push_back({{"positive", model.labels[m.positive]},
                        {"negative", model.labels[m.negative]},
                        {"rho", m.rho},
                        {"coefficients", m.coefficients},
                        {"support_vectors", svs}});
  }
  return {{"format", "rfa-svm"},
          {"format_version", kModelFormatVersion},
          {"kernel", {{"type", "rbf"}, {"gamma", model.gamma}}},
          {"C", model.c},
          {"feature_names", model.feature_names},
          {"labels", model.labels},
          {"standardizer", {{"mean", model.standardizer.mean}, {"scale", model.standardizer.scale}}},
          {"machines", machines}};
}

SvmModel model_from_json(const nlohmann::json& doc) {
  try {
    if (doc.at("format").get<std::string>() != "rfa-svm") {
      fail(Errc::parse_error, "not an rfa-svm model document");
    }
    const int version = doc.at("format_version").get<int>();
    if (version != kModelFormatVersion) {
      fail(Errc::parse_error, "unsupported model format version " + std::to_string(version));
    }
    if (doc.at("kernel").at("type").get<std::string>() != "rbf") {
      fail(Errc::parse_error, "only RBF kernels are supported");
    }
    SvmModel m;
    m.gamma = doc.at("kernel").at("gamma").get<double>();
    m.c = doc.at("C").get<double>();
    m.feature_names = doc.at("feature_names").get<std::vector<std::string>>();
    m.labels = doc.at("labels").get<std::vector<std::string>>();
    m.standardizer.mean = doc.at("standardizer").at("mean").get<std::vector<double>>();
    m.standardizer.scale = doc.at("standardizer").at("scale").get<std::vector<double>>();
    const std::size_t d = m.feature_names.size();
    if (m.standardizer.mean.size() != d || m.standardizer.scale.size() != d) {
      fail(Errc::parse_error, "standardizer width does not match feature names");
    }
    auto label_index = [&](const std::string& l) {
      const auto it = std::find(m.labels.begin(), m.labels.end(), l);
      if (it == m.labels.end()) fail(Errc::parse_error, "machine refers to unknown label " + l);
      return static_cast<std::size_t>(it - m.labels.begin());
    };
    for (const auto& jm : doc.at("machines")) {
      BinaryMachine bm;
      bm.positive = label_index(jm.at("positive").get<std::string>());
      bm.negative = label_index(jm.at("negative").get<std::string>());
      bm.rho = jm.at("rho").get<double>();
      bm.coefficients = jm.at("coefficients").get<std::vector<double>>();
      const auto svs = jm.at("support_vectors").get<std::vector<std::vector<double>>>();
      if (svs.size() != bm.coefficients.size()) {
        fail(Errc::parse_error, "support vector count does not match coefficients");
      }
      bm.support_vectors = Matrix(svs.size(), d);
      for (std::size_t i = 0; i < svs.size(); ++i) {
        if (svs[i].size() != d) fail(Errc::parse_error, "support vector has the wrong width");
        std::copy(svs[i].begin(), svs[i].end(), bm.support_vectors.row(i).begin());
      }
      m.machines.push_back(std::move(bm));
    }
    const std::size_t k = m.labels.size();
    if (m.machines.size() != k * (k - 1) / 2) {
      fail(Errc::parse_error, "expected " + std::to_string(k * (k - 1) / 2) + " pairwise machines");
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::parse_error, std::string("malformed model document: ") + e.what());
  }
}

// ---------------------------------------------------------------- splitting

std::vector<std::size_t> class_indices(const Dataset& ds, std::span<const std::string> labels) {
  std::map<std::string, std::size_t> index;
  for (std::size_t k = 0; k < labels.size(); ++k) index[labels[k]] = k;
  std::vector<std::size_t> out;
  out.reserve(ds.size());
  for (std::size_t r = 0; r < ds.size(); ++r) {
    const auto& label = ds.rows[r].label;
    if (label.empty()) {
      fail(Errc::schema_mismatch, "row " + std::to_string(r + 1) + " ('" + ds.rows[r].source_id +
                                      "') has no label");
    }
    const auto it = index.find(label);
    if (it == index.end()) {
      fail(Errc::schema_mismatch, "label '" + label + "' is not known to the model");
    }
    out.push_back(it->second);
  }
  return out;
}

Matrix feature_matrix(const Dataset& ds) {
  Matrix x(ds.size(), ds.dims());
  for (std::size_t r = 0; r < ds.size(); ++r) {
    const auto& v = ds.rows[r].values;
    require(v.size() == ds.dims(), "row width does not match the header");
    for (std::size_t c = 0; c < v.size(); ++c) {
      if (!std::isfinite(v[c])) {
        fail(Errc::non_finite, "non-finite value in '" + ds.rows[r].source_id + "', column '" +
                                   ds.feature_names[c] + "'");
      }
      x(r, c) = v[c];
    }
  }
  return x;
}

namespace {

std::vector<std::vector<std::size_t>> rows_by_class(std::span<const std::size_t> classes,
                                                    std::size_t n_classes) {
  std::vector<std::vector<std::size_t>> by(n_classes);
  for (std::size_t r = 0; r < classes.size(); ++r) by[classes[r]].push_back(r);
  return by;
}

Dataset take_rows(const Dataset& ds, const std::vector<std::size_t>& rows) {
  Dataset out;
  out.feature_names = ds.feature_names;
  for (std::size_t r : rows) out.rows.push_back(ds.rows[r]);
  return out;
}

}  // namespace

std::pair<Dataset, Dataset> split_dataset(const Dataset& ds, double test_fraction,
                                          std::uint64_t seed) {
  require(test_fraction >= 0.0 && test_fraction < 1.0, "test fraction must lie in [0, 1)");
  const auto labels = ds.label_set();
  const auto classes = class_indices(ds, labels);
  auto by_class = rows_by_class(classes, labels.size());

  std::mt19937_64 rng(seed);
  std::vector<char> is_test(ds.size(), 0);
  std::size_t test_total = 0;
  for (std::size_t k = 0; k < labels.size(); ++k) {
    auto& rows = by_class[k];
    if (rows.size() < 2) {
      fail(Errc::insufficient_data, "class '" + labels[k] + "' has fewer than 2 samples");
    }
    std::shuffle(rows.begin(), rows.end(), rng);
    const auto n_test = static_cast<std::size_t>(
        std::lround(test_fraction * static_cast<double>(rows.size())));
    if (n_test >= rows.size()) {
      fail(Errc::insufficient_data, "class '" + labels[k] + "' would have no training samples");
    }
    for (std::size_t i = 0; i < n_test; ++i) is_test[rows[i]] = 1;
    test_total += n_test;
  }
  if (test_total == 0) fail(Errc::invalid_argument, "empty test set");

  std::vector<std::size_t> train_rows, test_rows;
  for (std::size_t r = 0; r < ds.size(); ++r) (is_test[r] ? test_rows : train_rows).push_back(r);
  return {take_rows(ds, train_rows), take_rows(ds, test_rows)};
}

std::vector<std::size_t> stratified_folds(std::span<const std::size_t> classes,
                                          std::size_t folds, std::uint64_t seed) {
  require(folds >= 2, "cross-validation needs at least 2 folds");
  const std::size_t n_classes =
      classes.empty() ? 0 : *std::max_element(classes.begin(), classes.end()) + 1;
  auto by_class = rows_by_class(classes, n_classes);
  std::mt19937_64 rng(seed ^ 0x9E3779B97F4A7C15ULL);
  std::vector<std::size_t> fold(classes.size(), 0);
  std::size_t offset = 0;
  for (auto& rows : by_class) {
    std::shuffle(rows.begin(), rows.end(), rng);
    for (std::size_t i = 0; i < rows.size(); ++i) fold[rows[i]] = (offset + i) % folds;
    offset += rows.size();
  }
  return fold;
}

// ----------------------------------------------------------------- training

namespace {

// Machine over rows of the standardized training matrix.
struct IndexedMachine {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::vector<std::size_t> support_rows;
  std::vector<double> coefficients;
  double rho = 0.0;
  MachineDiagnostics diag;
};

std::vector<IndexedMachine> fit_ovo(const Matrix& d2, std::span<const std::size_t> classes,
                                    std::span<const std::size_t> rows, std::size_t n_classes,
                                    double c, double gamma, double tolerance, bool diagnose) {
  std::vector<IndexedMachine> out;
  for (std::size_t a = 0; a < n_classes; ++a) {
    for (std::size_t b = a + 1; b < n_classes; ++b) {
      std::vector<std::size_t> idx;
      std::vector<int> y;
      for (std::size_t r : rows) {
        if (classes[r] == a || classes[r] == b) {
          idx.push_back(r);
          y.push_back(classes[r] == a ? 1 : -1);
        }
      }
      const bool has_pos = std::find(y.begin(), y.end(), 1) != y.end();
      const bool has_neg = std::find(y.begin(), y.end(), -1) != y.end();
      if (!has_pos || !has_neg) {
        fail(Errc::insufficient_data, "training fold is missing a class of a one-vs-one pair");
      }
      const Matrix gram = rbf_from_distances(d2, idx, gamma);
      const auto sol = solve_binary_svm(gram, y, {c, tolerance, 0});

      IndexedMachine m;
      m.positive = a;
      m.negative = b;
      m.rho = sol.rho;
      for (std::size_t i = 0; i < idx.size(); ++i) {
        if (sol.alpha[i] > 0.0) {
          m.support_rows.push_back(idx[i]);
          m.coefficients.push_back(sol.alpha[i] * y[i]);
        }
      }
      m.diag.samples = idx.size();
      m.diag.support_vectors = m.support_rows.size();
      m.diag.iterations = sol.iterations;
      m.diag.objective = sol.objective;
      m.diag.converged = sol.converged;
      m.diag.kkt_gap = diagnose ? kkt_gap(gram, y, sol.alpha, c) : sol.kkt_gap;
      out.push_back(std::move(m));
    }
  }
  return out;
}

std::size_t predict_indexed(const std::vector<IndexedMachine>& machines, const Matrix& d2,
                            std::size_t row, std::size_t n_classes, double gamma) {
  std::vector<double> decisions(machines.size());
  std::vector<std::pair<std::size_t, std::size_t>> pairs(machines.size());
  for (std::size_t m = 0; m < machines.size(); ++m) {
    const auto& mc = machines[m];
    double f = -mc.rho;
    const auto dist = d2.row(row);
    for (std::size_t i = 0; i < mc.support_rows.size(); ++i) {
      f += mc.coefficients[i] * std::exp(-gamma * dist[mc.support_rows[i]]);
    }
    decisions[m] = f;
    pairs[m] = {mc.positive, mc.negative};
  }
  return vote(decisions, pairs, n_classes);
}

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

TrainResult train(const Dataset& train_set, const TrainOptions& opts) {
  require(!train_set.empty(), "empty training set");
  require(opts.folds >= 2, "cross-validation needs at least 2 folds");
  require(!opts.grid.c_values.empty(), "grid has no C values");
  require(opts.grid.heuristic_gamma || !opts.grid.gamma_values.empty(), "grid has no gamma values");
  for (double c : opts.grid.c_values) require(c > 0.0, "grid C values must be positive");
  for (double g : opts.grid.gamma_values) require(g > 0.0, "grid gamma values must be positive");

  const auto labels = train_set.label_set();
  if (labels.size() < 2) fail(Errc::insufficient_data, "training needs at least 2 classes");
  const auto classes = class_indices(train_set, labels);
  const std::size_t n_classes = labels.size();
  {
    std::vector<std::size_t> counts(n_classes, 0);
    for (auto k : classes) ++counts[k];
    for (std::size_t k = 0; k < n_classes; ++k) {
      if (counts[k] < opts.folds) {
        fail(Errc::insufficient_data, "class '" + labels[k] + "' has " + std::to_string(counts[k]) +
                                          " samples, fewer than " + std::to_string(opts.folds) +
                                          " folds");
      }
    }
  }

  const Standardizer standardizer = Standardizer::fit(feature_matrix(train_set));
  const Matrix x = standardizer.transform(feature_matrix(train_set));
  const Matrix d2 = squared_distances(x);

  auto gammas = opts.grid.gamma_values;
  if (opts.grid.heuristic_gamma) {
    double var_sum = 0.0;
    for (std::size_t c = 0; c < x.cols(); ++c) {
      double s = 0.0;
      for (std::size_t r = 0; r < x.rows(); ++r) s += x(r, c) * x(r, c);
      var_sum += s / static_cast<double>(x.rows());
    }
    const double mean_var = var_sum / static_cast<double>(x.cols());
    if (mean_var > 0.0) gammas.push_back(1.0 / (static_cast<double>(x.cols()) * mean_var));
  }
  gammas = sorted_unique(gammas);
  const auto cs = sorted_unique(opts.grid.c_values);

  const auto fold_of = stratified_folds(classes, opts.folds, opts.seed);
  std::vector<std::vector<std::size_t>> fold_train(opts.folds), fold_test(opts.folds);
  for (std::size_t r = 0; r < classes.size(); ++r) {
    for (std::size_t f = 0; f < opts.folds; ++f) (fold_of[r] == f ? fold_test : fold_train)[f].push_back(r);
  }

  const std::size_t points = cs.size() * gammas.size();
  const std::size_t tasks = points * opts.folds;
  std::vector<std::size_t> correct(tasks, 0);
  std::vector<std::string> errors(tasks);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(tasks); ++t) {
    const auto task = static_cast<std::size_t>(t);
    const std::size_t point = task / opts.folds;
    const std::size_t fold = task % opts.folds;
    const double c = cs[point / gammas.size()];
    const double gamma = gammas[point % gammas.size()];
    try {
      const auto machines =
          fit_ovo(d2, classes, fold_train[fold], n_classes, c, gamma, opts.tolerance, false);
      std::size_t hits = 0;
      for (std::size_t r : fold_test[fold]) {
        hits += predict_indexed(machines, d2, r, n_classes, gamma) == classes[r];
      }
      correct[task] = hits;
    } catch (const std::exception& e) {
      errors[task] = e.what();
    }
  }
  for (const auto& e : errors) {
    if (!e.empty()) fail(Errc::insufficient_data, "cross-validation failed: " + e);
  }

  TrainResult result;
  std::size_t best_hits = 0;
  bool have_best = false;
  for (std::size_t p = 0; p < points; ++p) {
    std::size_t hits = 0;
    for (std::size_t f = 0; f < opts.folds; ++f) hits += correct[p * opts.folds + f];
    GridPoint gp{cs[p / gammas.size()], gammas[p % gammas.size()],
                 static_cast<double>(hits) / static_cast<double>(classes.size())};
    result.grid.push_back(gp);
    // Points are visited by ascending C, then gamma: strict improvement
    // keeps the smallest pair among ties.
    if (!have_best || hits > best_hits) {
      best_hits = hits;
      result.best = gp;
      have_best = true;
    }
  }

  std::vector<std::size_t> all_rows(classes.size());
  std::iota(all_rows.begin(), all_rows.end(), 0);
  const auto machines = fit_ovo(d2, classes, all_rows, n_classes, result.best.c,
                                result.best.gamma, opts.tolerance, true);

  SvmModel& model = result.model;
  model.feature_names = train_set.feature_names;
  model.labels = labels;
  model.standardizer = standardizer;
  model.c = result.best.c;
  model.gamma = result.best.gamma;
  for (const auto& m : machines) {
    BinaryMachine bm;
    bm.positive = m.positive;
    bm.negative = m.negative;
    bm.rho = m.rho;
    bm.coefficients = m.coefficients;
    bm.support_vectors = Matrix(m.support_rows.size(), x.cols());
    for (std::size_t i = 0; i < m.support_rows.size(); ++i) {
      const auto src = x.row(m.support_rows[i]);
      std::copy(src.begin(), src.end(), bm.support_vectors.row(i).begin());
    }
    model.machines.push_back(std::move(bm));

    MachineDiagnostics diag = m.diag;
    diag.positive = labels[m.positive];
    diag.negative = labels[m.negative];
    result.machines.push_back(std::move(diag));
  }
  return result;
}

nlohmann::json to_json(const TrainResult& r) {
  nlohmann::json grid = nlohmann::json::array();
  for (const auto& g : r.grid) {
    grid.push_back({{"C", g.c}, {"gamma", g.gamma}, {"cv_accuracy", g.cv_accuracy}});
  }
  nlohmann::json machines = nlohmann::json::array();
  for (const auto& m : r.machines) {
    machines.push_back({{"positive", m.positive},
                        {"negative", m.negative},
                        {"samples", m.samples},
                        {"support_vectors", m.support_vectors},
                        {"iterations", m.iterations},
                        {"objective", m.objective},
                        {"kkt_gap", m.kkt_gap},
                        {"converged", m.converged}});
  }
  return {{"best", {{"C", r.best.c}, {"gamma", r.best.gamma}, {"cv_accuracy", r.best.cv_accuracy}}},
          {"grid", grid},
          {"machines", machines},
          {"feature_count", r.model.feature_names.size()},
          {"labels", r.model.labels}};
}

// --------------------------------------------------------------- evaluation

namespace {

void check_schema(const SvmModel& model, const Dataset& ds) {
  const std::size_t n = std::max(model.feature_names.size(), ds.feature_names.size());
  for (std::size_t i = 0; i < n; ++i) {
    const std::string expected = i < model.feature_names.size() ? model.feature_names[i] : "<none>";
    const std::string found = i < ds.feature_names.size() ? ds.feature_names[i] : "<none>";
    if (expected != found) {
      fail(Errc::schema_mismatch, "feature column " + std::to_string(i + 1) + ": model expects '" +
                                      expected + "', dataset has '" + found + "'");
    }
  }
}

double accuracy_of(std::span<const std::size_t> truth, std::span<const std::size_t> pred) {
  std::size_t hits = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) hits += truth[i] == pred[i];
  return static_cast<double>(hits) / static_cast<double>(truth.size());
}

}  // namespace

EvalReport evaluate(const SvmModel& model, const Dataset& test) {
  if (test.empty()) fail(Errc::empty_dataset, "empty test set");
  check_schema(model, test);
  const auto truth = class_indices(test, model.labels);
  const auto pred = model.predict_all(feature_matrix(test));
  return report_from_predictions(model.labels, truth, pred);
}

std::vector<FeatureImportance> permutation_importance(const SvmModel& model, const Dataset& test,
                                                      int n_repeats, std::uint64_t seed) {
  if (n_repeats < 1) fail(Errc::invalid_argument, "at least one repeat");
  if (test.empty()) fail(Errc::empty_dataset, "empty test set");
  check_schema(model, test);
  const auto truth = class_indices(test, model.labels);
  const Matrix x = feature_matrix(test);

  // Rows are predicted serially here; the parallelism is across features.
  auto predict_serial = [&](const Matrix& m) {
    std::vector<std::size_t> out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) out[r] = model.predict_index(m.row(r));
    return out;
  };
  const double baseline = accuracy_of(truth, predict_serial(x));

  const std::size_t d = x.cols();
  std::vector<FeatureImportance> out(d);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t ff = 0; ff < static_cast<std::ptrdiff_t>(d); ++ff) {
    const auto f = static_cast<std::size_t>(ff);
    Matrix shuffled = x;
    std::vector<double> drops;
    std::vector<std::size_t> perm(x.rows());
    for (int rep = 0; rep < n_repeats; ++rep) {
      std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                        static_cast<std::uint32_t>(f), static_cast<std::uint32_t>(rep)};
      std::mt19937_64 rng(seq);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      for (std::size_t r = 0; r < x.rows(); ++r) shuffled(r, f) = x(perm[r], f);
      drops.push_back(baseline - accuracy_of(truth, predict_serial(shuffled)));
    }
    const double mean = std::accumulate(drops.begin(), drops.end(), 0.0) / n_repeats;
    double ss = 0.0;
    for (double v : drops) ss += (v - mean) * (v - mean);
    out[f] = {model.feature_names[f], mean, std::sqrt(ss / n_repeats)};
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.mean_drop > b.mean_drop;
  });
  return out;
}

}  // namespace rfa
