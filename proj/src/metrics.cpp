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

#include "rfa/metrics.hpp"

#include <cstdio>
#include <numeric>
#include <sstream>

#include "rfa/dataset.hpp"
#include "rfa/error.hpp"

namespace rfa {

std::size_t EvalReport::total() const {
  std::size_t n = 0;
  for (const auto& row : confusion) n = std::accumulate(row.begin(), row.end(), n);
  return n;
}

std::vector<std::vector<double>> EvalReport::row_percent() const {
  std::vector<std::vector<double>> out;
  for (const auto& row : confusion) {
    const auto support = std::accumulate(row.begin(), row.end(), std::size_t{0});
    std::vector<double> pct(row.size(), 0.0);
    if (support > 0) {
      for (std::size_t j = 0; j < row.size(); ++j) {
        pct[j] = 100.0 * static_cast<double>(row[j]) / static_cast<double>(support);
      }
    }
    out.push_back(std::move(pct));
  }
  return out;
}

EvalReport report_from_confusion(std::vector<std::string> labels,
                                 std::vector<std::vector<std::size_t>> confusion) {
  const std::size_t k = labels.size();
  require(k > 0 && confusion.size() == k, "confusion matrix must be K x K");
  for (const auto& row : confusion) require(row.size() == k, "confusion matrix must be K x K");

  EvalReport r;
  r.labels = std::move(labels);
  r.confusion = std::move(confusion);
  const std::size_t total = r.total();
  require(total > 0, "confusion matrix is empty");

  std::size_t trace = 0;
  for (std::size_t c = 0; c < k; ++c) {
    trace += r.confusion[c][c];
    std::size_t support = 0, predicted = 0;
    for (std::size_t j = 0; j < k; ++j) {
      support += r.confusion[c][j];
      predicted += r.confusion[j][c];
    }
    ClassMetrics m;
    m.label = r.labels[c];
    m.support = support;
    const auto tp = static_cast<double>(r.confusion[c][c]);
    m.precision = predicted > 0 ? tp / static_cast<double>(predicted) : 0.0;
    m.recall = support > 0 ? tp / static_cast<double>(support) : 0.0;
    m.f1 = (m.precision + m.recall) > 0.0
               ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
               : 0.0;
    r.weighted_f1 += static_cast<double>(support) / static_cast<double>(total) * m.f1;
    r.per_class.push_back(m);
  }
  r.accuracy = static_cast<double>(trace) / static_cast<double>(total);
  return r;
}

EvalReport report_from_predictions(std::vector<std::string> labels,
                                   std::span<const std::size_t> truth,
                                   std::span<const std::size_t> predicted) {
  require(truth.size() == predicted.size(), "prediction count does not match truth");
  const std::size_t k = labels.size();
  std::vector<std::vector<std::size_t>> confusion(k, std::vector<std::size_t>(k, 0));
  for (std::size_t i = 0; i < truth.size(); ++i) {
    require(truth[i] < k && predicted[i] < k, "class index out of range");
    ++confusion[truth[i]][predicted[i]];
  }
  return report_from_confusion(std::move(labels), std::move(confusion));
}

nlohmann::json to_json(const EvalReport& r) {
  nlohmann::json per_class = nlohmann::json::array();
  for (const auto& m : r.per_class) {
    per_class.push_back({{"label", m.label},
                         {"precision", m.precision},
                         {"recall", m.recall},
                         {"f1", m.f1},
                         {"support", m.support}});
  }
  return {{"labels", r.labels},
          {"accuracy", r.accuracy},
          {"weighted_f1", r.weighted_f1},
          {"test_size", r.total()},
          {"per_class", per_class},
          {"confusion", r.confusion},
          {"confusion_row_percent", r.row_percent()}};
}

std::string format_report(const EvalReport& r) {
  std::ostringstream out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "accuracy     %6.2f %%\nweighted F1  %6.2f %%\n\n",
                100.0 * r.accuracy, 100.0 * r.weighted_f1);
  out << buf;
  std::snprintf(buf, sizeof buf, "%-10s %9s %9s %9s %8s\n", "class", "precision", "recall", "f1",
                "support");
  out << buf;
  for (const auto& m : r.per_class) {
    std::snprintf(buf, sizeof buf, "%-10s %9.4f %9.4f %9.4f %8zu\n", m.label.c_str(), m.precision,
                  m.recall, m.f1, m.support);
    out << buf;
  }

  out << "\nconfusion matrix (rows: true, columns: predicted, % of row)\n";
  std::snprintf(buf, sizeof buf, "%-10s", "");
  out << buf;
  for (const auto& l : r.labels) {
    std::snprintf(buf, sizeof buf, " %8s", l.c_str());
    out << buf;
  }
  out << '\n';
  const auto pct = r.row_percent();
  for (std::size_t i = 0; i < r.labels.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%-10s", r.labels[i].c_str());
    out << buf;
    for (double p : pct[i]) {
      std::snprintf(buf, sizeof buf, " %8.1f", p);
      out << buf;
    }
    out << '\n';
  }
  return out.str();
}

std::string confusion_csv(const EvalReport& r) {
  std::ostringstream out;
  out << "true_label";
  for (const auto& l : r.labels) out << ',' << csv_escape(l);
  out << '\n';
  for (std::size_t i = 0; i < r.labels.size(); ++i) {
    out << csv_escape(r.labels[i]);
    for (auto c : r.confusion[i]) out << ',' << c;
    out << '\n';
  }
  out << "\ntrue_label_percent";
  for (const auto& l : r.labels) out << ',' << csv_escape(l);
  out << '\n';
  const auto pct = r.row_percent();
  for (std::size_t i = 0; i < r.labels.size(); ++i) {
    out << csv_escape(r.labels[i]);
    for (double p : pct[i]) out << ',' << format_number(p);
    out << '\n';
  }
  return out.str();
}

}  // namespace rfa
