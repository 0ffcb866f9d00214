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
#include <string>
#include <vector>

#include "json.hpp"

namespace rfa {

struct ClassMetrics {
  std::string label;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;
};

/// Confusion rows are true classes, columns predicted classes.
struct EvalReport {
  std::vector<std::string> labels;
  std::vector<std::vector<std::size_t>> confusion;
  double accuracy = 0.0;
  double weighted_f1 = 0.0;
  std::vector<ClassMetrics> per_class;

  std::size_t total() const;
  /// Each row scaled to percentages of its support (0 for empty rows).
  std::vector<std::vector<double>> row_percent() const;
};

EvalReport report_from_confusion(std::vector<std::string> labels,
                                 std::vector<std::vector<std::size_t>> confusion);

EvalReport report_from_predictions(std::vector<std::string> labels,
                                   std::span<const std::size_t> truth,
                                   std::span<const std::size_t> predicted);

nlohmann::json to_json(const EvalReport& report);

/// Per-class table followed by the confusion matrix (counts and row %).
std::string format_report(const EvalReport& report);

/// true_label,<predicted labels...> with counts, then a row-percent block.
std::string confusion_csv(const EvalReport& report);

}  // namespace rfa
