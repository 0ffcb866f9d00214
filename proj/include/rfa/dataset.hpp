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

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "rfa/features.hpp"

namespace rfa {

struct DatasetRow {
  std::string source_id;
  std::string label;  // empty when unlabeled
  std::vector<double> values;
};

/// Labeled feature table; every row follows `feature_names`.
struct Dataset {
  std::vector<std::string> feature_names;
  std::vector<DatasetRow> rows;

  std::size_t size() const { return rows.size(); }
  std::size_t dims() const { return feature_names.size(); }
  bool empty() const { return rows.empty(); }

  /// Sorted distinct non-empty labels.
  std::vector<std::string> label_set() const;

  /// Projects onto `names` (in that order). Throws schema_mismatch naming
  /// the first column that is absent.
  Dataset select(std::span<const std::string> names) const;
  Dataset select(const FeatureSelection& selection) const;

  /// Builds a dataset from assembled vectors; R-formant columns optional.
  static Dataset from_vectors(std::span<const FeatureVector> vectors, bool with_r_formants);
};

/// CSV with header `source_id,label,<feature names>`, values written with
/// 12 significant digits. Each entry of `comments` becomes a leading
/// `# ` line.
void write_dataset(const Dataset& ds, const std::filesystem::path& path,
                   std::span<const std::string> comments = {});
std::string dataset_to_csv(const Dataset& ds, std::span<const std::string> comments = {});

/// Inverse of write_dataset. Lines starting with '#' are skipped.
Dataset read_dataset(const std::filesystem::path& path);
Dataset dataset_from_csv(std::string_view text);

/// Shortest "%.12g" rendering used by every CSV writer.
std::string format_number(double v);

/// Splits one CSV record, honoring double-quoted fields.
std::vector<std::string> split_csv_line(std::string_view line);
std::string csv_escape(std::string_view field);

/// Machine-readable description of the column layout.
nlohmann::json feature_schema();

}  // namespace rfa
