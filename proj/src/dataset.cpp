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

#include "rfa/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "rfa/error.hpp"

namespace rfa {

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current += c;
    }
  }
  fields.push_back(std::move(current));
  return fields;
}

std::vector<std::string> Dataset::label_set() const {
  std::set<std::string> labels;
  for (const auto& r : rows) {
    if (!r.label.empty()) labels.insert(r.label);
  }
  return {labels.begin(), labels.end()};
}

Dataset Dataset::select(std::span<const std::string> names) const {
  std::vector<std::size_t> index;
  index.reserve(names.size());
  for (const auto& n : names) {
    const auto it = std::find(feature_names.begin(), feature_names.end(), n);
    if (it == feature_names.end()) {
      fail(Errc::schema_mismatch, "dataset has no column '" + n + "'");
    }
    index.push_back(static_cast<std::size_t>(it - feature_names.begin()));
  }
  Dataset out;
  out.feature_names.assign(names.begin(), names.end());
  out.rows.reserve(rows.size());
  for (const auto& r : rows) {
    DatasetRow row{r.source_id, r.label, {}};
    row.values.reserve(index.size());
    for (std::size_t i : index) row.values.push_back(r.values[i]);
    out.rows.push_back(std::move(row));
  }
  return out;
}

Dataset Dataset::select(const FeatureSelection& selection) const {
  const auto names = selection.names();
  return select(std::span<const std::string>(names));
}

Dataset Dataset::from_vectors(std::span<const FeatureVector> vectors, bool with_r_formants) {
  Dataset ds;
  for (const auto& d : with_r_formants ? all_features() : fused_features()) {
    ds.feature_names.push_back(d.name);
  }
  for (const auto& v : vectors) {
    DatasetRow row{v.source_id, v.label.value_or(""), {}};
    row.values = with_r_formants ? v.all_values()
                                 : std::vector<double>(v.values.begin(), v.values.end());
    ds.rows.push_back(std::move(row));
  }
  return ds;
}

std::string dataset_to_csv(const Dataset& ds, std::span<const std::string> comments) {
  require(!ds.empty(), "refusing to write an empty dataset");
  std::ostringstream out;
  for (const auto& c : comments) out << "# " << c << '\n';
  out << "source_id,label";
  for (const auto& n : ds.feature_names) out << ',' << csv_escape(n);
  out << '\n';
  for (const auto& r : ds.rows) {
    require(r.values.size() == ds.dims(), "row width does not match the header");
    out << csv_escape(r.source_id) << ',' << csv_escape(r.label);
    for (double v : r.values) out << ',' << format_number(v);
    out << '\n';
  }
  return out.str();
}

void write_dataset(const Dataset& ds, const std::filesystem::path& path,
                   std::span<const std::string> comments) {
  const std::string text = dataset_to_csv(ds, comments);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) fail(Errc::unreadable_file, "cannot open " + path.string() + " for writing");
  file << text;
  if (!file) fail(Errc::unreadable_file, "write failed for " + path.string());
}

namespace {

double parse_value(const std::string& field, std::size_t line, const std::string& column) {
  double v = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  while (first < last && *first == ' ') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last) {
    throw ParseError(line, "column '" + column + "': cannot parse '" + field + "' as a number");
  }
  if (!std::isfinite(v)) throw ParseError(line, "column '" + column + "' is not finite");
  return v;
}

}  // namespace

Dataset dataset_from_csv(std::string_view text) {
  Dataset ds;
  bool have_header = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t nl = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;

    auto fields = split_csv_line(line);
    if (!have_header) {
      if (fields.empty() || fields[0] != "source_id") {
        throw ParseError(line_no, "header must start with column 'source_id'");
      }
      if (fields.size() < 2 || fields[1] != "label") {
        throw ParseError(line_no, "missing required column 'label'");
      }
      std::set<std::string> seen;
      for (std::size_t c = 2; c < fields.size(); ++c) {
        if (find_feature(fields[c]) == nullptr) {
          throw ParseError(line_no, "unknown column '" + fields[c] + "'");
        }
        if (!seen.insert(fields[c]).second) {
          throw ParseError(line_no, "duplicate column '" + fields[c] + "'");
        }
        ds.feature_names.push_back(fields[c]);
      }
      have_header = true;
      continue;
    }

    if (fields.size() != ds.dims() + 2) {
      throw ParseError(line_no, "expected " + std::to_string(ds.dims() + 2) + " columns, found " +
                                    std::to_string(fields.size()));
    }
    DatasetRow row{std::move(fields[0]), std::move(fields[1]), {}};
    row.values.reserve(ds.dims());
    for (std::size_t c = 0; c < ds.dims(); ++c) {
      row.values.push_back(parse_value(fields[c + 2], line_no, ds.feature_names[c]));
    }
    ds.rows.push_back(std::move(row));
  }
  if (!have_header) throw ParseError(0, "missing header line");
  if (ds.rows.empty()) fail(Errc::empty_dataset, "empty dataset");
  return ds;
}

Dataset read_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::unreadable_file, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return dataset_from_csv(buf.str());
}

nlohmann::json feature_schema() {
  auto group_name = [](FeatureGroup g) {
    switch (g) {
      case FeatureGroup::a: return "A";
      case FeatureGroup::b: return "B";
      case FeatureGroup::c: return "C";
      case FeatureGroup::r_formant: return "RF";
    }
    return "";
  };
  nlohmann::json columns = nlohmann::json::array();
  const auto& all = all_features();
  for (std::size_t i = 0; i < all.size(); ++i) {
    columns.push_back({{"index", i},
                       {"name", all[i].name},
                       {"group", group_name(all[i].group)},
                       {"envelope", std::string(to_string(all[i].envelope))},
                       {"fused", i < kFusedDims}});
  }
  return {{"fused_dims", kFusedDims},
          {"group_sizes", {{"A", 14}, {"B", 14}, {"C", 24}}},
          {"columns", columns}};
}

}  // namespace rfa
