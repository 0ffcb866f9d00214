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

#include "rfa/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "rfa/dataset.hpp"
#include "rfa/error.hpp"

namespace rfa {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double to_double(std::string_view key, std::string_view text) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    fail(Errc::invalid_argument, "config key '" + std::string(key) + "': '" + t + "' is not a number");
  }
  return v;
}

template <typename Int>
Int to_int(std::string_view key, std::string_view text) {
  const std::string t = trim(text);
  Int v{};
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    fail(Errc::invalid_argument, "config key '" + std::string(key) + "': '" + t + "' is not an integer");
  }
  return v;
}

bool to_bool(std::string_view key, std::string_view text) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  fail(Errc::invalid_argument, "config key '" + std::string(key) + "': '" + t + "' is not a boolean");
}

std::vector<double> to_list(std::string_view key, std::string_view text) {
  std::vector<double> out;
  for (const auto& field : split_csv_line(trim(text))) {
    if (!trim(field).empty()) out.push_back(to_double(key, field));
  }
  return out;
}

std::string list_text(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += format_number(v[i]);
  }
  return s;
}

struct Field {
  std::function<void(RunConfig&, std::string_view)> set;
  std::function<std::string(const RunConfig&)> get;
};

template <typename Member>
Field number_field(std::string key, Member member) {
  return {[key, member](RunConfig& c, std::string_view v) { member(c) = to_double(key, v); },
          [member](const RunConfig& c) { return format_number(member(const_cast<RunConfig&>(c))); }};
}

const std::map<std::string, Field, std::less<>>& fields() {
  static const std::map<std::string, Field, std::less<>> table = [] {
    std::map<std::string, Field, std::less<>> t;
    t["min_duration"] = number_field("min_duration", [](RunConfig& c) -> double& { return c.min_duration_s; });
    t["env_rate"] = number_field("env_rate", [](RunConfig& c) -> double& { return c.am.env_rate_hz; });
    t["smooth_ms"] = number_field("smooth_ms", [](RunConfig& c) -> double& { return c.am.smooth_ms; });
    t["f0_min"] = number_field("f0_min", [](RunConfig& c) -> double& { return c.f0.f0_min_hz; });
    t["f0_max"] = number_field("f0_max", [](RunConfig& c) -> double& { return c.f0.f0_max_hz; });
    t["f0_frame_len"] = number_field("f0_frame_len", [](RunConfig& c) -> double& { return c.f0.frame_len_s; });
    t["f0_hop"] = number_field("f0_hop", [](RunConfig& c) -> double& { return c.f0.hop_s; });
    t["voicing_threshold"] =
        number_field("voicing_threshold", [](RunConfig& c) -> double& { return c.f0.voicing_threshold; });
    t["peak_threshold"] = number_field("peak_threshold", [](RunConfig& c) -> double& { return c.peak_threshold; });
    t["min_peak_separation"] =
        number_field("min_peak_separation", [](RunConfig& c) -> double& { return c.min_peak_separation_hz; });
    t["rolloff_fraction"] =
        number_field("rolloff_fraction", [](RunConfig& c) -> double& { return c.rolloff_fraction; });
    t["window"] = number_field("window", [](RunConfig& c) -> double& { return c.spectrogram.window_s; });
    t["hop"] = number_field("hop", [](RunConfig& c) -> double& { return c.spectrogram.hop_s; });
    t["test_fraction"] = number_field("test_fraction", [](RunConfig& c) -> double& { return c.test_fraction; });

    t["n_formants"] = {[](RunConfig& c, std::string_view v) { c.n_formants = to_int<int>("n_formants", v); },
                       [](const RunConfig& c) { return std::to_string(c.n_formants); }};
    t["zero_pad_factor"] = {
        [](RunConfig& c, std::string_view v) { c.spectrogram.spectrum.zero_pad_factor = to_int<int>("zero_pad_factor", v); },
        [](const RunConfig& c) { return std::to_string(c.spectrogram.spectrum.zero_pad_factor); }};
    t["taper"] = {[](RunConfig& c, std::string_view v) {
                    const auto s = trim(v);
                    if (s == "none") c.spectrogram.spectrum.hann_taper = false;
                    else if (s == "hann") c.spectrogram.spectrum.hann_taper = true;
                    else fail(Errc::invalid_argument, "config key 'taper': expected none or hann");
                  },
                  [](const RunConfig& c) { return std::string(c.spectrogram.spectrum.hann_taper ? "hann" : "none"); }};
    t["trajectory_order"] = {[](RunConfig& c, std::string_view v) {
                               const auto s = trim(v);
                               if (s == "magnitude") c.trajectory_order = TrajectoryOrder::by_magnitude;
                               else if (s == "frequency") c.trajectory_order = TrajectoryOrder::by_frequency;
                               else fail(Errc::invalid_argument,
                                         "config key 'trajectory_order': expected magnitude or frequency");
                             },
                             [](const RunConfig& c) {
                               return std::string(c.trajectory_order == TrajectoryOrder::by_magnitude
                                                      ? "magnitude" : "frequency");
                             }};
    t["grid_c"] = {[](RunConfig& c, std::string_view v) { c.grid.c_values = to_list("grid_c", v); },
                   [](const RunConfig& c) { return list_text(c.grid.c_values); }};
    t["grid_gamma"] = {[](RunConfig& c, std::string_view v) { c.grid.gamma_values = to_list("grid_gamma", v); },
                       [](const RunConfig& c) { return list_text(c.grid.gamma_values); }};
    t["heuristic_gamma"] = {[](RunConfig& c, std::string_view v) { c.grid.heuristic_gamma = to_bool("heuristic_gamma", v); },
                            [](const RunConfig& c) { return std::string(c.grid.heuristic_gamma ? "true" : "false"); }};
    t["folds"] = {[](RunConfig& c, std::string_view v) { c.folds = to_int<std::size_t>("folds", v); },
                  [](const RunConfig& c) { return std::to_string(c.folds); }};
    t["seed"] = {[](RunConfig& c, std::string_view v) { c.seed = to_int<std::uint64_t>("seed", v); },
                 [](const RunConfig& c) { return std::to_string(c.seed); }};
    t["repeats"] = {[](RunConfig& c, std::string_view v) { c.repeats = to_int<int>("repeats", v); },
                    [](const RunConfig& c) { return std::to_string(c.repeats); }};
    t["jobs"] = {[](RunConfig& c, std::string_view v) { c.jobs = to_int<int>("jobs", v); },
                 [](const RunConfig& c) { return std::to_string(c.jobs); }};
    return t;
  }();
  return table;
}

}  // namespace

void RunConfig::set(std::string_view key, std::string_view value) {
  const auto it = fields().find(key);
  if (it == fields().end()) fail(Errc::invalid_argument, "unknown config key '" + std::string(key) + "'");
  it->second.set(*this, value);
}

std::string RunConfig::get(std::string_view key) const {
  const auto it = fields().find(key);
  if (it == fields().end()) fail(Errc::invalid_argument, "unknown config key '" + std::string(key) + "'");
  return it->second.get(*this);
}

const std::vector<std::string>& RunConfig::keys() {
  static const std::vector<std::string> k = [] {
    std::vector<std::string> out;
    for (const auto& [name, f] : fields()) out.push_back(name);
    return out;
  }();
  return k;
}

RunConfig RunConfig::parse(std::string_view text, RunConfig base) {
  std::size_t pos = 0, line_no = 0;
  while (pos < text.size()) {
    const std::size_t nl = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      fail(Errc::invalid_argument, "config line " + std::to_string(line_no) + ": expected key = value");
    }
    base.set(trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  base.validate();
  return base;
}

RunConfig RunConfig::load(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) fail(Errc::unreadable_file, "cannot open config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), std::move(base));
}

std::string RunConfig::to_text() const {
  std::string out;
  for (const auto& [name, f] : fields()) out += name + " = " + f.get(*this) + "\n";
  return out;
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [name, f] : fields()) j[name] = f.get(*this);
  return j;
}

void RunConfig::validate() const {
  require(min_duration_s >= 0.0, "min_duration must be non-negative");
  require(am.env_rate_hz >= kMinEnvelopeRateHz, "env_rate must be >= 20 Hz");
  require(am.smooth_ms >= 0.0, "smooth_ms must be non-negative");
  require(f0.f0_min_hz > 0.0 && f0.f0_min_hz < f0.f0_max_hz, "f0_min must be positive and below f0_max");
  require(f0.frame_len_s >= 2.0 / f0.f0_min_hz - 1e-12, "f0_frame_len must cover two periods of f0_min");
  require(f0.hop_s > 0.0, "f0_hop must be positive");
  require(f0.voicing_threshold > 0.0 && f0.voicing_threshold < 1.0, "voicing_threshold must lie in (0, 1)");
  require(n_formants >= 1, "n_formants must be >= 1");
  require(peak_threshold > 0.0 && peak_threshold < 1.0, "peak_threshold must lie in (0, 1)");
  require(min_peak_separation_hz >= 0.0, "min_peak_separation must be non-negative");
  require(rolloff_fraction > 0.0 && rolloff_fraction <= 1.0, "rolloff_fraction must lie in (0, 1]");
  require(spectrogram.spectrum.zero_pad_factor >= 1, "zero_pad_factor must be >= 1");
  require(spectrogram.window_s > 0.0 && spectrogram.hop_s > 0.0, "window and hop must be positive");
  require(!grid.c_values.empty(), "grid_c must not be empty");
  require(grid.heuristic_gamma || !grid.gamma_values.empty(), "grid_gamma must not be empty");
  for (double c : grid.c_values) require(c > 0.0, "grid_c values must be positive");
  for (double g : grid.gamma_values) require(g > 0.0, "grid_gamma values must be positive");
  require(folds >= 2, "folds must be >= 2");
  require(test_fraction > 0.0 && test_fraction < 1.0, "test_fraction must lie in (0, 1)");
  require(repeats >= 1, "repeats must be >= 1");
  require(jobs >= 0, "jobs must be >= 0");
}

}  // namespace rfa
