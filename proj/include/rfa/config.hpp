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
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "rfa/classifier.hpp"
#include "rfa/envelope.hpp"
#include "rfa/lf_spectrogram.hpp"
#include "rfa/lf_spectrum.hpp"

namespace rfa {

/// Every tunable of the pipeline and the classifier harness. Serialized as
/// a flat `key = value` document; unknown keys are rejected.
struct RunConfig {
  double min_duration_s = kDefaultMinDurationS;

  AmEnvelopeOptions am{};
  F0Options f0{};

  int n_formants = kRhythmFormants;
  double peak_threshold = 0.5;
  double min_peak_separation_hz = 0.3;
  double rolloff_fraction = 0.85;
  int dct_coefficients = 4;

  SpectrogramOptions spectrogram{};  // spectrogram.spectrum is the whole-utterance setting too
  TrajectoryOrder trajectory_order = TrajectoryOrder::by_magnitude;

  GridSpec grid{};
  std::size_t folds = 5;
  std::uint64_t seed = 0;
  double test_fraction = 0.2;
  int repeats = 20;
  int jobs = 0;  // 0: OpenMP default

  const LfSpectrumOptions& spectrum() const { return spectrogram.spectrum; }

  /// Sets one key from its textual value. Throws invalid_argument on
  /// unknown keys or unparsable values.
  void set(std::string_view key, std::string_view value);
  std::string get(std::string_view key) const;

  static const std::vector<std::string>& keys();

  /// Parses `key = value` lines; '#' starts a comment.
  static RunConfig parse(std::string_view text, RunConfig base);
  static RunConfig parse(std::string_view text) { return parse(text, RunConfig()); }
  static RunConfig load(const std::filesystem::path& path, RunConfig base);
  static RunConfig load(const std::filesystem::path& path) { return load(path, RunConfig()); }

  std::string to_text() const;
  nlohmann::json to_json() const;

  /// Checks cross-field constraints (f0 bounds, thresholds, grid...).
  void validate() const;
};

}  // namespace rfa
