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

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rfa/envelope.hpp"
#include "rfa/lf_spectrum.hpp"

namespace rfa {

// Column layout of the fused rhythm vector. Reordering anything here breaks
// every persisted dataset and model.
//
//   A (14): per envelope NDP, MFDP, VFDP, DCT0..DCT3
//   B (14): per envelope Centroid, Spread, Rolloff, Flatness, Entropy,
//           Skewness, Kurtosis
//   C (24): per envelope VarRF1..6, VarMag1..6
//
// Within each group the AM block precedes the FM block. The twelve direct
// R-formant frequencies (RF1..6 per envelope) live outside the fused vector.

enum class FeatureGroup { a, b, c, r_formant };

enum class FeatureFamily { threshold, dct, spectral, var_rf, var_mag, r_formant };

struct FeatureDescriptor {
  std::string name;
  FeatureGroup group;
  FeatureFamily family;
  EnvelopeKind envelope;
};

inline constexpr std::size_t kFusedDims = 52;
inline constexpr std::size_t kRFormantDims = 2 * kRhythmFormants;

/// The 52 fused features in contract order.
const std::vector<FeatureDescriptor>& fused_features();
/// The 12 direct R-formant columns (RF1-AM..RF6-AM, RF1-FM..RF6-FM).
const std::vector<FeatureDescriptor>& r_formant_features();
/// fused_features() followed by r_formant_features().
const std::vector<FeatureDescriptor>& all_features();

std::vector<std::string> fused_feature_names();
const FeatureDescriptor* find_feature(std::string_view name);

/// Whole-utterance measures of one envelope's LF spectrum.
struct SpectrumFeatures {
  ThresholdFeatures threshold;
  std::array<double, 4> dct{};
  SpectralMeasures spectral;
  std::array<double, kRhythmFormants> r_formants_hz{};
};

struct FeatureVector {
  std::array<double, kFusedDims> values{};
  std::array<double, kRFormantDims> r_formants_hz{};
  std::string source_id;
  std::optional<std::string> label;

  /// values followed by r_formants_hz, matching all_features().
  std::vector<double> all_values() const;
};

/// Places the per-envelope measures into contract order. Trajectory
/// variance inputs must hold 12 values each (VarRF1..6, VarMag1..6).
FeatureVector assemble(const SpectrumFeatures& am, const SpectrumFeatures& fm,
                       std::span<const double> am_traj_vars,
                       std::span<const double> fm_traj_vars);

/// Subset of columns, e.g. one row of the per-group comparison table.
/// Groups: A, B, C (both VarRF and VarMag), VarRF, VarMag, RF.
struct FeatureSelection {
  bool threshold_dct = false;  // A
  bool spectral = false;       // B
  bool var_rf = false;         // C, first half
  bool var_mag = false;        // C, second half
  bool r_formants = false;     // RF
  bool am = true;
  bool fm = true;

  /// Parses comma-separated group tokens ("A,B,C", "VarRF", "RF") and an
  /// envelope list ("AM", "FM", "AM,FM").
  static FeatureSelection parse(std::string_view groups, std::string_view envelopes = "AM,FM");
  static FeatureSelection fused() { return parse("A,B,C"); }

  bool contains(const FeatureDescriptor& d) const;
  /// Names in catalog order.
  std::vector<std::string> names() const;
};

}  // namespace rfa
