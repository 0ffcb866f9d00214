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

#include <optional>
#include <string>
#include <vector>

#include "rfa/audio.hpp"
#include "rfa/config.hpp"
#include "rfa/envelope.hpp"
#include "rfa/features.hpp"
#include "rfa/lf_spectrogram.hpp"
#include "rfa/lf_spectrum.hpp"

namespace rfa {

/// Everything derived from one modulation envelope.
struct EnvelopeAnalysis {
  Envelope envelope;
  LfSpectrum spectrum;
  PeakSet formants;
  ThresholdFeatures threshold;
  std::vector<double> dct;
  std::optional<SpectralMeasures> spectral;  // empty for an all-zero spectrum
  LfSpectrogram spectrogram;
  TrajectorySet trajectories;
  std::vector<double> trajectory_variances;

  /// Spectral measures default to zeros when the spectrum is degenerate.
  SpectrumFeatures spectrum_features() const;
};

EnvelopeAnalysis analyze_envelope(Envelope env, const RunConfig& cfg);

/// Full per-clip analysis. A fully unvoiced clip leaves `fm` empty and
/// records the reason in `fm_error` instead of throwing.
struct ClipAnalysis {
  AudioClip clip;  // peak-normalized
  EnvelopeAnalysis am;
  F0Track f0;
  std::optional<EnvelopeAnalysis> fm;
  std::string fm_error;
};

ClipAnalysis analyze_clip(const AudioClip& clip, const RunConfig& cfg);

/// Normalizes, analyzes and assembles the fused vector. Throws rfa::Error
/// when the clip cannot yield a complete vector; non-fatal issues are
/// appended to `warnings`.
FeatureVector extract_features(const AudioClip& clip, const RunConfig& cfg,
                               std::vector<std::string>* warnings = nullptr);

}  // namespace rfa
