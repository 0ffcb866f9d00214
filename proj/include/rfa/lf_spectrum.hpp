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
#include <span>
#include <vector>

#include "rfa/envelope.hpp"

namespace rfa {

inline constexpr double kLfBandHz = 10.0;

/// Magnitude spectrum of an envelope on the bins 0 < f <= 10 Hz, scaled so
/// the largest magnitude is 1. A degenerate (constant) envelope yields an
/// all-zero spectrum.
struct LfSpectrum {
  EnvelopeKind kind = EnvelopeKind::am;
  std::vector<double> freqs_hz;
  std::vector<double> mags;
  double resolution_hz = 0.0;

  std::size_t size() const { return mags.size(); }
  bool is_zero() const;
};

struct LfSpectrumOptions {
  int zero_pad_factor = 4;
  bool hann_taper = false;
  double band_hz = kLfBandHz;
};

/// Mean-removed, zero-padded FFT magnitude of `env`. Requires >= 2 s.
LfSpectrum compute_lf_spectrum(const Envelope& env, const LfSpectrumOptions& opts = {});

/// Same computation on a raw chunk of envelope samples, without the
/// minimum-duration check. Used per window by the spectrogram.
LfSpectrum lf_spectrum_of(std::span<const double> values, double rate_hz,
                          EnvelopeKind kind, const LfSpectrumOptions& opts = {});

/// Peaks ordered by descending magnitude. Unfilled slots hold (0 Hz, 0).
struct PeakSet {
  std::vector<double> freqs_hz;
  std::vector<double> mags;
  std::size_t count = 0;
};

/// Indices of local maxima: strictly higher than the nearest differing
/// neighbour on both sides, flat tops reported at their middle, end bins
/// never peaks.
std::vector<std::size_t> local_maxima(std::span<const double> mags);

/// Local maxima of `spec` after suppressing any peak closer than
/// `min_separation_hz` to a larger one. Ordered by descending magnitude.
std::vector<std::size_t> separated_peaks(const LfSpectrum& spec, double min_separation_hz);

inline constexpr int kRhythmFormants = 6;

PeakSet pick_r_formants(const LfSpectrum& spec, int n = kRhythmFormants,
                        double min_separation_hz = 0.3);

struct ThresholdFeatures {
  int ndp = 0;
  double mfdp_hz = 0.0;
  double vfdp_hz2 = 0.0;
};

ThresholdFeatures threshold_features(const LfSpectrum& spec, double threshold = 0.5,
                                     double min_separation_hz = 0.3);

/// Unnormalized DCT-II of the spectrum magnitudes, first `k` coefficients:
///   X_k = sum_n x_n cos(pi / N * (n + 1/2) * k)
std::vector<double> dct_features(const LfSpectrum& spec, int k = 4);

struct SpectralMeasures {
  double centroid_hz = 0.0;
  double spread_hz = 0.0;
  double rolloff_hz = 0.0;
  double flatness = 0.0;
  double entropy = 0.0;
  double skewness = 0.0;
  double kurtosis = 0.0;

  std::array<double, 7> as_array() const {
    return {centroid_hz, spread_hz, rolloff_hz, flatness, entropy, skewness, kurtosis};
  }
};

/// Distribution-shape measures of the magnitude spectrum. Throws
/// degenerate_spectrum on an all-zero spectrum.
SpectralMeasures spectral_measures(const LfSpectrum& spec, double rolloff_fraction = 0.85);

}  // namespace rfa
