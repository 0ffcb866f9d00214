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

#include <vector>

#include "rfa/lf_spectrum.hpp"

namespace rfa {

/// Time-stacked LF spectra over a sliding window. Each row is normalized
/// independently and obeys the LfSpectrum invariants.
struct LfSpectrogram {
  EnvelopeKind kind = EnvelopeKind::am;
  std::vector<double> frame_times_s;  // window centers
  std::vector<double> freqs_hz;
  std::vector<std::vector<double>> rows;  // frames x bins
  double resolution_hz = 0.0;
  double window_s = 0.0;
  double hop_s = 0.0;

  std::size_t frames() const { return rows.size(); }
  LfSpectrum row_spectrum(std::size_t frame) const;
};

struct SpectrogramOptions {
  double window_s = 3.0;
  double hop_s = 0.1;
  LfSpectrumOptions spectrum{};
};

/// Number of windows: floor((duration - window) / hop) + 1.
std::size_t spectrogram_frame_count(double duration_s, double window_s, double hop_s);

/// Frames are computed in parallel; see serial::compute_lf_spectrogram.
LfSpectrogram compute_lf_spectrogram(const Envelope& env, const SpectrogramOptions& opts = {});

enum class TrajectoryOrder { by_magnitude, by_frequency };

struct TrajectorySet {
  std::vector<std::vector<double>> freq;  // [rank][frame]
  std::vector<std::vector<double>> mag;   // [rank][frame]
  std::vector<double> frame_times_s;
};

/// Per frame, the `n` dominant separated peaks; the k-th trajectory collects
/// the k-th peak. With by_frequency the chosen peaks are re-sorted by
/// ascending frequency (sentinels stay last).
TrajectorySet extract_trajectories(const LfSpectrogram& sg, int n = kRhythmFormants,
                                   double min_separation_hz = 0.3,
                                   TrajectoryOrder order = TrajectoryOrder::by_magnitude);

/// Population variances: all frequency trajectories, then all magnitude
/// trajectories (VarRF1..n, VarMag1..n).
std::vector<double> trajectory_variances(const TrajectorySet& ts);

namespace serial {

LfSpectrogram compute_lf_spectrogram(const Envelope& env, const SpectrogramOptions& opts = {});

}  // namespace serial

}  // namespace rfa
