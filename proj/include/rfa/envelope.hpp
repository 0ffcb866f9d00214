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

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rfa/audio.hpp"

namespace rfa {

enum class EnvelopeKind { am, fm };

std::string_view to_string(EnvelopeKind kind);

/// Uniformly sampled modulation envelope. AM values are non-negative
/// magnitudes; FM values are Hz deviations from the median F0.
struct Envelope {
  EnvelopeKind kind = EnvelopeKind::am;
  std::vector<double> values;
  double rate_hz = 0.0;
  std::string source_id;

  double duration_s() const {
    return rate_hz > 0 ? static_cast<double>(values.size()) / rate_hz : 0.0;
  }
};

inline constexpr double kMinEnvelopeRateHz = 20.0;

struct AmEnvelopeOptions {
  double env_rate_hz = 100.0;
  double smooth_ms = 50.0;
};

/// |analytic(x)| via the frequency-domain Hilbert transform, block-averaged
/// down to `env_rate_hz` and smoothed with a centered moving average.
/// Requires at least one second of audio.
Envelope am_envelope(const AudioClip& clip, const AmEnvelopeOptions& opts = {});

/// Magnitude of the analytic signal at the audio rate.
std::vector<double> analytic_magnitude(std::span<const double> x);

/// Centered moving average with `taps` points (forced odd). The window
/// shrinks at the edges so constants are preserved.
std::vector<double> moving_average(std::span<const double> x, int taps);

struct F0Options {
  double f0_min_hz = 60.0;
  double f0_max_hz = 400.0;
  double frame_len_s = 0.040;
  double hop_s = 0.010;
  double voicing_threshold = 0.30;
};

/// Per-frame F0 estimates; 0 marks an unvoiced frame. Frame i starts at
/// sample i * hop and its center is reported by frame_time_s().
struct F0Track {
  std::vector<double> f0_hz;
  double hop_s = 0.0;
  double frame_len_s = 0.0;
  double f0_min_hz = 0.0;
  double f0_max_hz = 0.0;
  double duration_s = 0.0;
  std::string source_id;

  double frame_time_s(std::size_t i) const {
    return static_cast<double>(i) * hop_s + 0.5 * frame_len_s;
  }
  std::size_t voiced_count() const;
};

/// NCCF pitch tracker: normalized cross-correlation over lags
/// [rate/f0_max, rate/f0_min], threshold voicing, parabolic lag refinement
/// and a 5-frame median filter. Frames are processed in parallel.
F0Track track_f0(const AudioClip& clip, const F0Options& opts = {});

/// Median of the voiced frames of `track`; throws fully_unvoiced if none.
double voiced_median(const F0Track& track);

/// FM envelope: voiced frames become f0 - median, unvoiced frames 0, then
/// linear interpolation from the frame grid to `env_rate_hz`.
Envelope fm_envelope(const F0Track& track, double env_rate_hz = 100.0);

/// Odd-length median filter with edge replication.
std::vector<double> median_filter(std::span<const double> x, int width);

namespace serial {

/// Single-threaded reference for rfa::track_f0; results are identical.
F0Track track_f0(const AudioClip& clip, const F0Options& opts = {});

}  // namespace serial

}  // namespace rfa
