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
#include <string>
#include <vector>

namespace rfa {

/// Mono PCM audio. Samples are real amplitudes; after `peak_normalize` the
/// largest magnitude is exactly 1 (or the clip is silent).
struct AudioClip {
  std::vector<double> samples;
  int sample_rate_hz = 0;
  std::string source_id;

  double duration_s() const {
    return sample_rate_hz > 0
               ? static_cast<double>(samples.size()) / sample_rate_hz
               : 0.0;
  }
};

inline constexpr int kMinSampleRateHz = 8000;
inline constexpr double kDefaultMinDurationS = 4.0;

/// Reads a RIFF/WAVE file holding 8-, 16- or 24-bit linear PCM (plain or
/// WAVE_FORMAT_EXTENSIBLE). Multichannel frames are averaged to mono.
/// Throws rfa::Error with Errc::unreadable_file, malformed_file,
/// unsupported_encoding or empty_audio.
AudioClip load_audio(const std::filesystem::path& path);

/// Writes mono linear PCM. Samples are clamped to the representable range.
void write_wav(const std::filesystem::path& path, const AudioClip& clip,
               int bits_per_sample = 16);

/// Scales the clip so that max |x| == 1. Silent clips come back unchanged.
AudioClip peak_normalize(AudioClip clip);

/// Keeps clips strictly longer than `min_duration_s`, preserving order.
std::vector<AudioClip> filter_by_duration(std::vector<AudioClip> clips,
                                          double min_duration_s =
                                              kDefaultMinDurationS);

}  // namespace rfa
