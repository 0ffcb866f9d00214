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
#include <string_view>

#include "json.hpp"
#include "rfa/audio.hpp"

namespace rfa {

enum class SynthKind { am_tone, vibrato, am_step, noise, silence };

std::string_view to_string(SynthKind kind);
SynthKind parse_synth_kind(std::string_view text);

/// Signal with analytically known rhythm content.
///   am_tone: (1 + depth cos(2 pi fm t)) sin(2 pi fc t)
///   vibrato: sin(2 pi integral(fc + depth sin(2 pi fm tau)) dtau), depth in Hz
///   am_step: am_tone whose modulation rate switches from fm to fm2 at the
///            midpoint, phase-continuously
///   noise:   uniform in [-1, 1), seeded
///   silence: zeros
struct SynthSpec {
  SynthKind kind = SynthKind::am_tone;
  double carrier_hz = 200.0;
  double mod_freq_hz = 4.0;
  double mod_freq2_hz = 6.0;
  double mod_depth = 0.5;
  double duration_s = 10.0;
  int sample_rate_hz = 16000;
  std::uint64_t seed = 0;
};

/// Throws invalid_argument when the spec violates its invariants.
void validate(const SynthSpec& spec);

AudioClip synthesize(const SynthSpec& spec);

nlohmann::json to_json(const SynthSpec& spec);

}  // namespace rfa
