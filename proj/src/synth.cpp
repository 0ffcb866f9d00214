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

#include "rfa/synth.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "rfa/error.hpp"

namespace rfa {

std::string_view to_string(SynthKind kind) {
  switch (kind) {
    case SynthKind::am_tone: return "AM_TONE";
    case SynthKind::vibrato: return "VIBRATO";
    case SynthKind::am_step: return "AM_STEP";
    case SynthKind::noise: return "NOISE";
    case SynthKind::silence: return "SILENCE";
  }
  return "";
}

SynthKind parse_synth_kind(std::string_view text) {
  for (auto k : {SynthKind::am_tone, SynthKind::vibrato, SynthKind::am_step, SynthKind::noise,
                 SynthKind::silence}) {
    if (text == to_string(k)) return k;
  }
  fail(Errc::invalid_argument, "unknown synth kind '" + std::string(text) +
                                   "' (expected AM_TONE, VIBRATO, AM_STEP, NOISE or SILENCE)");
}

void validate(const SynthSpec& s) {
  require(s.sample_rate_hz >= kMinSampleRateHz, "synth sample rate must be >= 8000 Hz");
  require(s.duration_s >= 4.0, "synth duration must be >= 4 s");
  const bool modulated = s.kind == SynthKind::am_tone || s.kind == SynthKind::vibrato ||
                         s.kind == SynthKind::am_step;
  if (!modulated) return;
  require(s.mod_freq_hz > 0.0 && s.mod_freq_hz < 10.0, "modulation frequency must lie in (0, 10) Hz");
  if (s.kind == SynthKind::am_step) {
    require(s.mod_freq2_hz > 0.0 && s.mod_freq2_hz < 10.0,
            "second modulation frequency must lie in (0, 10) Hz");
  }
  require(s.carrier_hz > 0.0 && s.carrier_hz < 0.5 * s.sample_rate_hz,
          "carrier must lie below the Nyquist rate");
  require(s.mod_depth >= 0.0, "modulation depth must be non-negative");
  if (s.kind == SynthKind::vibrato) {
    require(s.mod_depth < s.carrier_hz, "vibrato depth must be smaller than the carrier");
  }
}

AudioClip synthesize(const SynthSpec& s) {
  validate(s);
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const auto n = static_cast<std::size_t>(std::lround(s.duration_s * s.sample_rate_hz));
  const double fs = s.sample_rate_hz;

  AudioClip clip;
  clip.sample_rate_hz = s.sample_rate_hz;
  clip.source_id = std::string(to_string(s.kind));
  clip.samples.assign(n, 0.0);

  switch (s.kind) {
    case SynthKind::am_tone:
      for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / fs;
        clip.samples[i] = (1.0 + s.mod_depth * std::cos(two_pi * s.mod_freq_hz * t)) *
                          std::sin(two_pi * s.carrier_hz * t);
      }
      break;
    case SynthKind::vibrato:
      for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / fs;
        const double phase = two_pi * s.carrier_hz * t +
                             s.mod_depth / s.mod_freq_hz * (1.0 - std::cos(two_pi * s.mod_freq_hz * t));
        clip.samples[i] = std::sin(phase);
      }
      break;
    case SynthKind::am_step: {
      const double switch_t = 0.5 * s.duration_s;
      const double phase_at_switch = two_pi * s.mod_freq_hz * switch_t;
      for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / fs;
        const double mod_phase = t < switch_t
                                     ? two_pi * s.mod_freq_hz * t
                                     : phase_at_switch + two_pi * s.mod_freq2_hz * (t - switch_t);
        clip.samples[i] = (1.0 + s.mod_depth * std::cos(mod_phase)) *
                          std::sin(two_pi * s.carrier_hz * t);
      }
      break;
    }
    case SynthKind::noise: {
      std::mt19937_64 rng(s.seed);
      std::uniform_real_distribution<double> dist(-1.0, 1.0);
      for (double& x : clip.samples) x = dist(rng);
      break;
    }
    case SynthKind::silence:
      break;
  }
  return clip;
}

nlohmann::json to_json(const SynthSpec& s) {
  return {{"kind", std::string(to_string(s.kind))},
          {"carrier_hz", s.carrier_hz},
          {"mod_freq_hz", s.mod_freq_hz},
          {"mod_freq2_hz", s.mod_freq2_hz},
          {"mod_depth", s.mod_depth},
          {"duration_s", s.duration_s},
          {"sample_rate_hz", s.sample_rate_hz},
          {"seed", s.seed}};
}

}  // namespace rfa
