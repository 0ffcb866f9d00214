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

#include "rfa/pipeline.hpp"

#include <algorithm>

#include "rfa/error.hpp"

namespace rfa {

SpectrumFeatures EnvelopeAnalysis::spectrum_features() const {
  SpectrumFeatures s;
  s.threshold = threshold;
  for (std::size_t i = 0; i < s.dct.size() && i < dct.size(); ++i) s.dct[i] = dct[i];
  s.spectral = spectral.value_or(SpectralMeasures{});
  for (std::size_t i = 0; i < s.r_formants_hz.size() && i < formants.freqs_hz.size(); ++i) {
    s.r_formants_hz[i] = formants.freqs_hz[i];
  }
  return s;
}

EnvelopeAnalysis analyze_envelope(Envelope env, const RunConfig& cfg) {
  EnvelopeAnalysis a;
  a.envelope = std::move(env);
  a.spectrum = compute_lf_spectrum(a.envelope, cfg.spectrum());
  a.formants = pick_r_formants(a.spectrum, cfg.n_formants, cfg.min_peak_separation_hz);
  a.threshold = threshold_features(a.spectrum, cfg.peak_threshold, cfg.min_peak_separation_hz);
  a.dct = dct_features(a.spectrum, cfg.dct_coefficients);
  if (!a.spectrum.is_zero()) a.spectral = spectral_measures(a.spectrum, cfg.rolloff_fraction);
  a.spectrogram = compute_lf_spectrogram(a.envelope, cfg.spectrogram);
  a.trajectories = extract_trajectories(a.spectrogram, cfg.n_formants, cfg.min_peak_separation_hz,
                                        cfg.trajectory_order);
  if (a.spectrogram.frames() >= 2) a.trajectory_variances = trajectory_variances(a.trajectories);
  return a;
}

ClipAnalysis analyze_clip(const AudioClip& clip, const RunConfig& cfg) {
  ClipAnalysis out;
  out.clip = peak_normalize(clip);
  out.am = analyze_envelope(am_envelope(out.clip, cfg.am), cfg);
  out.f0 = track_f0(out.clip, cfg.f0);
  try {
    out.fm = analyze_envelope(fm_envelope(out.f0, cfg.am.env_rate_hz), cfg);
  } catch (const Error& e) {
    if (e.code() != Errc::fully_unvoiced) throw;
    out.fm_error = e.what();
  }
  return out;
}

FeatureVector extract_features(const AudioClip& clip, const RunConfig& cfg,
                               std::vector<std::string>* warnings) {
  require(cfg.n_formants == kRhythmFormants,
          "the fused feature vector is defined for exactly 6 R-formants");
  const ClipAnalysis a = analyze_clip(clip, cfg);
  if (!a.fm) fail(Errc::fully_unvoiced, a.fm_error);
  for (const EnvelopeAnalysis* e : {&a.am, &*a.fm}) {
    if (e->trajectory_variances.empty()) {
      fail(Errc::too_short, "only one spectrogram frame; trajectory variances undefined");
    }
    if (!e->spectral && warnings != nullptr) {
      warnings->push_back(std::string(to_string(e->envelope.kind)) +
                          " LF spectrum is all-zero; spectral measures set to 0");
    }
  }
  FeatureVector fv = assemble(a.am.spectrum_features(), a.fm->spectrum_features(),
                              a.am.trajectory_variances, a.fm->trajectory_variances);
  fv.source_id = clip.source_id;
  return fv;
}

}  // namespace rfa
