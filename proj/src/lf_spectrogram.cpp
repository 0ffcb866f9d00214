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

#include "rfa/lf_spectrogram.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>

#include "rfa/error.hpp"

namespace rfa {

LfSpectrum LfSpectrogram::row_spectrum(std::size_t frame) const {
  LfSpectrum s;
  s.kind = kind;
  s.freqs_hz = freqs_hz;
  s.mags = rows.at(frame);
  s.resolution_hz = resolution_hz;
  return s;
}

std::size_t spectrogram_frame_count(double duration_s, double window_s, double hop_s) {
  require(window_s > 0.0 && hop_s > 0.0, "window and hop must be positive");
  if (duration_s < window_s) return 0;
  return static_cast<std::size_t>(std::floor((duration_s - window_s) / hop_s + 1e-9)) + 1;
}

namespace {

struct Layout {
  std::size_t window = 0;
  std::vector<std::size_t> starts;
};

Layout make_layout(const Envelope& env, const SpectrogramOptions& o) {
  require(env.rate_hz > 0.0, "envelope rate must be positive");
  require(o.window_s > 0.0 && o.hop_s > 0.0, "window and hop must be positive");
  Layout l;
  l.window = static_cast<std::size_t>(std::lround(o.window_s * env.rate_hz));
  require(l.window >= 4, "spectrogram window covers fewer than 4 envelope samples");
  const std::size_t frames = spectrogram_frame_count(env.duration_s(), o.window_s, o.hop_s);
  if (frames == 0 || env.values.size() < l.window) {
    fail(Errc::too_short, "envelope of " + std::to_string(env.duration_s()) +
                              " s is shorter than the " + std::to_string(o.window_s) +
                              " s spectrogram window");
  }
  l.starts.resize(frames);
  const std::size_t last_start = env.values.size() - l.window;
  for (std::size_t i = 0; i < frames; ++i) {
    const auto start = static_cast<std::size_t>(
        std::lround(static_cast<double>(i) * o.hop_s * env.rate_hz));
    l.starts[i] = std::min(start, last_start);
  }
  return l;
}

LfSpectrum frame_spectrum(const Envelope& env, const Layout& l, std::size_t i,
                          const SpectrogramOptions& o) {
  const std::span<const double> chunk(env.values.data() + l.starts[i], l.window);
  return lf_spectrum_of(chunk, env.rate_hz, env.kind, o.spectrum);
}

LfSpectrogram make_shell(const Envelope& env, const Layout& l, const SpectrogramOptions& o) {
  LfSpectrogram sg;
  sg.kind = env.kind;
  sg.window_s = o.window_s;
  sg.hop_s = o.hop_s;
  sg.rows.resize(l.starts.size());
  sg.frame_times_s.resize(l.starts.size());
  for (std::size_t i = 0; i < l.starts.size(); ++i) {
    sg.frame_times_s[i] =
        (static_cast<double>(l.starts[i]) + 0.5 * static_cast<double>(l.window)) / env.rate_hz;
  }
  return sg;
}

void set_axis(LfSpectrogram& sg, const LfSpectrum& first) {
  sg.freqs_hz = first.freqs_hz;
  sg.resolution_hz = first.resolution_hz;
}

}  // namespace

LfSpectrogram compute_lf_spectrogram(const Envelope& env, const SpectrogramOptions& opts) {
  const Layout l = make_layout(env, opts);
  LfSpectrogram sg = make_shell(env, l, opts);
  set_axis(sg, frame_spectrum(env, l, 0, opts));
  const auto frames = static_cast<std::ptrdiff_t>(l.starts.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < frames; ++i) {
    const auto f = static_cast<std::size_t>(i);
    sg.rows[f] = frame_spectrum(env, l, f, opts).mags;
  }
  return sg;
}

namespace serial {

LfSpectrogram compute_lf_spectrogram(const Envelope& env, const SpectrogramOptions& opts) {
  const Layout l = make_layout(env, opts);
  LfSpectrogram sg = make_shell(env, l, opts);
  for (std::size_t i = 0; i < l.starts.size(); ++i) {
    auto spec = frame_spectrum(env, l, i, opts);
    if (i == 0) set_axis(sg, spec);
    sg.rows[i] = std::move(spec.mags);
  }
  return sg;
}

}  // namespace serial

TrajectorySet extract_trajectories(const LfSpectrogram& sg, int n, double min_separation_hz,
                                   TrajectoryOrder order) {
  require(n >= 1, "trajectory count must be >= 1");
  require(sg.frames() >= 1, "spectrogram has no frames");
  const auto ranks = static_cast<std::size_t>(n);
  TrajectorySet ts;
  ts.frame_times_s = sg.frame_times_s;
  ts.freq.assign(ranks, std::vector<double>(sg.frames(), 0.0));
  ts.mag.assign(ranks, std::vector<double>(sg.frames(), 0.0));

  for (std::size_t f = 0; f < sg.frames(); ++f) {
    const PeakSet peaks = pick_r_formants(sg.row_spectrum(f), n, min_separation_hz);
    std::vector<std::size_t> slot(ranks);
    std::iota(slot.begin(), slot.end(), 0);
    if (order == TrajectoryOrder::by_frequency) {
      std::stable_sort(slot.begin(), slot.begin() + static_cast<std::ptrdiff_t>(peaks.count),
                       [&](std::size_t a, std::size_t b) {
                         return peaks.freqs_hz[a] < peaks.freqs_hz[b];
                       });
    }
    for (std::size_t r = 0; r < ranks; ++r) {
      ts.freq[r][f] = peaks.freqs_hz[slot[r]];
      ts.mag[r][f] = peaks.mags[slot[r]];
    }
  }
  return ts;
}

namespace {

double population_variance(const std::vector<double>& x) {
  const double n = static_cast<double>(x.size());
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  return ss / n;
}

}  // namespace

std::vector<double> trajectory_variances(const TrajectorySet& ts) {
  require(!ts.freq.empty() && ts.freq.size() == ts.mag.size(), "malformed trajectory set");
  const std::size_t frames = ts.freq.front().size();
  if (frames < 2) {
    fail(Errc::too_short, "trajectory variance needs at least 2 spectrogram frames");
  }
  std::vector<double> out;
  out.reserve(2 * ts.freq.size());
  for (const auto& t : ts.freq) out.push_back(population_variance(t));
  for (const auto& t : ts.mag) out.push_back(population_variance(t));
  return out;
}

}  // namespace rfa
