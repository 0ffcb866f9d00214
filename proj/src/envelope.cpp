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

#include "rfa/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rfa/error.hpp"
#include "rfa/fft.hpp"

namespace rfa {

std::string_view to_string(EnvelopeKind kind) {
  return kind == EnvelopeKind::am ? "AM" : "FM";
}

std::vector<double> analytic_magnitude(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n == 0) return {};
  std::vector<fft::Complex> buf(x.begin(), x.end());
  auto spec = fft::forward(buf);
  // One-sided spectrum: keep DC (and Nyquist for even n), double the
  // positive frequencies, zero the negative ones.
  const std::size_t half = n / 2;
  for (std::size_t k = 1; k < n; ++k) {
    if (k < (n + 1) / 2) {
      spec[k] *= 2.0;
    } else if (!(n % 2 == 0 && k == half)) {
      spec[k] = 0.0;
    }
  }
  const auto analytic = fft::inverse(spec);
  std::vector<double> mag(n);
  std::transform(analytic.begin(), analytic.end(), mag.begin(),
                 [](const fft::Complex& c) { return std::abs(c); });
  return mag;
}

std::vector<double> moving_average(std::span<const double> x, int taps) {
  if (taps <= 1 || x.empty()) return {x.begin(), x.end()};
  if (taps % 2 == 0) ++taps;
  const auto half = static_cast<std::ptrdiff_t>(taps / 2);
  const auto n = static_cast<std::ptrdiff_t>(x.size());
  std::vector<double> prefix(x.size() + 1, 0.0);
  std::partial_sum(x.begin(), x.end(), prefix.begin() + 1);
  std::vector<double> out(x.size());
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto lo = std::max<std::ptrdiff_t>(0, i - half);
    const auto hi = std::min<std::ptrdiff_t>(n, i + half + 1);
    out[i] = (prefix[hi] - prefix[lo]) / static_cast<double>(hi - lo);
  }
  return out;
}

Envelope am_envelope(const AudioClip& clip, const AmEnvelopeOptions& opts) {
  require(opts.env_rate_hz >= kMinEnvelopeRateHz, "envelope rate must be >= 20 Hz");
  require(opts.smooth_ms >= 0.0, "smoothing width must be non-negative");
  require(clip.sample_rate_hz > 0, "clip has no sample rate");
  require(opts.env_rate_hz <= clip.sample_rate_hz,
          "envelope rate exceeds the audio sample rate");
  if (clip.duration_s() < 1.0) {
    fail(Errc::too_short, "AM envelope needs at least 1 s of audio, got " +
                              std::to_string(clip.duration_s()) + " s");
  }

  const auto mag = analytic_magnitude(clip.samples);
  const double fs = clip.sample_rate_hz;
  const double step = fs / opts.env_rate_hz;
  const auto n = static_cast<std::ptrdiff_t>(mag.size());
  const auto out_len = static_cast<std::size_t>(
      std::lround(static_cast<double>(mag.size()) * opts.env_rate_hz / fs));

  std::vector<double> prefix(mag.size() + 1, 0.0);
  std::partial_sum(mag.begin(), mag.end(), prefix.begin() + 1);

  // Block average centered on each output instant (boxcar anti-alias).
  std::vector<double> decimated(out_len, 0.0);
  for (std::size_t j = 0; j < out_len; ++j) {
    const double center = static_cast<double>(j) * step;
    auto lo = static_cast<std::ptrdiff_t>(std::ceil(center - 0.5 * step));
    auto hi = static_cast<std::ptrdiff_t>(std::ceil(center + 0.5 * step));
    lo = std::clamp<std::ptrdiff_t>(lo, 0, n);
    hi = std::clamp<std::ptrdiff_t>(hi, lo, n);
    if (hi == lo) hi = std::min<std::ptrdiff_t>(lo + 1, n);
    if (hi > lo) decimated[j] = (prefix[hi] - prefix[lo]) / static_cast<double>(hi - lo);
  }

  const int taps = static_cast<int>(std::lround(opts.smooth_ms / 1000.0 * opts.env_rate_hz));
  Envelope env;
  env.kind = EnvelopeKind::am;
  env.values = moving_average(decimated, taps);
  env.rate_hz = opts.env_rate_hz;
  env.source_id = clip.source_id;
  return env;
}

std::size_t F0Track::voiced_count() const {
  return static_cast<std::size_t>(
      std::count_if(f0_hz.begin(), f0_hz.end(), [](double f) { return f > 0.0; }));
}

std::vector<double> median_filter(std::span<const double> x, int width) {
  if (width <= 1 || x.empty()) return {x.begin(), x.end()};
  if (width % 2 == 0) ++width;
  const auto half = static_cast<std::ptrdiff_t>(width / 2);
  const auto n = static_cast<std::ptrdiff_t>(x.size());
  std::vector<double> out(x.size());
  std::vector<double> window(static_cast<std::size_t>(width));
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    for (std::ptrdiff_t k = -half; k <= half; ++k) {
      window[static_cast<std::size_t>(k + half)] = x[std::clamp<std::ptrdiff_t>(i + k, 0, n - 1)];
    }
    std::nth_element(window.begin(), window.begin() + half, window.end());
    out[i] = window[half];
  }
  return out;
}

namespace {

constexpr int kMedianWidth = 5;
// Among NCCF local maxima, the shortest lag within this fraction of the
// global maximum wins. Guards against picking a multiple of the period.
constexpr double kOctaveGuard = 0.95;
constexpr double kEnergyFloor = 1e-10;

struct TrackerSetup {
  std::size_t frame_len = 0;
  std::size_t hop = 0;
  std::size_t lag_min = 0;
  std::size_t lag_max = 0;
  std::size_t frames = 0;
  double fs = 0.0;
  std::vector<double> padded;        // samples followed by lag_max + 2 zeros
  std::vector<double> energy_prefix;  // prefix sums of padded squares
};

TrackerSetup make_setup(const AudioClip& clip, const F0Options& o) {
  require(clip.sample_rate_hz > 0, "clip has no sample rate");
  require(o.f0_min_hz > 0.0 && o.f0_min_hz < o.f0_max_hz,
          "F0 bounds must satisfy 0 < f0_min < f0_max");
  require(o.hop_s > 0.0, "F0 hop must be positive");
  require(o.frame_len_s >= 2.0 / o.f0_min_hz - 1e-12,
          "F0 frame length must cover two periods of f0_min");
  require(o.voicing_threshold > 0.0 && o.voicing_threshold < 1.0,
          "voicing threshold must lie in (0, 1)");

  TrackerSetup s;
  s.fs = clip.sample_rate_hz;
  require(o.f0_max_hz < s.fs / 4.0, "f0_max too close to the Nyquist rate");
  s.frame_len = static_cast<std::size_t>(std::lround(o.frame_len_s * s.fs));
  s.hop = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(o.hop_s * s.fs)));
  s.lag_min = std::max<std::size_t>(2, static_cast<std::size_t>(std::floor(s.fs / o.f0_max_hz)));
  s.lag_max = static_cast<std::size_t>(std::ceil(s.fs / o.f0_min_hz));
  if (s.frame_len == 0 || clip.samples.size() < s.frame_len) {
    fail(Errc::too_short, "clip shorter than one F0 analysis frame");
  }
  s.frames = (clip.samples.size() - s.frame_len) / s.hop + 1;

  s.padded.assign(clip.samples.size() + s.lag_max + 2, 0.0);
  std::copy(clip.samples.begin(), clip.samples.end(), s.padded.begin());
  s.energy_prefix.assign(s.padded.size() + 1, 0.0);
  for (std::size_t i = 0; i < s.padded.size(); ++i) {
    s.energy_prefix[i + 1] = s.energy_prefix[i] + s.padded[i] * s.padded[i];
  }
  return s;
}

// `nccf` is scratch indexed by lag, sized lag_max + 2.
double estimate_frame(const TrackerSetup& s, std::size_t frame,
                      const F0Options& o, std::vector<double>& nccf) {
  const std::size_t start = frame * s.hop;
  const std::size_t n = s.frame_len;
  const double* x = s.padded.data() + start;
  const auto& P = s.energy_prefix;
  const double e0 = P[start + n] - P[start];
  if (e0 < kEnergyFloor) return 0.0;

  for (std::size_t k = s.lag_min - 1; k <= s.lag_max + 1; ++k) {
    const double ek = P[start + k + n] - P[start + k];
    if (ek < kEnergyFloor) {
      nccf[k] = 0.0;
      continue;
    }
    double cross = 0.0;
    for (std::size_t j = 0; j < n; ++j) cross += x[j] * x[j + k];
    nccf[k] = cross / std::sqrt(e0 * ek);
  }

  std::size_t best = s.lag_min;
  for (std::size_t k = s.lag_min; k <= s.lag_max; ++k) {
    if (nccf[k] > nccf[best]) best = k;
  }
  const double peak = nccf[best];
  if (peak < o.voicing_threshold) return 0.0;

  for (std::size_t k = s.lag_min; k <= s.lag_max; ++k) {
    if (nccf[k] >= kOctaveGuard * peak && nccf[k] >= nccf[k - 1] &&
        nccf[k] >= nccf[k + 1]) {
      best = k;
      break;
    }
  }

  double lag = static_cast<double>(best);
  const double ym = nccf[best - 1], y0 = nccf[best], yp = nccf[best + 1];
  const double denom = ym - 2.0 * y0 + yp;
  if (denom < 0.0) lag += std::clamp(0.5 * (ym - yp) / denom, -0.5, 0.5);
  return std::clamp(s.fs / lag, o.f0_min_hz, o.f0_max_hz);
}

F0Track finish_track(const AudioClip& clip, const F0Options& o,
                     const TrackerSetup& s, std::vector<double> raw) {
  F0Track t;
  t.f0_hz = median_filter(raw, kMedianWidth);
  t.hop_s = static_cast<double>(s.hop) / s.fs;
  t.frame_len_s = static_cast<double>(s.frame_len) / s.fs;
  t.f0_min_hz = o.f0_min_hz;
  t.f0_max_hz = o.f0_max_hz;
  t.duration_s = clip.duration_s();
  t.source_id = clip.source_id;
  return t;
}

}  // namespace

F0Track track_f0(const AudioClip& clip, const F0Options& opts) {
  const TrackerSetup s = make_setup(clip, opts);
  std::vector<double> raw(s.frames, 0.0);
  const auto frames = static_cast<std::ptrdiff_t>(s.frames);
#pragma omp parallel
  {
    std::vector<double> nccf(s.lag_max + 2, 0.0);
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < frames; ++i) {
      raw[static_cast<std::size_t>(i)] = estimate_frame(s, static_cast<std::size_t>(i), opts, nccf);
    }
  }
  return finish_track(clip, opts, s, std::move(raw));
}

namespace serial {

F0Track track_f0(const AudioClip& clip, const F0Options& opts) {
  const TrackerSetup s = make_setup(clip, opts);
  std::vector<double> raw(s.frames, 0.0);
  std::vector<double> nccf(s.lag_max + 2, 0.0);
  for (std::size_t i = 0; i < s.frames; ++i) raw[i] = estimate_frame(s, i, opts, nccf);
  return finish_track(clip, opts, s, std::move(raw));
}

}  // namespace serial

double voiced_median(const F0Track& track) {
  std::vector<double> voiced;
  voiced.reserve(track.f0_hz.size());
  for (double f : track.f0_hz) {
    if (f > 0.0) voiced.push_back(f);
  }
  if (voiced.empty()) {
    fail(Errc::fully_unvoiced, "no voiced frames in '" + track.source_id + "'");
  }
  std::sort(voiced.begin(), voiced.end());
  const std::size_t m = voiced.size() / 2;
  return voiced.size() % 2 == 1 ? voiced[m] : 0.5 * (voiced[m - 1] + voiced[m]);
}

Envelope fm_envelope(const F0Track& track, double env_rate_hz) {
  require(env_rate_hz >= kMinEnvelopeRateHz, "envelope rate must be >= 20 Hz");
  require(track.hop_s > 0.0, "F0 track has no frame grid");
  const double median = voiced_median(track);

  std::vector<double> centered(track.f0_hz.size());
  std::transform(track.f0_hz.begin(), track.f0_hz.end(), centered.begin(),
                 [&](double f) { return f > 0.0 ? f - median : 0.0; });

  const auto out_len = static_cast<std::size_t>(std::lround(track.duration_s * env_rate_hz));
  const double last = static_cast<double>(centered.size() - 1);
  Envelope env;
  env.kind = EnvelopeKind::fm;
  env.rate_hz = env_rate_hz;
  env.source_id = track.source_id;
  env.values.resize(out_len);
  for (std::size_t j = 0; j < out_len; ++j) {
    const double t = static_cast<double>(j) / env_rate_hz;
    const double u = std::clamp((t - 0.5 * track.frame_len_s) / track.hop_s, 0.0, last);
    const auto i0 = static_cast<std::size_t>(std::floor(u));
    const std::size_t i1 = std::min(i0 + 1, centered.size() - 1);
    const double w = u - static_cast<double>(i0);
    env.values[j] = (1.0 - w) * centered[i0] + w * centered[i1];
  }
  return env;
}

}  // namespace rfa
