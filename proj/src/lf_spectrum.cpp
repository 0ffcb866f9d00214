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

#include "rfa/lf_spectrum.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>

#include "rfa/error.hpp"
#include "rfa/fft.hpp"

namespace rfa {
namespace {

// Spectra whose peak is below this fraction of the envelope's L1 mass are
// rounding residue from mean removal and are reported as all-zero.
constexpr double kDegenerateRatio = 1e-9;
constexpr double kFlatnessFloor = 1e-12;

}  // namespace

bool LfSpectrum::is_zero() const {
  return std::all_of(mags.begin(), mags.end(), [](double m) { return m == 0.0; });
}

LfSpectrum lf_spectrum_of(std::span<const double> values, double rate_hz,
                          EnvelopeKind kind, const LfSpectrumOptions& opts) {
  require(rate_hz > 0.0, "envelope rate must be positive");
  require(opts.zero_pad_factor >= 1, "zero-pad factor must be >= 1");
  require(opts.band_hz > 0.0 && opts.band_hz <= rate_hz / 2.0,
          "LF band must lie below the envelope Nyquist rate");
  require(values.size() >= 2, "envelope chunk too short");

  const double mean =
      std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  double l1 = 0.0;
  std::vector<double> centered(values.size());
  const double denom = static_cast<double>(values.size() - 1);
  for (std::size_t i = 0; i < values.size(); ++i) {
    l1 += std::abs(values[i]);
    double v = values[i] - mean;
    if (opts.hann_taper) v *= 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / denom);
    centered[i] = v;
  }

  const std::size_t n_fft = static_cast<std::size_t>(opts.zero_pad_factor) * std::bit_ceil(values.size());
  const auto spec = fft::real_forward(centered, n_fft);

  LfSpectrum out;
  out.kind = kind;
  out.resolution_hz = rate_hz / static_cast<double>(n_fft);
  const auto last_bin = std::min<std::size_t>(
      n_fft / 2, static_cast<std::size_t>(std::floor(opts.band_hz / out.resolution_hz + 1e-9)));
  out.freqs_hz.reserve(last_bin);
  out.mags.reserve(last_bin);
  double peak = 0.0;
  for (std::size_t k = 1; k <= last_bin; ++k) {
    out.freqs_hz.push_back(static_cast<double>(k) * out.resolution_hz);
    out.mags.push_back(std::abs(spec[k]));
    peak = std::max(peak, out.mags.back());
  }
  if (peak <= kDegenerateRatio * l1 || peak == 0.0) {
    std::fill(out.mags.begin(), out.mags.end(), 0.0);
  } else {
    for (double& m : out.mags) m /= peak;
  }
  return out;
}

LfSpectrum compute_lf_spectrum(const Envelope& env, const LfSpectrumOptions& opts) {
  require(env.rate_hz > 0.0, "envelope rate must be positive");
  if (static_cast<double>(env.values.size()) < 2.0 * env.rate_hz - 1e-9) {
    fail(Errc::too_short, "LF spectrum needs at least 2 s of envelope, got " +
                              std::to_string(env.duration_s()) + " s");
  }
  return lf_spectrum_of(env.values, env.rate_hz, env.kind, opts);
}

std::vector<std::size_t> local_maxima(std::span<const double> mags) {
  std::vector<std::size_t> peaks;
  const std::size_t n = mags.size();
  std::size_t i = 1;
  while (i + 1 < n) {
    if (mags[i - 1] < mags[i]) {
      std::size_t ahead = i + 1;
      while (ahead + 1 < n && mags[ahead] == mags[i]) ++ahead;
      if (mags[ahead] < mags[i]) {
        peaks.push_back((i + ahead - 1) / 2);
        i = ahead;
        continue;
      }
    }
    ++i;
  }
  return peaks;
}

std::vector<std::size_t> separated_peaks(const LfSpectrum& spec, double min_separation_hz) {
  require(min_separation_hz >= 0.0, "peak separation must be non-negative");
  auto candidates = local_maxima(spec.mags);
  std::stable_sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
    return spec.mags[a] > spec.mags[b];
  });
  std::vector<std::size_t> kept;
  for (std::size_t c : candidates) {
    const bool clear = std::none_of(kept.begin(), kept.end(), [&](std::size_t k) {
      return std::abs(spec.freqs_hz[c] - spec.freqs_hz[k]) < min_separation_hz - 1e-12;
    });
    if (clear) kept.push_back(c);
  }
  return kept;
}

PeakSet pick_r_formants(const LfSpectrum& spec, int n, double min_separation_hz) {
  require(n >= 1, "number of R-formants must be >= 1");
  const auto peaks = separated_peaks(spec, min_separation_hz);
  PeakSet out;
  out.count = std::min<std::size_t>(peaks.size(), static_cast<std::size_t>(n));
  out.freqs_hz.assign(static_cast<std::size_t>(n), 0.0);
  out.mags.assign(static_cast<std::size_t>(n), 0.0);
  for (std::size_t i = 0; i < out.count; ++i) {
    out.freqs_hz[i] = spec.freqs_hz[peaks[i]];
    out.mags[i] = spec.mags[peaks[i]];
  }
  return out;
}

ThresholdFeatures threshold_features(const LfSpectrum& spec, double threshold,
                                     double min_separation_hz) {
  require(threshold > 0.0 && threshold < 1.0, "peak threshold must lie in (0, 1)");
  std::vector<double> freqs;
  for (std::size_t p : separated_peaks(spec, min_separation_hz)) {
    if (spec.mags[p] >= threshold) freqs.push_back(spec.freqs_hz[p]);
  }
  ThresholdFeatures out;
  out.ndp = static_cast<int>(freqs.size());
  if (freqs.empty()) return out;
  const double count = static_cast<double>(freqs.size());
  out.mfdp_hz = std::accumulate(freqs.begin(), freqs.end(), 0.0) / count;
  double ss = 0.0;
  for (double f : freqs) ss += (f - out.mfdp_hz) * (f - out.mfdp_hz);
  out.vfdp_hz2 = ss / count;
  return out;
}

std::vector<double> dct_features(const LfSpectrum& spec, int k) {
  const std::size_t n = spec.size();
  require(n > 0, "DCT of an empty spectrum");
  require(k >= 1, "DCT coefficient count must be >= 1");
  if (static_cast<std::size_t>(k) > n) {
    fail(Errc::invalid_argument, "requested " + std::to_string(k) +
                                     " DCT coefficients from " + std::to_string(n) + " bins");
  }
  std::vector<double> out(static_cast<std::size_t>(k), 0.0);
  const double step = std::numbers::pi / static_cast<double>(n);
  for (std::size_t c = 0; c < out.size(); ++c) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      acc += spec.mags[i] * std::cos(step * (static_cast<double>(i) + 0.5) * static_cast<double>(c));
    }
    out[c] = acc;
  }
  return out;
}

SpectralMeasures spectral_measures(const LfSpectrum& spec, double rolloff_fraction) {
  require(rolloff_fraction > 0.0 && rolloff_fraction <= 1.0,
          "rolloff fraction must lie in (0, 1]");
  const auto& m = spec.mags;
  const auto& f = spec.freqs_hz;
  const std::size_t n = m.size();
  const double total = std::accumulate(m.begin(), m.end(), 0.0);
  if (n == 0 || !(total > 0.0)) {
    fail(Errc::degenerate_spectrum, "spectral measures of an all-zero spectrum");
  }

  SpectralMeasures s;
  for (std::size_t i = 0; i < n; ++i) s.centroid_hz += m[i] / total * f[i];

  double m2 = 0.0, m3 = 0.0, m4 = 0.0, entropy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double p = m[i] / total;
    const double d = f[i] - s.centroid_hz;
    m2 += p * d * d;
    m3 += p * d * d * d;
    m4 += p * d * d * d * d;
    if (p > 0.0) entropy -= p * std::log2(p);
  }
  s.spread_hz = std::sqrt(m2);
  if (s.spread_hz > 0.0) {
    s.skewness = m3 / (s.spread_hz * s.spread_hz * s.spread_hz);
    s.kurtosis = m4 / (m2 * m2);
  }
  s.entropy = n > 1 ? std::clamp(entropy / std::log2(static_cast<double>(n)), 0.0, 1.0) : 0.0;

  double energy = 0.0;
  for (double v : m) energy += v * v;
  double cumulative = 0.0;
  s.rolloff_hz = f.back();
  for (std::size_t i = 0; i < n; ++i) {
    cumulative += m[i] * m[i];
    if (cumulative >= rolloff_fraction * energy) {
      s.rolloff_hz = f[i];
      break;
    }
  }

  const bool any_zero = std::any_of(m.begin(), m.end(), [](double v) { return v <= 0.0; });
  if (!any_zero) {
    double log_sum = 0.0;
    for (double v : m) log_sum += std::log(std::max(v, kFlatnessFloor));
    const double geometric = std::exp(log_sum / static_cast<double>(n));
    s.flatness = std::min(1.0, geometric / (total / static_cast<double>(n)));
  }
  return s;
}

}  // namespace rfa
