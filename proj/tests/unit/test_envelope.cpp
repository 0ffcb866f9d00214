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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "rfa/envelope.hpp"
#include "rfa/error.hpp"
#include "rfa/synth.hpp"

using rfa::AudioClip;

namespace {

constexpr double kPi = std::numbers::pi;

AudioClip am_tone(double fm, double depth, double fc, double seconds, int rate) {
  AudioClip c;
  c.sample_rate_hz = rate;
  c.source_id = "am";
  const auto n = static_cast<std::size_t>(seconds * rate);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / rate;
    c.samples.push_back((1 + depth * std::cos(2 * kPi * fm * t)) * std::sin(2 * kPi * fc * t));
  }
  return c;
}

}  // namespace

TEST_CASE("analytic magnitude of a pure tone is flat") {
  std::vector<double> x(4096);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = 0.7 * std::cos(2 * kPi * 64.0 * i / 4096.0 + 0.3);
  const auto m = rfa::analytic_magnitude(x);
  for (double v : m) CHECK(v == doctest::Approx(0.7).epsilon(1e-9));
}

TEST_CASE("moving average shrinks at the edges") {
  const std::vector<double> x{1, 2, 3, 4, 5, 6};
  const auto y = rfa::moving_average(x, 3);
  REQUIRE(y.size() == 6);
  CHECK(y[0] == doctest::Approx(1.5));
  CHECK(y[1] == doctest::Approx(2.0));
  CHECK(y[4] == doctest::Approx(5.0));
  CHECK(y[5] == doctest::Approx(5.5));
  CHECK(rfa::moving_average(x, 1) == x);
}

TEST_CASE("AM envelope follows the modulator") {
  const AudioClip c = am_tone(4.0, 0.5, 200.0, 5.0, 16000);
  const auto env = rfa::am_envelope(c);
  CHECK(env.kind == rfa::EnvelopeKind::am);
  CHECK(env.rate_hz == 100.0);
  CHECK(env.values.size() == 500);
  for (double v : env.values) CHECK(v >= 0.0);
  // The 50 ms smoother attenuates a 4 Hz modulation by about 6 %, so allow 0.05.
  for (std::size_t i = 20; i + 20 < env.values.size(); ++i) {
    const double t = static_cast<double>(i) / 100.0;  // samples are block centres
    CHECK(std::abs(env.values[i] - (1 + 0.5 * std::cos(2 * kPi * 4.0 * t))) < 0.05);
  }
}

TEST_CASE("AM envelope of silence is zero and short clips are rejected") {
  AudioClip z;
  z.sample_rate_hz = 8000;
  z.samples.assign(16000, 0.0);
  for (double v : rfa::am_envelope(z).values) CHECK(v == 0.0);

  AudioClip brief = am_tone(4.0, 0.5, 200.0, 0.5, 8000);
  try {
    rfa::am_envelope(brief);
    FAIL("expected too_short");
  } catch (const rfa::Error& e) {
    CHECK(e.code() == rfa::Errc::too_short);
  }
}

TEST_CASE("F0 of a steady harmonic tone") {
  for (double f0 : {90.0, 150.0, 233.0, 310.0}) {
    CAPTURE(f0);
    AudioClip c;
    c.sample_rate_hz = 16000;
    for (int i = 0; i < 16000; ++i) {
      const double t = i / 16000.0;
      c.samples.push_back(std::sin(2 * kPi * f0 * t) + 0.5 * std::sin(4 * kPi * f0 * t) +
                          0.25 * std::sin(6 * kPi * f0 * t));
    }
    const auto track = rfa::track_f0(c);
    REQUIRE(track.f0_hz.size() == (16000 - 640) / 160 + 1);
    CHECK(track.voiced_count() == track.f0_hz.size());
    CHECK(rfa::voiced_median(track) == doctest::Approx(f0).epsilon(0.01));
    for (double v : track.f0_hz) {
      CHECK(v >= 60.0);
      CHECK(v <= 400.0);
    }
  }
}

TEST_CASE("F0 tracker leaves noise and silence unvoiced") {
  AudioClip n;
  n.sample_rate_hz = 16000;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 32000; ++i) n.samples.push_back(u(rng));
  const auto track = rfa::track_f0(n);
  CHECK(track.voiced_count() < track.f0_hz.size() / 20);

  AudioClip z;
  z.sample_rate_hz = 16000;
  z.samples.assign(32000, 0.0);
  const auto silent = rfa::track_f0(z);
  CHECK(silent.voiced_count() == 0);
  try {
    rfa::fm_envelope(silent);
    FAIL("expected fully_unvoiced");
  } catch (const rfa::Error& e) {
    CHECK(e.code() == rfa::Errc::fully_unvoiced);
  }
}

TEST_CASE("F0 options are validated") {
  AudioClip c;
  c.sample_rate_hz = 16000;
  c.samples.assign(16000, 0.0);
  rfa::F0Options o;
  o.frame_len_s = 0.02;  // shorter than two periods of 60 Hz
  CHECK_THROWS_AS(rfa::track_f0(c, o), rfa::Error);
  o = {};
  o.f0_max_hz = 5000.0;
  CHECK_THROWS_AS(rfa::track_f0(c, o), rfa::Error);
}

TEST_CASE("median filter replicates edges") {
  const std::vector<double> x{5, 1, 9, 2, 8, 3};
  const auto y = rfa::median_filter(x, 5);
  REQUIRE(y.size() == x.size());
  // window at 0 sees {5,5,5,1,9}
  CHECK(y[0] == 5);
  CHECK(y[2] == 5);  // {5,1,9,2,8}
  CHECK(y[5] == 3);  // {2,8,3,3,3}
}

TEST_CASE("FM envelope is the mean-free voiced contour at the envelope rate") {
  rfa::F0Track t;
  t.hop_s = 0.01;
  t.frame_len_s = 0.04;
  t.f0_min_hz = 60;
  t.f0_max_hz = 400;
  t.duration_s = 4.0;
  t.source_id = "x";
  for (int i = 0; i < 397; ++i) t.f0_hz.push_back(i % 50 < 40 ? 200.0 + (i % 2) : 0.0);
  const auto env = rfa::fm_envelope(t, 100.0);
  CHECK(env.kind == rfa::EnvelopeKind::fm);
  CHECK(env.values.size() == 400);
  const double med = rfa::voiced_median(t);
  CHECK(med == doctest::Approx(200.5));
  for (double v : env.values) {
    CHECK(v >= -0.5 - 1e-12);
    CHECK(v <= 0.5 + 1e-12);
  }
}

TEST_CASE("vibrato contour recovers the carrier") {
  rfa::SynthSpec s;
  s.kind = rfa::SynthKind::vibrato;
  s.carrier_hz = 220.0;
  s.mod_freq_hz = 5.0;
  s.mod_depth = 10.0;
  s.duration_s = 5.0;
  const auto track = rfa::track_f0(rfa::synthesize(s));
  CHECK(track.voiced_count() == track.f0_hz.size());
  CHECK(std::abs(rfa::voiced_median(track) - 220.0) < 2.0);
  const auto [lo, hi] = std::minmax_element(track.f0_hz.begin(), track.f0_hz.end());
  CHECK(*lo > 205.0);
  CHECK(*hi < 235.0);
  CHECK(*hi - *lo > 15.0);
}
