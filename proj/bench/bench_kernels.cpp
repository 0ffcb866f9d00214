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

// Serial reference vs OpenMP kernel timings.

#include <benchmark/benchmark.h>

#include <random>

#include "rfa/envelope.hpp"
#include "rfa/lf_spectrogram.hpp"
#include "rfa/matrix.hpp"
#include "rfa/svm.hpp"
#include "rfa/synth.hpp"

namespace {

const rfa::AudioClip& clip() {
  static const rfa::AudioClip c = [] {
    rfa::SynthSpec s;
    s.kind = rfa::SynthKind::vibrato;
    s.duration_s = 20.0;
    s.carrier_hz = 180.0;
    s.mod_depth = 12.0;
    return rfa::synthesize(s);
  }();
  return c;
}

const rfa::Envelope& envelope() {
  static const rfa::Envelope e = rfa::am_envelope(clip());
  return e;
}

rfa::Matrix points(std::size_t n) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> z;
  rfa::Matrix x(n, 52);
  for (double& v : x.data()) v = z(rng);
  return x;
}

void BM_TrackF0Serial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(rfa::serial::track_f0(clip()));
}
void BM_TrackF0Parallel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(rfa::track_f0(clip()));
}

void BM_SpectrogramSerial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(rfa::serial::compute_lf_spectrogram(envelope()));
}
void BM_SpectrogramParallel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(rfa::compute_lf_spectrogram(envelope()));
}

void BM_DistancesSerial(benchmark::State& st) {
  const auto x = points(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(rfa::serial::squared_distances(x));
}
void BM_DistancesParallel(benchmark::State& st) {
  const auto x = points(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(rfa::squared_distances(x));
}

}  // namespace

BENCHMARK(BM_TrackF0Serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_TrackF0Parallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SpectrogramSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SpectrogramParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_DistancesSerial)->Arg(400)->Arg(1600)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_DistancesParallel)->Arg(400)->Arg(1600)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
