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

#include "doctest.h"
#include "oracles.hpp"
#include "rfa/config.hpp"
#include "rfa/error.hpp"

#include <fstream>

using rfa::RunConfig;

TEST_CASE("defaults") {
  const RunConfig c;
  CHECK(c.min_duration_s == 4.0);
  CHECK(c.am.env_rate_hz == 100.0);
  CHECK(c.am.smooth_ms == 50.0);
  CHECK(c.f0.f0_min_hz == 60.0);
  CHECK(c.f0.f0_max_hz == 400.0);
  CHECK(c.spectrogram.window_s == 3.0);
  CHECK(c.spectrogram.hop_s == 0.1);
  CHECK(c.spectrum().zero_pad_factor == 4);
  CHECK(c.n_formants == 6);
  CHECK(c.folds == 5);
  CHECK(c.test_fraction == 0.2);
  CHECK(c.grid.c_values == std::vector<double>{0.1, 1, 10, 100});
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("parse overrides and ignores comments") {
  const auto c = RunConfig::parse(
      "# tuned run\n"
      "window = 2.5   # shorter\n"
      "\n"
      "taper = hann\n"
      "grid_c = 1, 10\n"
      "heuristic_gamma = false\n"
      "trajectory_order = frequency\n"
      "seed = 123\n");
  CHECK(c.spectrogram.window_s == 2.5);
  CHECK(c.spectrum().hann_taper);
  CHECK(c.grid.c_values == std::vector<double>{1, 10});
  CHECK_FALSE(c.grid.heuristic_gamma);
  CHECK(c.trajectory_order == rfa::TrajectoryOrder::by_frequency);
  CHECK(c.seed == 123);
  CHECK(c.spectrogram.hop_s == 0.1);
}

TEST_CASE("unknown keys and bad values are rejected") {
  CHECK_THROWS_AS(RunConfig::parse("windw = 3\n"), rfa::Error);
  CHECK_THROWS_AS(RunConfig::parse("window 3\n"), rfa::Error);
  CHECK_THROWS_AS(RunConfig::parse("window = three\n"), rfa::Error);
  CHECK_THROWS_AS(RunConfig::parse("folds = 2.5\n"), rfa::Error);
  CHECK_THROWS_AS(RunConfig::parse("taper = kaiser\n"), rfa::Error);
  CHECK_THROWS_AS(RunConfig::parse("f0_min = 500\n"), rfa::Error);
  CHECK_THROWS_AS(RunConfig::parse("test_fraction = 0\n"), rfa::Error);
  try {
    RunConfig::parse("bogus_key = 1\n");
  } catch (const rfa::Error& e) {
    CHECK(std::string(e.what()).find("bogus_key") != std::string::npos);
    CHECK(e.code() == rfa::Errc::invalid_argument);
  }
}

TEST_CASE("text form round-trips through parse") {
  RunConfig c;
  c.set("hop", "0.25");
  c.set("grid_gamma", "0.5,2");
  c.set("jobs", "3");
  const RunConfig back = RunConfig::parse(c.to_text());
  CHECK(back.to_text() == c.to_text());
  CHECK(back.spectrogram.hop_s == 0.25);
  CHECK(back.jobs == 3);
  const auto j = c.to_json();
  CHECK(j["hop"] == "0.25");
  CHECK(j.size() == RunConfig::keys().size());
  for (const auto& k : RunConfig::keys()) CHECK(c.get(k) == j[k].get<std::string>());
}

TEST_CASE("load from file") {
  rfa::testing::TempDir dir("config");
  std::ofstream(dir / "run.cfg") << "min_duration = 2\nrepeats = 5\n";
  const auto c = RunConfig::load(dir / "run.cfg");
  CHECK(c.min_duration_s == 2.0);
  CHECK(c.repeats == 5);
  CHECK_THROWS_AS(RunConfig::load(dir / "absent.cfg"), rfa::Error);
}
