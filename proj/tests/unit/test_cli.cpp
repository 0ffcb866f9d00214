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

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "commands.hpp"
#include "doctest.h"
#include "json.hpp"
#include "oracles.hpp"
#include "rfa/dataset.hpp"
#include "rfa/features.hpp"
#include "rfa/synth.hpp"
#include "rfa/audio.hpp"

namespace fs = std::filesystem;
using rfa::testing::TempDir;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = rfa::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void synth(const fs::path& out, const std::string& kind, double mod, double seconds, double carrier = 200.0) {
  const auto r = run({"synth", "--kind", kind, "--mod-freq", std::to_string(mod), "--duration",
                      std::to_string(seconds), "--carrier", std::to_string(carrier), "-o", out.string()});
  REQUIRE(r.code == 0);
}

// Labeled table over the full fused schema, classes separated on every column.
fs::path fused_dataset(const TempDir& dir, const std::string& name) {
  rfa::Dataset ds;
  ds.feature_names = rfa::fused_feature_names();
  std::mt19937_64 rng(3);
  std::normal_distribution<double> z(0.0, 1.0);
  const std::vector<std::string> labels{"ben", "kan", "mal"};
  for (int i = 0; i < 30; ++i) {
    for (std::size_t k = 0; k < labels.size(); ++k) {
      rfa::DatasetRow r{labels[k] + std::to_string(i), labels[k], {}};
      for (std::size_t c = 0; c < ds.dims(); ++c) r.values.push_back(z(rng) + (c % 3 == k ? 3.0 : 0.0));
      ds.rows.push_back(r);
    }
  }
  rfa::write_dataset(ds, dir / name);
  return dir / name;
}

}  // namespace

TEST_CASE("usage errors exit with 1") {
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"synth", "--kind", "CHIRP", "-o", "/tmp/x.wav"}).code == 1);
  CHECK(run({"train", "data.csv", "-m", "m.json", "--bogus-flag"}).code == 1);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"--version"}).code == 0);
}

TEST_CASE("synth writes a WAV with a JSON sidecar") {
  TempDir dir("cli");
  synth(dir / "tone.wav", "AM_TONE", 4.0, 5.0);
  CHECK(fs::exists(dir / "tone.wav"));
  const auto side = nlohmann::json::parse(slurp(dir / "tone.json"));
  CHECK(side["synth"]["kind"] == "AM_TONE");
  CHECK(side["synth"]["mod_freq_hz"] == 4.0);
  CHECK(side.contains("version"));
}

TEST_CASE("extract one file per class") {
  TempDir dir("cli");
  const std::vector<std::string> classes{"ben", "kan", "mal", "mar", "tam"};
  for (std::size_t k = 0; k < classes.size(); ++k)
    synth(dir / "audio" / classes[k] / ("utt" + std::to_string(k) + ".wav"), "AM_TONE", 2.0 + k, 5.0, 150.0 + 20 * k);

  const auto r = run({"extract", (dir / "audio").string(), "-o", (dir / "f.csv").string(), "--no-rformants",
                      "--schema-json", (dir / "schema.json").string()});
  CHECK(r.code == 0);
  const auto ds = rfa::read_dataset(dir / "f.csv");
  CHECK(ds.size() == 5);
  CHECK(ds.dims() == 52);
  CHECK(ds.label_set() == classes);
  CHECK(ds.rows[0].source_id == "ben/utt0");
  CHECK(fs::exists(dir / "schema.json"));

  const auto text = slurp(dir / "f.csv");
  CHECK(text.rfind("# rfa ", 0) == 0);
  CHECK(text.find("# config {") != std::string::npos);

  // Same inputs and config, different worker count: identical bytes.
  CHECK(run({"extract", (dir / "audio").string(), "-o", (dir / "g.csv").string(), "--no-rformants", "--jobs", "1"})
            .code == 0);
  const auto again = slurp(dir / "g.csv");
  CHECK(again.substr(again.find("source_id")) == text.substr(text.find("source_id")));
  CHECK(run({"extract", (dir / "audio").string(), "-o", (dir / "h.csv").string(), "--no-rformants"}).code == 0);
  CHECK(slurp(dir / "h.csv") == text);

  CHECK(run({"extract", (dir / "audio").string(), "-o", (dir / "rf.csv").string()}).code == 0);
  CHECK(rfa::read_dataset(dir / "rf.csv").dims() == 64);
}

TEST_CASE("extract skips bad files and records why") {
  TempDir dir("cli");
  synth(dir / "in" / "ben" / "good.wav", "AM_TONE", 3.0, 5.0);
  synth(dir / "in" / "ben" / "short.wav", "AM_TONE", 3.0, 4.0);
  synth(dir / "in" / "kan" / "quiet.wav", "SILENCE", 3.0, 5.0);
  std::ofstream(dir / "in" / "kan" / "broken.wav") << "not a wav file";

  const auto r = run({"extract", (dir / "in").string(), "-o", (dir / "f.csv").string(), "--skipped",
                      (dir / "skipped.csv").string()});
  CHECK(r.code == 0);
  CHECK(rfa::read_dataset(dir / "f.csv").size() == 1);
  const auto skipped = slurp(dir / "skipped.csv");
  CHECK(skipped.find("ben/short") != std::string::npos);
  CHECK(skipped.find("kan/quiet,fully_unvoiced") != std::string::npos);
  CHECK(skipped.find("kan/broken,malformed_file") != std::string::npos);
  CHECK(r.err.find("skipped kan/broken") != std::string::npos);
}

TEST_CASE("extract with nothing usable fails with a data error") {
  TempDir dir("cli");
  rfa::SynthSpec spec;
  spec.duration_s = 4.0;
  for (double fm : {2.0, 5.0}) {
    spec.mod_freq_hz = fm;
    auto clip = rfa::synthesize(spec);
    clip.samples.resize(static_cast<std::size_t>(3.5 * clip.sample_rate_hz));
    fs::create_directories(dir / "in");
    rfa::write_wav(dir / "in" / ("clip" + std::to_string(int(fm)) + ".wav"), rfa::peak_normalize(clip));
  }
  const auto r = run({"extract", (dir / "in").string(), "-o", (dir / "f.csv").string()});
  CHECK(r.code == 2);
  CHECK_FALSE(fs::exists(dir / "f.csv"));
  CHECK(r.err.find("no usable files") != std::string::npos);
  CHECK(r.err.find("not above minimum 4 s") != std::string::npos);
}

TEST_CASE("label map overrides directory names") {
  TempDir dir("cli");
  synth(dir / "in" / "x" / "one.wav", "AM_TONE", 3.0, 5.0);
  synth(dir / "in" / "y" / "two.wav", "AM_TONE", 4.0, 5.0);
  std::ofstream(dir / "labels.csv") << "# key,label\nx,tam\ny/two.wav,mar\n";
  REQUIRE(run({"extract", (dir / "in").string(), "-o", (dir / "f.csv").string(), "--labels",
               (dir / "labels.csv").string()})
              .code == 0);
  const auto ds = rfa::read_dataset(dir / "f.csv");
  CHECK(ds.rows[0].label == "tam");
  CHECK(ds.rows[1].label == "mar");
}

TEST_CASE("train, evaluate and importance") {
  TempDir dir("cli");
  const auto data = fused_dataset(dir, "fused.csv");

  auto r = run({"train", data.string(), "-m", (dir / "a.json").string(), "--groups", "A"});
  REQUIRE(r.code == 0);
  auto model = nlohmann::json::parse(slurp(dir / "a.json"));
  CHECK(model["feature_names"].size() == 14);
  CHECK(model["split"]["test_fraction"] == 0.2);
  CHECK(model["provenance"]["config"]["window"] == "3");

  r = run({"train", data.string(), "-m", (dir / "abc.json").string(), "--groups", "A,B,C"});
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(slurp(dir / "abc.json"))["feature_names"].size() == 52);
  CHECK(r.out.find("selected C=") != std::string::npos);

  r = run({"train", data.string(), "-m", (dir / "am.json").string(), "--groups", "C", "--envelopes", "AM"});
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(slurp(dir / "am.json"))["feature_names"].size() == 12);

  r = run({"evaluate", data.string(), "-m", (dir / "abc.json").string(), "--report", (dir / "rep.json").string(),
           "--confusion", (dir / "conf.csv").string()});
  REQUIRE(r.code == 0);
  const auto rep = nlohmann::json::parse(slurp(dir / "rep.json"));
  CHECK(rep["test_size"] == 18);
  CHECK(rep["accuracy"].get<double>() > 0.9);
  CHECK(r.out.find("accuracy") != std::string::npos);
  CHECK(slurp(dir / "conf.csv").find("true_label,ben,kan,mal") != std::string::npos);

  r = run({"evaluate", data.string(), "-m", (dir / "abc.json").string(), "--split", "all"});
  CHECK(r.code == 0);
  CHECK(r.out.find("evaluated 90 samples") != std::string::npos);

  r = run({"importance", data.string(), "-m", (dir / "a.json").string(), "--repeats", "3", "-o",
           (dir / "imp.csv").string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("substitute for SHAP") != std::string::npos);
  const auto imp = slurp(dir / "imp.csv");
  CHECK(imp.find("rank,feature,mean_drop,std_drop") != std::string::npos);
}

TEST_CASE("evaluate names the first missing column") {
  TempDir dir("cli");
  const auto data = fused_dataset(dir, "fused.csv");
  REQUIRE(run({"train", data.string(), "-m", (dir / "m.json").string(), "--groups", "B"}).code == 0);

  auto ds = rfa::read_dataset(data);
  const std::vector<std::string> keep{"NDP-AM", "Centroid-AM", "Spread-AM"};
  rfa::write_dataset(ds.select(keep), dir / "narrow.csv");
  const auto r = run({"evaluate", (dir / "narrow.csv").string(), "-m", (dir / "m.json").string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("'Rolloff-AM'") != std::string::npos);
}

TEST_CASE("config file with flag overrides") {
  TempDir dir("cli");
  synth(dir / "in" / "ben" / "a.wav", "AM_TONE", 3.0, 6.0);
  std::ofstream(dir / "run.cfg") << "window = 2.5\nhop = 0.5\n";
  REQUIRE(run({"extract", (dir / "in").string(), "-o", (dir / "f.csv").string(), "--config",
               (dir / "run.cfg").string(), "--hop", "0.25"})
              .code == 0);
  const auto text = slurp(dir / "f.csv");
  CHECK(text.find("\"window\":\"2.5\"") != std::string::npos);
  CHECK(text.find("\"hop\":\"0.25\"") != std::string::npos);

  std::ofstream(dir / "bad.cfg") << "windows = 2.5\n";
  CHECK(run({"extract", (dir / "in").string(), "-o", (dir / "g.csv").string(), "--config",
             (dir / "bad.cfg").string()})
            .code == 1);
}

TEST_CASE("plot-data writes the eight panels") {
  TempDir dir("cli");
  synth(dir / "tone.wav", "AM_TONE", 4.0, 6.0);
  auto r = run({"plot-data", (dir / "tone.wav").string(), "-o", (dir / "fig").string()});
  REQUIRE(r.code == 0);
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(dir / "fig")) files += e.is_regular_file();
  CHECK(files == 8);

  synth(dir / "quiet.wav", "SILENCE", 4.0, 6.0);
  r = run({"plot-data", (dir / "quiet.wav").string(), "-o", (dir / "q").string()});
  CHECK(r.code == 0);
  CHECK(r.err.find("FM panels not written") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "q" / "fm_spectrum.csv"));
  CHECK(fs::exists(dir / "q" / "am_spectrum.csv"));

  CHECK(run({"plot-data", (dir / "missing.wav").string(), "-o", (dir / "m").string()}).code == 2);
}
