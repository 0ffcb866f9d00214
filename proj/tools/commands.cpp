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

#include "commands.hpp"

#include <omp.h>

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rfa/audio.hpp"
#include "rfa/classifier.hpp"
#include "rfa/config.hpp"
#include "rfa/dataset.hpp"
#include "rfa/error.hpp"
#include "rfa/features.hpp"
#include "rfa/log.hpp"
#include "rfa/metrics.hpp"
#include "rfa/pipeline.hpp"
#include "rfa/synth.hpp"
#include "rfa/version.hpp"

namespace rfa::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// ------------------------------------------------------------------ helpers

json provenance(const RunConfig& cfg) {
  return {{"tool", kToolName}, {"version", kVersion}, {"config", cfg.to_json()}};
}

std::vector<std::string> provenance_lines(const RunConfig& cfg) {
  return {std::string(kToolName) + " " + std::string(kVersion), "config " + cfg.to_json().dump()};
}

std::string comment_block(const RunConfig& cfg) {
  std::string s;
  for (const auto& line : provenance_lines(cfg)) s += "# " + line + "\n";
  return s;
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::unreadable_file, "cannot write " + path.string());
  out << text;
  if (!out) fail(Errc::unreadable_file, "failed writing " + path.string());
}

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::unreadable_file, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(Errc::malformed_file, path.string() + ": " + e.what());
  }
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
}

/// `--config FILE` plus one override flag per config key.
class ConfigFlags {
 public:
  void attach(CLI::App* app) {
    app->add_option("--config", file_, "flat key = value config file");
    for (const auto& key : RunConfig::keys()) {
      std::string flag = "--" + key;
      std::replace(flag.begin(), flag.end(), '_', '-');
      options_[key] = app->add_option(flag, values_[key], "overrides config key " + key);
    }
  }

  RunConfig resolve() const {
    RunConfig cfg = file_.empty() ? RunConfig{} : RunConfig::load(file_);
    for (const auto& [key, opt] : options_) {
      if (opt->count() > 0) cfg.set(key, values_.at(key));
    }
    cfg.validate();
    if (cfg.jobs > 0) omp_set_num_threads(cfg.jobs);
    return cfg;
  }

 private:
  std::string file_;
  std::map<std::string, std::string> values_;
  std::map<std::string, CLI::Option*> options_;
};

// ------------------------------------------------------------------ extract

struct ExtractArgs {
  ConfigFlags config;
  std::string input_dir;
  std::string output;
  std::string label_map;
  std::string skipped;
  std::string schema_json;
  bool no_rformants = false;
};

bool is_wav(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".wav";
}

std::map<std::string, std::string> read_label_map(const fs::path& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::unreadable_file, "cannot open label map " + path.string());
  std::map<std::string, std::string> map;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty() || trim(line)[0] == '#') continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 2) throw ParseError(line_no, "label map lines need two fields: key,label");
    map[trim(fields[0])] = trim(fields[1]);
  }
  return map;
}

struct FileJob {
  fs::path path;
  std::string source_id;  // relative path without extension
  std::string label;
};

struct FileResult {
  std::optional<FeatureVector> features;
  std::string skip_reason;
  std::vector<std::string> warnings;
};

FileResult process_file(const FileJob& job, const RunConfig& cfg) {
  FileResult r;
  try {
    AudioClip clip = load_audio(job.path);
    clip.source_id = job.source_id;
    if (clip.duration_s() <= cfg.min_duration_s) {
      std::ostringstream msg;
      msg << "duration " << clip.duration_s() << " s not above minimum " << cfg.min_duration_s << " s";
      r.skip_reason = msg.str();
      return r;
    }
    r.features = extract_features(clip, cfg, &r.warnings);
    if (!job.label.empty()) r.features->label = job.label;
  } catch (const Error& e) {
    r.skip_reason = std::string(to_string(e.code())) + ": " + e.what();
  } catch (const std::exception& e) {
    r.skip_reason = e.what();
  }
  return r;
}

int cmd_extract(const ExtractArgs& a, std::ostream& out, std::ostream& err) {
  const RunConfig cfg = a.config.resolve();
  require(cfg.n_formants == kRhythmFormants, "extract requires n_formants = 6");
  const fs::path root(a.input_dir);
  if (!fs::is_directory(root)) fail(Errc::invalid_argument, "not a directory: " + a.input_dir);

  std::map<std::string, std::string> labels;
  if (!a.label_map.empty()) labels = read_label_map(a.label_map);

  std::vector<FileJob> jobs;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file() || !is_wav(entry.path())) continue;
    const fs::path rel = fs::relative(entry.path(), root);
    FileJob job;
    job.path = entry.path();
    job.source_id = (rel.parent_path() / rel.stem()).generic_string();
    const std::string subdir = rel.has_parent_path() ? rel.begin()->string() : std::string();
    if (a.label_map.empty()) {
      job.label = subdir;
    } else if (auto it = labels.find(rel.generic_string()); it != labels.end()) {
      job.label = it->second;
    } else if (auto it2 = labels.find(job.source_id); it2 != labels.end()) {
      job.label = it2->second;
    } else if (auto it3 = labels.find(rel.stem().string()); it3 != labels.end()) {
      job.label = it3->second;
    } else if (auto it4 = labels.find(subdir); !subdir.empty() && it4 != labels.end()) {
      job.label = it4->second;
    }
    jobs.push_back(std::move(job));
  }
  std::sort(jobs.begin(), jobs.end(),
            [](const FileJob& x, const FileJob& y) { return x.source_id < y.source_id; });
  if (jobs.empty()) fail(Errc::empty_dataset, "no .wav files under " + a.input_dir);

  std::vector<FileResult> results(jobs.size());
  const int threads = cfg.jobs > 0 ? cfg.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(jobs.size()); ++i) {
    results[i] = process_file(jobs[i], cfg);
  }

  std::vector<FeatureVector> vectors;
  std::string skipped_csv = comment_block(cfg) + "source_id,reason\n";
  std::size_t skipped = 0;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    for (const auto& w : results[i].warnings) log::warn(jobs[i].source_id + ": " + w);
    if (results[i].features) {
      vectors.push_back(std::move(*results[i].features));
    } else {
      ++skipped;
      err << "skipped " << jobs[i].source_id << ": " << results[i].skip_reason << '\n';
      skipped_csv += csv_escape(jobs[i].source_id) + "," + csv_escape(results[i].skip_reason) + "\n";
    }
  }
  if (!a.skipped.empty()) write_text(a.skipped, skipped_csv);
  if (!a.schema_json.empty()) write_text(a.schema_json, feature_schema().dump(2) + "\n");

  if (vectors.empty()) {
    err << "error: no usable files (" << skipped << " skipped)\n";
    return kExitData;
  }
  const Dataset ds = Dataset::from_vectors(vectors, !a.no_rformants);
  write_dataset(ds, a.output, provenance_lines(cfg));
  out << "wrote " << ds.size() << " rows x " << ds.dims() << " features to " << a.output << "; skipped "
      << skipped << " file(s)\n";
  return kExitOk;
}

// -------------------------------------------------------------------- train

struct TrainArgs {
  ConfigFlags config;
  std::string data;
  std::string model;
  std::string groups = "A,B,C";
  std::string envelopes = "AM,FM";
};

int cmd_train(const TrainArgs& a, std::ostream& out) {
  const RunConfig cfg = a.config.resolve();
  const Dataset ds = read_dataset(a.data);
  const FeatureSelection sel = FeatureSelection::parse(a.groups, a.envelopes);
  const Dataset selected = ds.select(sel);
  const auto [train_set, test_set] = split_dataset(selected, cfg.test_fraction, cfg.seed);

  TrainOptions opts;
  opts.grid = cfg.grid;
  opts.folds = cfg.folds;
  opts.seed = cfg.seed;
  const TrainResult result = train(train_set, opts);

  json doc = to_json(result.model);
  doc["provenance"] = provenance(cfg);
  doc["selection"] = {{"groups", a.groups}, {"envelopes", a.envelopes}};
  doc["split"] = {{"seed", cfg.seed},
                  {"test_fraction", cfg.test_fraction},
                  {"train_size", train_set.size()},
                  {"test_size", test_set.size()}};
  doc["training"] = to_json(result);
  write_text(a.model, doc.dump(2) + "\n");

  out << "features: " << selected.dims() << " (groups " << a.groups << ", envelopes " << a.envelopes << ")\n";
  out << "split: " << train_set.size() << " train / " << test_set.size() << " test (seed " << cfg.seed << ")\n";
  out << std::setw(10) << "C" << std::setw(14) << "gamma" << std::setw(14) << "cv_accuracy" << '\n';
  for (const auto& g : result.grid) {
    out << std::setw(10) << format_number(g.c) << std::setw(14) << format_number(g.gamma) << std::setw(14)
        << std::fixed << std::setprecision(4) << g.cv_accuracy << std::defaultfloat << '\n';
  }
  out << "selected C=" << format_number(result.best.c) << " gamma=" << format_number(result.best.gamma)
      << " cv_accuracy=" << std::fixed << std::setprecision(4) << result.best.cv_accuracy << std::defaultfloat
      << '\n';
  out << "model written to " << a.model << '\n';
  return kExitOk;
}

// ---------------------------------------------------- evaluate / importance

struct LoadedModel {
  SvmModel model;
  json doc;
};

LoadedModel load_model(const std::string& path) {
  LoadedModel m;
  m.doc = read_json(path);
  m.model = model_from_json(m.doc);
  return m;
}

Dataset evaluation_set(const LoadedModel& m, const std::string& data, const std::string& split) {
  const Dataset ds = read_dataset(data);
  const Dataset selected = ds.select(m.model.feature_names);
  if (split == "all") return selected;
  if (!m.doc.contains("split")) {
    fail(Errc::invalid_argument, "model has no split record; use --split all");
  }
  const auto seed = m.doc["split"].at("seed").get<std::uint64_t>();
  const auto fraction = m.doc["split"].at("test_fraction").get<double>();
  return split_dataset(selected, fraction, seed).second;
}

struct EvaluateArgs {
  ConfigFlags config;
  std::string model;
  std::string data;
  std::string split = "held-out";
  std::string report;
  std::string confusion;
};

int cmd_evaluate(const EvaluateArgs& a, std::ostream& out) {
  const RunConfig cfg = a.config.resolve();
  const LoadedModel m = load_model(a.model);
  const Dataset test = evaluation_set(m, a.data, a.split);
  const EvalReport report = evaluate(m.model, test);

  out << "evaluated " << test.size() << " samples (" << a.split << ")\n";
  out << format_report(report);
  if (!a.report.empty()) {
    json doc = to_json(report);
    doc["provenance"] = provenance(cfg);
    doc["model"] = a.model;
    doc["split"] = a.split;
    write_text(a.report, doc.dump(2) + "\n");
  }
  if (!a.confusion.empty()) write_text(a.confusion, comment_block(cfg) + confusion_csv(report));
  return kExitOk;
}

struct ImportanceArgs {
  ConfigFlags config;
  std::string model;
  std::string data;
  std::string split = "held-out";
  std::string output;
  std::size_t top = 15;
};

int cmd_importance(const ImportanceArgs& a, std::ostream& out) {
  const RunConfig cfg = a.config.resolve();
  const LoadedModel m = load_model(a.model);
  const Dataset test = evaluation_set(m, a.data, a.split);
  const auto ranking = permutation_importance(m.model, test, cfg.repeats, cfg.seed);

  out << "permutation importance (substitute for SHAP values): mean accuracy drop over " << cfg.repeats
      << " shuffles, " << test.size() << " samples\n";
  out << std::setw(5) << "rank" << "  " << std::left << std::setw(16) << "feature" << std::right << std::setw(12)
      << "mean_drop" << std::setw(12) << "std_drop" << '\n';
  for (std::size_t i = 0; i < ranking.size() && i < a.top; ++i) {
    out << std::setw(5) << i + 1 << "  " << std::left << std::setw(16) << ranking[i].feature << std::right
        << std::fixed << std::setprecision(4) << std::setw(12) << ranking[i].mean_drop << std::setw(12)
        << ranking[i].std_drop << std::defaultfloat << '\n';
  }
  if (!a.output.empty()) {
    std::string csv = comment_block(cfg) + "# method permutation importance (substitute for SHAP values)\n";
    csv += "rank,feature,mean_drop,std_drop\n";
    for (std::size_t i = 0; i < ranking.size(); ++i) {
      csv += std::to_string(i + 1) + "," + csv_escape(ranking[i].feature) + "," +
             format_number(ranking[i].mean_drop) + "," + format_number(ranking[i].std_drop) + "\n";
    }
    write_text(a.output, csv);
  }
  return kExitOk;
}

// ---------------------------------------------------------------- plot-data

struct PlotArgs {
  ConfigFlags config;
  std::string input;
  std::string out_dir;
};

std::string spectrum_csv(const RunConfig& cfg, const LfSpectrum& spec) {
  const PeakSet peaks = pick_r_formants(spec, 3, cfg.min_peak_separation_hz);
  std::string s = comment_block(cfg) + "freq_hz,magnitude,peak_rank\n";
  for (std::size_t i = 0; i < spec.size(); ++i) {
    int rank = 0;
    for (std::size_t k = 0; k < peaks.count; ++k) {
      if (peaks.freqs_hz[k] == spec.freqs_hz[i]) rank = static_cast<int>(k) + 1;
    }
    s += format_number(spec.freqs_hz[i]) + "," + format_number(spec.mags[i]) + "," + std::to_string(rank) + "\n";
  }
  return s;
}

std::string spectrogram_csv(const RunConfig& cfg, const LfSpectrogram& sg) {
  std::string s = comment_block(cfg) + "time_s,freq_hz,magnitude\n";
  for (std::size_t f = 0; f < sg.frames(); ++f) {
    for (std::size_t b = 0; b < sg.freqs_hz.size(); ++b) {
      s += format_number(sg.frame_times_s[f]) + "," + format_number(sg.freqs_hz[b]) + "," +
           format_number(sg.rows[f][b]) + "\n";
    }
  }
  return s;
}

std::string trajectories_csv(const RunConfig& cfg, const TrajectorySet& ts) {
  const std::size_t n = std::min<std::size_t>(3, ts.freq.size());
  std::string s = comment_block(cfg) + "time_s";
  for (std::size_t k = 0; k < n; ++k) s += ",rf" + std::to_string(k + 1) + "_hz";
  for (std::size_t k = 0; k < n; ++k) s += ",mag" + std::to_string(k + 1);
  s += "\n";
  for (std::size_t f = 0; f < ts.frame_times_s.size(); ++f) {
    s += format_number(ts.frame_times_s[f]);
    for (std::size_t k = 0; k < n; ++k) s += "," + format_number(ts.freq[k][f]);
    for (std::size_t k = 0; k < n; ++k) s += "," + format_number(ts.mag[k][f]);
    s += "\n";
  }
  return s;
}

int cmd_plot_data(const PlotArgs& a, std::ostream& out, std::ostream& err) {
  const RunConfig cfg = a.config.resolve();
  const AudioClip clip = load_audio(a.input);
  const ClipAnalysis an = analyze_clip(clip, cfg);
  const fs::path dir(a.out_dir);
  fs::create_directories(dir);
  std::vector<std::string> written;
  auto emit = [&](const std::string& name, const std::string& text) {
    write_text(dir / name, text);
    written.push_back(name);
  };

  {
    std::string s = comment_block(cfg) + "series,time_s,value\n";
    const double fs_hz = an.clip.sample_rate_hz;
    for (std::size_t i = 0; i < an.clip.samples.size(); ++i) {
      s += "waveform," + format_number(i / fs_hz) + "," + format_number(an.clip.samples[i]) + "\n";
    }
    const Envelope& env = an.am.envelope;
    for (std::size_t i = 0; i < env.values.size(); ++i) {
      s += "am_envelope," + format_number(i / env.rate_hz) + "," + format_number(env.values[i]) + "\n";
    }
    emit("waveform_envelope.csv", s);
  }
  emit("am_spectrum.csv", spectrum_csv(cfg, an.am.spectrum));
  {
    std::string s = comment_block(cfg) + "time_s,f0_hz\n";
    for (std::size_t i = 0; i < an.f0.f0_hz.size(); ++i) {
      s += format_number(an.f0.frame_time_s(i)) + "," + format_number(an.f0.f0_hz[i]) + "\n";
    }
    emit("f0_contour.csv", s);
  }
  emit("am_spectrogram.csv", spectrogram_csv(cfg, an.am.spectrogram));
  emit("am_trajectories.csv", trajectories_csv(cfg, an.am.trajectories));
  if (an.fm) {
    emit("fm_spectrum.csv", spectrum_csv(cfg, an.fm->spectrum));
    emit("fm_spectrogram.csv", spectrogram_csv(cfg, an.fm->spectrogram));
    emit("fm_trajectories.csv", trajectories_csv(cfg, an.fm->trajectories));
  } else {
    err << "warning: FM panels not written: " << an.fm_error << '\n';
  }
  out << "wrote " << written.size() << " files to " << a.out_dir << '\n';
  for (const auto& w : written) out << "  " << w << '\n';
  return kExitOk;
}

// -------------------------------------------------------------------- synth

struct SynthArgs {
  std::string kind = "AM_TONE";
  SynthSpec spec;
  std::string output;
};

int cmd_synth(const SynthArgs& a, std::ostream& out) {
  SynthSpec spec = a.spec;
  spec.kind = parse_synth_kind(a.kind);
  const AudioClip clip = peak_normalize(synthesize(spec));
  const fs::path wav(a.output);
  if (wav.has_parent_path()) fs::create_directories(wav.parent_path());
  write_wav(wav, clip);
  fs::path sidecar = wav;
  sidecar.replace_extension(".json");
  const json doc = {{"tool", kToolName}, {"version", kVersion}, {"synth", to_json(spec)}};
  write_text(sidecar, doc.dump(2) + "\n");
  out << "wrote " << wav.string() << " and " << sidecar.string() << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rhythm formant analysis of speech modulation envelopes", std::string(kToolName)};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  std::string log_level;
  app.add_option("--log-level", log_level, "debug, info, warn, error or off");

  ExtractArgs ex;
  auto* extract = app.add_subcommand("extract", "extract rhythm features from a directory of WAV files");
  extract->add_option("input_dir", ex.input_dir, "directory scanned recursively for .wav files")->required();
  extract->add_option("-o,--output", ex.output, "feature CSV")->required();
  extract->add_option("--labels", ex.label_map, "CSV of key,label (file path, stem or subdirectory)");
  extract->add_option("--skipped", ex.skipped, "CSV listing skipped files with reasons");
  extract->add_option("--schema-json", ex.schema_json, "write the feature-name schema as JSON");
  extract->add_flag("--no-rformants", ex.no_rformants, "omit the R-formant frequency columns");
  ex.config.attach(extract);

  TrainArgs tr;
  auto* train_cmd = app.add_subcommand("train", "grid-search and fit an RBF SVM on a feature CSV");
  train_cmd->add_option("data", tr.data, "feature CSV")->required();
  train_cmd->add_option("-m,--model", tr.model, "model JSON to write")->required();
  train_cmd->add_option("--groups", tr.groups, "comma list of A, B, C, VarRF, VarMag, RF");
  train_cmd->add_option("--envelopes", tr.envelopes, "AM, FM or AM,FM");
  tr.config.attach(train_cmd);

  EvaluateArgs ev;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "score a model on the held-out split or a whole CSV");
  evaluate_cmd->add_option("data", ev.data, "feature CSV")->required();
  evaluate_cmd->add_option("-m,--model", ev.model, "model JSON")->required();
  evaluate_cmd->add_option("--split", ev.split, "held-out or all")
      ->check(CLI::IsMember({"held-out", "all"}));
  evaluate_cmd->add_option("--report", ev.report, "JSON report");
  evaluate_cmd->add_option("--confusion", ev.confusion, "confusion matrix CSV");
  ev.config.attach(evaluate_cmd);

  ImportanceArgs im;
  auto* importance = app.add_subcommand("importance", "permutation feature importance");
  importance->add_option("data", im.data, "feature CSV")->required();
  importance->add_option("-m,--model", im.model, "model JSON")->required();
  importance->add_option("--split", im.split, "held-out or all")->check(CLI::IsMember({"held-out", "all"}));
  importance->add_option("-o,--output", im.output, "full ranking CSV");
  importance->add_option("--top", im.top, "rows shown in the table");
  im.config.attach(importance);

  PlotArgs pl;
  auto* plot = app.add_subcommand("plot-data", "write the per-panel CSVs for one WAV file");
  plot->add_option("input", pl.input, "WAV file")->required();
  plot->add_option("-o,--out-dir", pl.out_dir, "output directory")->required();
  pl.config.attach(plot);

  SynthArgs sy;
  auto* synth = app.add_subcommand("synth", "write a synthetic test signal");
  synth->add_option("--kind", sy.kind, "AM_TONE, VIBRATO, AM_STEP, NOISE or SILENCE");
  synth->add_option("--carrier", sy.spec.carrier_hz, "carrier frequency in Hz");
  synth->add_option("--mod-freq", sy.spec.mod_freq_hz, "modulation frequency in Hz");
  synth->add_option("--mod-freq2", sy.spec.mod_freq2_hz, "second-half modulation frequency (AM_STEP)");
  synth->add_option("--depth", sy.spec.mod_depth, "AM depth, or vibrato depth in Hz");
  synth->add_option("--duration", sy.spec.duration_s, "seconds");
  synth->add_option("--sample-rate", sy.spec.sample_rate_hz, "Hz");
  synth->add_option("--seed", sy.spec.seed, "noise seed");
  synth->add_option("-o,--output", sy.output, "WAV file; a .json sidecar is written next to it")->required();

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.emplace_back(kToolName);
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (!log_level.empty()) {
      static const std::map<std::string, log::Level> levels = {{"debug", log::Level::debug},
                                                                {"info", log::Level::info},
                                                                {"warn", log::Level::warn},
                                                                {"error", log::Level::error},
                                                                {"off", log::Level::off}};
      const auto it = levels.find(log_level);
      require(it != levels.end(), "unknown log level '" + log_level + "'");
      log::set_level(it->second);
    }
    if (extract->parsed()) return cmd_extract(ex, out, err);
    if (train_cmd->parsed()) return cmd_train(tr, out);
    if (evaluate_cmd->parsed()) return cmd_evaluate(ev, out);
    if (importance->parsed()) return cmd_importance(im, out);
    if (plot->parsed()) return cmd_plot_data(pl, out, err);
    if (synth->parsed()) return cmd_synth(sy, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == Errc::invalid_argument ? kExitUsage : kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace rfa::cli
