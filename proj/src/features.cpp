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

#include "rfa/features.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rfa/error.hpp"

namespace rfa {
namespace {

constexpr std::array<std::string_view, 7> kSpectralNames = {
    "Centroid", "Spread", "Rolloff", "Flatness", "Entropy", "Skewness", "Kurtosis"};

std::string suffixed(std::string_view base, EnvelopeKind env) {
  return std::string(base) + "-" + std::string(to_string(env));
}

std::vector<FeatureDescriptor> build_fused() {
  std::vector<FeatureDescriptor> out;
  constexpr std::array<EnvelopeKind, 2> envs = {EnvelopeKind::am, EnvelopeKind::fm};
  for (auto env : envs) {
    out.push_back({suffixed("NDP", env), FeatureGroup::a, FeatureFamily::threshold, env});
    out.push_back({suffixed("MFDP", env), FeatureGroup::a, FeatureFamily::threshold, env});
    out.push_back({suffixed("VFDP", env), FeatureGroup::a, FeatureFamily::threshold, env});
    for (int k = 0; k < 4; ++k) {
      out.push_back({suffixed("DCT" + std::to_string(k), env), FeatureGroup::a, FeatureFamily::dct, env});
    }
  }
  for (auto env : envs) {
    for (auto name : kSpectralNames) {
      out.push_back({suffixed(name, env), FeatureGroup::b, FeatureFamily::spectral, env});
    }
  }
  for (auto env : envs) {
    for (int k = 1; k <= kRhythmFormants; ++k) {
      out.push_back({suffixed("VarRF" + std::to_string(k), env), FeatureGroup::c, FeatureFamily::var_rf, env});
    }
    for (int k = 1; k <= kRhythmFormants; ++k) {
      out.push_back({suffixed("VarMag" + std::to_string(k), env), FeatureGroup::c, FeatureFamily::var_mag, env});
    }
  }
  return out;
}

std::vector<FeatureDescriptor> build_r_formants() {
  std::vector<FeatureDescriptor> out;
  for (auto env : {EnvelopeKind::am, EnvelopeKind::fm}) {
    for (int k = 1; k <= kRhythmFormants; ++k) {
      out.push_back({suffixed("RF" + std::to_string(k), env), FeatureGroup::r_formant,
                     FeatureFamily::r_formant, env});
    }
  }
  return out;
}

std::vector<std::string_view> split_tokens(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    auto token = text.substr(pos, comma - pos);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    if (!token.empty()) out.push_back(token);
    pos = comma + 1;
  }
  return out;
}

}  // namespace

const std::vector<FeatureDescriptor>& fused_features() {
  static const auto table = build_fused();
  return table;
}

const std::vector<FeatureDescriptor>& r_formant_features() {
  static const auto table = build_r_formants();
  return table;
}

const std::vector<FeatureDescriptor>& all_features() {
  static const auto table = [] {
    auto t = fused_features();
    const auto& rf = r_formant_features();
    t.insert(t.end(), rf.begin(), rf.end());
    return t;
  }();
  return table;
}

std::vector<std::string> fused_feature_names() {
  std::vector<std::string> names;
  for (const auto& d : fused_features()) names.push_back(d.name);
  return names;
}

const FeatureDescriptor* find_feature(std::string_view name) {
  const auto& all = all_features();
  const auto it = std::find_if(all.begin(), all.end(), [&](const auto& d) { return d.name == name; });
  return it == all.end() ? nullptr : &*it;
}

std::vector<double> FeatureVector::all_values() const {
  std::vector<double> out(values.begin(), values.end());
  out.insert(out.end(), r_formants_hz.begin(), r_formants_hz.end());
  return out;
}

FeatureVector assemble(const SpectrumFeatures& am, const SpectrumFeatures& fm,
                       std::span<const double> am_traj_vars,
                       std::span<const double> fm_traj_vars) {
  constexpr std::size_t kTraj = 2 * kRhythmFormants;
  require(am_traj_vars.size() == kTraj && fm_traj_vars.size() == kTraj,
          "each envelope needs 12 trajectory variances");

  FeatureVector fv;
  std::size_t i = 0;
  for (const SpectrumFeatures* s : {&am, &fm}) {
    fv.values[i++] = s->threshold.ndp;
    fv.values[i++] = s->threshold.mfdp_hz;
    fv.values[i++] = s->threshold.vfdp_hz2;
    for (double d : s->dct) fv.values[i++] = d;
  }
  for (const SpectrumFeatures* s : {&am, &fm}) {
    for (double v : s->spectral.as_array()) fv.values[i++] = v;
  }
  for (auto vars : {am_traj_vars, fm_traj_vars}) {
    for (double v : vars) fv.values[i++] = v;
  }
  std::copy(am.r_formants_hz.begin(), am.r_formants_hz.end(), fv.r_formants_hz.begin());
  std::copy(fm.r_formants_hz.begin(), fm.r_formants_hz.end(),
            fv.r_formants_hz.begin() + kRhythmFormants);

  for (double v : fv.values) {
    if (!std::isfinite(v)) fail(Errc::non_finite, "assembled feature vector is not finite");
  }
  return fv;
}

FeatureSelection FeatureSelection::parse(std::string_view groups, std::string_view envelopes) {
  FeatureSelection sel;
  const auto group_tokens = split_tokens(groups);
  require(!group_tokens.empty(), "no feature groups selected");
  for (auto t : group_tokens) {
    if (t == "A") {
      sel.threshold_dct = true;
    } else if (t == "B") {
      sel.spectral = true;
    } else if (t == "C") {
      sel.var_rf = sel.var_mag = true;
    } else if (t == "VarRF") {
      sel.var_rf = true;
    } else if (t == "VarMag") {
      sel.var_mag = true;
    } else if (t == "RF") {
      sel.r_formants = true;
    } else {
      fail(Errc::invalid_argument, "unknown feature group '" + std::string(t) +
                                       "' (expected A, B, C, VarRF, VarMag or RF)");
    }
  }
  sel.am = sel.fm = false;
  const auto env_tokens = split_tokens(envelopes);
  require(!env_tokens.empty(), "no envelopes selected");
  for (auto t : env_tokens) {
    if (t == "AM") {
      sel.am = true;
    } else if (t == "FM") {
      sel.fm = true;
    } else {
      fail(Errc::invalid_argument, "unknown envelope '" + std::string(t) + "' (expected AM or FM)");
    }
  }
  return sel;
}

bool FeatureSelection::contains(const FeatureDescriptor& d) const {
  const bool env_ok = d.envelope == EnvelopeKind::am ? am : fm;
  if (!env_ok) return false;
  switch (d.family) {
    case FeatureFamily::threshold:
    case FeatureFamily::dct: return threshold_dct;
    case FeatureFamily::spectral: return spectral;
    case FeatureFamily::var_rf: return var_rf;
    case FeatureFamily::var_mag: return var_mag;
    case FeatureFamily::r_formant: return r_formants;
  }
  return false;
}

std::vector<std::string> FeatureSelection::names() const {
  std::vector<std::string> out;
  for (const auto& d : all_features()) {
    if (contains(d)) out.push_back(d.name);
  }
  return out;
}

}  // namespace rfa
