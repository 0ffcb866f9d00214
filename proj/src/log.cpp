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

#include "rfa/log.hpp"

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <string>

#include "rfa/error.hpp"

namespace rfa {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::invalid_argument: return "invalid_argument";
    case Errc::unreadable_file: return "unreadable_file";
    case Errc::malformed_file: return "malformed_file";
    case Errc::unsupported_encoding: return "unsupported_encoding";
    case Errc::empty_audio: return "empty_audio";
    case Errc::too_short: return "too_short";
    case Errc::fully_unvoiced: return "fully_unvoiced";
    case Errc::degenerate_spectrum: return "degenerate_spectrum";
    case Errc::parse_error: return "parse_error";
    case Errc::schema_mismatch: return "schema_mismatch";
    case Errc::empty_dataset: return "empty_dataset";
    case Errc::insufficient_data: return "insufficient_data";
    case Errc::non_finite: return "non_finite";
  }
  return "unknown error";
}

namespace log {
namespace {

Level initial_level() {
  if (const char* env = std::getenv("RFA_LOG_LEVEL")) {
    const std::string v(env);
    if (v == "debug") return Level::debug;
    if (v == "info") return Level::info;
    if (v == "error") return Level::error;
    if (v == "off") return Level::off;
  }
  return Level::warn;
}

std::atomic<Level>& current() {
  static std::atomic<Level> lvl{initial_level()};
  return lvl;
}

std::mutex& sink_mutex() {
  static std::mutex m;
  return m;
}

constexpr std::string_view tag(Level l) {
  switch (l) {
    case Level::debug: return "debug";
    case Level::info: return "info";
    case Level::warn: return "warning";
    case Level::error: return "error";
    case Level::off: break;
  }
  return "";
}

}  // namespace

void set_level(Level level) { current().store(level); }
Level level() { return current().load(); }

void write(Level lvl, std::string_view message) {
  if (lvl < current().load() || lvl == Level::off) return;
  std::lock_guard lock(sink_mutex());
  std::clog << "[rfa " << tag(lvl) << "] " << message << '\n';
}

}  // namespace log
}  // namespace rfa
