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

#include "rfa/audio.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>

#include "rfa/error.hpp"
#include "rfa/log.hpp"

namespace rfa {
namespace {

constexpr std::uint16_t kFormatPcm = 0x0001;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint32_t read_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t read_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<unsigned char>(v >> (8 * i)));
}

void put_u16(std::vector<unsigned char>& out, std::uint16_t v) {
  out.push_back(static_cast<unsigned char>(v & 0xFF));
  out.push_back(static_cast<unsigned char>(v >> 8));
}

struct Format {
  std::uint16_t tag = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t block_align = 0;
  std::uint16_t bits = 0;
};

double decode_sample(const unsigned char* p, int bits) {
  switch (bits) {
    case 8:
      return (static_cast<int>(p[0]) - 128) / 128.0;
    case 16: {
      const auto v = static_cast<std::int16_t>(read_u16(p));
      return v / 32768.0;
    }
    case 24: {
      std::int32_t v = p[0] | (p[1] << 8) | (p[2] << 16);
      if (v & 0x800000) v -= 0x1000000;
      return v / 8388608.0;
    }
  }
  return 0.0;
}

}  // namespace

AudioClip load_audio(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::unreadable_file, "cannot open " + path.string());
  const std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                         std::istreambuf_iterator<char>());
  if (in.bad()) fail(Errc::unreadable_file, "read error on " + path.string());

  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    fail(Errc::malformed_file, path.string() + " is not a RIFF/WAVE file");
  }

  Format fmt;
  bool have_fmt = false;
  const unsigned char* data = nullptr;
  std::size_t data_size = 0;
  bool have_data = false;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* hdr = bytes.data() + pos;
    const std::uint32_t size = read_u32(hdr + 4);
    const std::size_t body = pos + 8;
    const std::size_t avail = bytes.size() - body;
    if (std::memcmp(hdr, "fmt ", 4) == 0) {
      if (size < 16 || avail < 16) fail(Errc::malformed_file, "truncated fmt chunk");
      const unsigned char* f = bytes.data() + body;
      fmt.tag = read_u16(f);
      fmt.channels = read_u16(f + 2);
      fmt.sample_rate = read_u32(f + 4);
      fmt.block_align = read_u16(f + 12);
      fmt.bits = read_u16(f + 14);
      if (fmt.tag == kFormatExtensible) {
        if (size < 40 || avail < 40) fail(Errc::malformed_file, "truncated WAVE_FORMAT_EXTENSIBLE header");
        fmt.tag = read_u16(f + 24);  // first two bytes of the subformat GUID
      }
      have_fmt = true;
    } else if (std::memcmp(hdr, "data", 4) == 0) {
      data = bytes.data() + body;
      data_size = std::min<std::size_t>(size, avail);  // streaming writers leave size unset
      have_data = true;
      break;
    }
    pos = body + size + (size & 1U);
  }

  if (!have_fmt) fail(Errc::malformed_file, "missing fmt chunk in " + path.string());
  if (fmt.tag != kFormatPcm) {
    fail(Errc::unsupported_encoding,
         "WAVE format tag " + std::to_string(fmt.tag) + " is not linear PCM");
  }
  if (fmt.bits != 8 && fmt.bits != 16 && fmt.bits != 24) {
    fail(Errc::unsupported_encoding,
         std::to_string(fmt.bits) + "-bit PCM is not supported");
  }
  if (fmt.channels == 0 || fmt.block_align != fmt.channels * (fmt.bits / 8)) {
    fail(Errc::malformed_file, "inconsistent channel count or block alignment");
  }
  if (fmt.sample_rate < kMinSampleRateHz) {
    fail(Errc::unsupported_encoding,
         "sample rate " + std::to_string(fmt.sample_rate) + " Hz below " +
             std::to_string(kMinSampleRateHz) + " Hz");
  }
  if (!have_data) fail(Errc::malformed_file, "missing data chunk in " + path.string());

  const std::size_t frames = data_size / fmt.block_align;
  if (frames == 0) fail(Errc::empty_audio, path.string() + " contains no samples");

  AudioClip clip;
  clip.sample_rate_hz = static_cast<int>(fmt.sample_rate);
  clip.source_id = path.stem().string();
  clip.samples.resize(frames);
  const int width = fmt.bits / 8;
  for (std::size_t i = 0; i < frames; ++i) {
    const unsigned char* frame = data + i * fmt.block_align;
    double acc = 0.0;
    for (int c = 0; c < fmt.channels; ++c) acc += decode_sample(frame + c * width, fmt.bits);
    clip.samples[i] = acc / fmt.channels;
  }
  return clip;
}

void write_wav(const std::filesystem::path& path, const AudioClip& clip,
               int bits_per_sample) {
  require(bits_per_sample == 8 || bits_per_sample == 16 || bits_per_sample == 24,
          "bits_per_sample must be 8, 16 or 24");
  require(clip.sample_rate_hz > 0, "sample rate must be positive");

  const int width = bits_per_sample / 8;
  const auto data_bytes = static_cast<std::uint32_t>(clip.samples.size() * width);
  std::vector<unsigned char> out;
  out.reserve(44 + data_bytes + 1);
  out.insert(out.end(), {'R', 'I', 'F', 'F'});
  put_u32(out, 36 + data_bytes + (data_bytes & 1U));
  out.insert(out.end(), {'W', 'A', 'V', 'E', 'f', 'm', 't', ' '});
  put_u32(out, 16);
  put_u16(out, kFormatPcm);
  put_u16(out, 1);
  put_u32(out, static_cast<std::uint32_t>(clip.sample_rate_hz));
  put_u32(out, static_cast<std::uint32_t>(clip.sample_rate_hz * width));
  put_u16(out, static_cast<std::uint16_t>(width));
  put_u16(out, static_cast<std::uint16_t>(bits_per_sample));
  out.insert(out.end(), {'d', 'a', 't', 'a'});
  put_u32(out, data_bytes);

  const double full_scale = std::ldexp(1.0, bits_per_sample - 1);
  const auto lo = static_cast<long>(-full_scale);
  const auto hi = static_cast<long>(full_scale) - 1;
  for (double x : clip.samples) {
    const long q = std::clamp(std::lround(x * full_scale), lo, hi);
    if (bits_per_sample == 8) {
      out.push_back(static_cast<unsigned char>(q + 128));
    } else {
      for (int b = 0; b < width; ++b) {
        out.push_back(static_cast<unsigned char>((static_cast<unsigned long>(q) >> (8 * b)) & 0xFF));
      }
    }
  }
  if (data_bytes & 1U) out.push_back(0);

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) fail(Errc::unreadable_file, "cannot open " + path.string() + " for writing");
  file.write(reinterpret_cast<const char*>(out.data()),
             static_cast<std::streamsize>(out.size()));
  if (!file) fail(Errc::unreadable_file, "write failed for " + path.string());
}

AudioClip peak_normalize(AudioClip clip) {
  double peak = 0.0;
  for (double x : clip.samples) peak = std::max(peak, std::abs(x));
  if (peak == 0.0) {
    log::info("silent clip '" + clip.source_id + "' left unnormalized");
    return clip;
  }
  for (double& x : clip.samples) x /= peak;
  return clip;
}

std::vector<AudioClip> filter_by_duration(std::vector<AudioClip> clips,
                                          double min_duration_s) {
  require(min_duration_s >= 0.0, "min_duration_s must be non-negative");
  std::erase_if(clips, [&](const AudioClip& c) {
    return !(c.duration_s() > min_duration_s);
  });
  return clips;
}

}  // namespace rfa
