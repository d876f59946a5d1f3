// ulrs/audio.cpp

// Copyright 2026  The ULRS Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include "ulrs/vad.hpp"

namespace ulrs::vad {

namespace {

constexpr int kRequiredRateHz = 8000;

std::uint32_t read_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t read_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(static_cast<std::uint32_t>(p[0]) |
                                    (static_cast<std::uint32_t>(p[1]) << 8));
}

}  // namespace

Index FrameConfig::frame_samples() const {
  return static_cast<Index>(
      std::lround(frame_ms * static_cast<double>(sample_rate_hz) / 1000.0));
}

Index FrameConfig::hop_samples() const {
  return static_cast<Index>(
      std::lround(hop_ms * static_cast<double>(sample_rate_hz) / 1000.0));
}

void FrameConfig::validate() const {
  if (sample_rate_hz < 1) throw ConfigError("frame config: bad sample rate");
  if (frame_samples() < 1) throw ConfigError("frame config: frame too short");
  if (hop_samples() < 1) throw ConfigError("frame config: hop too short");
  if (hop_samples() > frame_samples()) {
    throw ConfigError("frame config: hop exceeds the frame length");
  }
}

AudioBuffer read_wav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open wav file: " + path);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw IoError(path + ": not a RIFF/WAVE file");
  }

  bool have_fmt = false;
  std::uint16_t format_tag = 0;
  std::uint16_t channels = 0;
  std::uint32_t rate = 0;
  std::uint16_t bits = 0;
  const unsigned char* data = nullptr;
  std::uint32_t data_size = 0;

  size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* chunk = bytes.data() + pos;
    const std::uint32_t size = read_u32(chunk + 4);
    const size_t body = pos + 8;
    if (body + size > bytes.size()) throw IoError(path + ": truncated chunk");
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16) throw IoError(path + ": malformed fmt chunk");
      format_tag = read_u16(bytes.data() + body);
      channels = read_u16(bytes.data() + body + 2);
      rate = read_u32(bytes.data() + body + 4);
      bits = read_u16(bytes.data() + body + 14);
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      data = bytes.data() + body;
      data_size = size;
    }
    pos = body + size + (size & 1u);  // chunks are word aligned
  }

  if (!have_fmt || data == nullptr) {
    throw IoError(path + ": missing fmt or data chunk");
  }
  if (format_tag != 1) {
    std::ostringstream msg;
    msg << path << ": compressed or non-PCM format (tag " << format_tag
        << "); linear PCM required";
    throw IoError(msg.str());
  }
  if (channels != 1) {
    std::ostringstream msg;
    msg << path << ": expected mono audio, file has " << channels << " channels";
    throw IoError(msg.str());
  }
  if (bits != 16) {
    std::ostringstream msg;
    msg << path << ": expected 16-bit samples, file has " << bits << " bits";
    throw IoError(msg.str());
  }
  if (rate != kRequiredRateHz) {
    std::ostringstream msg;
    msg << path << ": expected " << kRequiredRateHz << " Hz, file is " << rate
        << " Hz (resampling is not supported)";
    throw IoError(msg.str());
  }

  AudioBuffer audio;
  audio.sample_rate_hz = static_cast<int>(rate);
  const size_t count = data_size / 2;
  audio.samples.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    std::int16_t v;
    std::memcpy(&v, data + 2 * i, 2);
    audio.samples.push_back(static_cast<double>(v) / 32768.0);
  }
  return audio;
}

std::vector<Vector> frame_signal(const std::vector<double>& samples,
                                 const FrameConfig& cfg) {
  cfg.validate();
  const Index frame = cfg.frame_samples();
  const Index hop = cfg.hop_samples();
  const auto len = static_cast<Index>(samples.size());
  std::vector<Vector> frames;
  if (len < frame) return frames;
  const Index count = (len - frame) / hop + 1;
  frames.reserve(static_cast<size_t>(count));
  for (Index f = 0; f < count; ++f) {
    Vector v(frame);
    for (Index i = 0; i < frame; ++i) {
      v[i] = samples[static_cast<size_t>(f * hop + i)];
    }
    frames.push_back(std::move(v));
  }
  return frames;
}

std::vector<double> mix_noise(const std::vector<double>& clean,
                              const std::vector<double>& noise, double snr_db) {
  if (snr_db >= 200.0) return clean;  // treated as a clean condition
  if (noise.size() < clean.size()) {
    throw ConfigError("mix_noise: noise is shorter than the clean signal");
  }
  double p_clean = 0.0;
  for (double v : clean) p_clean += v * v;
  if (p_clean == 0.0) throw ConfigError("mix_noise: clean signal is silent");
  double p_noise = 0.0;
  for (size_t i = 0; i < clean.size(); ++i) p_noise += noise[i] * noise[i];
  if (p_noise == 0.0) throw ConfigError("mix_noise: noise segment is silent");

  const double scale =
      std::sqrt(p_clean / (p_noise * std::pow(10.0, snr_db / 10.0)));
  std::vector<double> out(clean.size());
  for (size_t i = 0; i < clean.size(); ++i) out[i] = clean[i] + scale * noise[i];
  return out;
}

std::vector<Vector> drop_silent_frames(const std::vector<Vector>& frames,
                                       double fraction) {
  if (frames.empty()) return frames;
  std::vector<double> energy;
  energy.reserve(frames.size());
  for (const Vector& f : frames) energy.push_back(f.squaredNorm());
  std::vector<double> sorted = energy;
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2,
                   sorted.end());
  const double median = sorted[sorted.size() / 2];
  std::vector<Vector> kept;
  for (size_t i = 0; i < frames.size(); ++i) {
    if (energy[i] >= fraction * median) kept.push_back(frames[i]);
  }
  return kept;
}

}  // namespace ulrs::vad
