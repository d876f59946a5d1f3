// ulrs/tests/helpers.hpp

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

#ifndef ULRS_TESTS_HELPERS_HPP
#define ULRS_TESTS_HELPERS_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "ulrs/dictionary.hpp"
#include "ulrs/types.hpp"
#include "ulrs/vad.hpp"

namespace ulrs::test {

inline Matrix random_unit_atoms(Index n, Index k, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(n, k);
  for (Index j = 0; j < k; ++j) {
    do {
      for (Index i = 0; i < n; ++i) m(i, j) = normal(engine);
    } while (m.col(j).norm() == 0.0);
    m.col(j) /= m.col(j).norm();
  }
  return m;
}

inline Vector random_vector(Index n, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = normal(engine);
  return v;
}

/// Random dictionary driven toward low mutual coherence by alternating
/// Gram-shrinkage and a rank-n projection.  Needed for planted-support
/// recovery instances, where random draws are far too coherent.
inline Dictionary low_coherence_dictionary(Index n, Index k, double mu_target,
                                           std::uint64_t seed) {
  Matrix d = random_unit_atoms(n, k, seed);
  for (int iter = 0; iter < 3000; ++iter) {
    Matrix gram = d.transpose() * d;
    double mu = 0.0;
    for (Index i = 0; i < k; ++i) {
      for (Index j = i + 1; j < k; ++j) {
        mu = std::max(mu, std::abs(gram(i, j)));
      }
    }
    if (mu <= mu_target) break;
    for (Index i = 0; i < k; ++i) {
      for (Index j = 0; j < k; ++j) {
        if (i != j && std::abs(gram(i, j)) > 0.9 * mu_target) {
          gram(i, j) *= 0.9;
        }
      }
    }
    Eigen::SelfAdjointEigenSolver<Matrix> eig(gram);
    Matrix root = Matrix::Zero(n, k);
    for (Index i = 0; i < n; ++i) {
      const Index which = k - 1 - i;  // largest eigenvalues
      const double lambda = std::max(eig.eigenvalues()[which], 0.0);
      root.row(i) = std::sqrt(lambda) * eig.eigenvectors().col(which).transpose();
    }
    d = root;
    for (Index j = 0; j < k; ++j) {
      const double norm = d.col(j).norm();
      if (norm > 0) d.col(j) /= norm;
    }
  }
  return Dictionary(d);
}

/// Scratch directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    namespace fs = std::filesystem;
    base_ = fs::temp_directory_path() /
            ("ulrs_test_" + tag + "_" + std::to_string(::getpid()));
    fs::create_directories(base_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(base_, ec);
  }
  std::string path(const std::string& name) const {
    return (base_ / name).string();
  }

 private:
  std::filesystem::path base_;
};

/// Minimal RIFF writer; the format fields are parameters so tests can craft
/// deliberately unsupported files.
inline void write_wav(const std::string& path,
                      const std::vector<std::int16_t>& samples,
                      std::uint32_t rate = 8000, std::uint16_t channels = 1,
                      std::uint16_t bits = 16, std::uint16_t format_tag = 1) {
  std::ofstream out(path, std::ios::binary);
  auto u32 = [&](std::uint32_t v) { out.write(reinterpret_cast<char*>(&v), 4); };
  auto u16 = [&](std::uint16_t v) { out.write(reinterpret_cast<char*>(&v), 2); };
  const std::uint32_t bytes_per_sample = bits / 8;
  const std::uint32_t data_size =
      static_cast<std::uint32_t>(samples.size()) * 2;  // stored as int16 pairs
  out.write("RIFF", 4);
  u32(36 + data_size);
  out.write("WAVE", 4);
  out.write("fmt ", 4);
  u32(16);
  u16(format_tag);
  u16(channels);
  u32(rate);
  u32(rate * channels * bytes_per_sample);
  u16(static_cast<std::uint16_t>(channels * bytes_per_sample));
  u16(bits);
  out.write("data", 4);
  u32(data_size);
  for (std::int16_t s : samples) out.write(reinterpret_cast<char*>(&s), 2);
}

inline void write_wav_float(const std::string& path,
                            const std::vector<double>& samples,
                            std::uint32_t rate = 8000) {
  std::vector<std::int16_t> pcm;
  pcm.reserve(samples.size());
  for (double v : samples) {
    const double clamped = std::max(-1.0, std::min(v, 32767.0 / 32768.0));
    pcm.push_back(static_cast<std::int16_t>(std::lround(clamped * 32768.0)));
  }
  write_wav(path, pcm, rate);
}

/// Synthetic harmonic "speech": voiced segments (harmonic stacks with pitch
/// drift and an attack/decay envelope) separated by silence.  Returns the
/// samples and a per-sample speech mask.
struct SyntheticSpeech {
  std::vector<double> samples;
  std::vector<char> speech_mask;
};

inline SyntheticSpeech make_speech(double seconds, int rate,
                                   std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const auto total = static_cast<size_t>(seconds * rate);
  SyntheticSpeech out;
  out.samples.assign(total, 0.0);
  out.speech_mask.assign(total, 0);

  size_t at = 0;
  bool voiced = false;
  while (at < total) {
    const double dur_ms = voiced ? 200.0 + 400.0 * uni(engine)
                                 : 150.0 + 300.0 * uni(engine);
    const auto len = std::min(total - at, static_cast<size_t>(dur_ms * rate / 1000.0));
    if (voiced && len > 0) {
      const double f0 = 100.0 + 120.0 * uni(engine);
      const double drift = (uni(engine) - 0.5) * 30.0;  // Hz over the segment
      const int harmonics = 8;
      std::vector<double> amp(harmonics);
      std::vector<double> phase(harmonics);
      for (int h = 0; h < harmonics; ++h) {
        amp[h] = (0.6 + 0.4 * uni(engine)) / (1.0 + h);
        phase[h] = 2.0 * M_PI * uni(engine);
      }
      const auto ramp = static_cast<size_t>(0.02 * rate);
      for (size_t i = 0; i < len; ++i) {
        const double t = static_cast<double>(i) / rate;
        const double f = f0 + drift * static_cast<double>(i) / static_cast<double>(len);
        double v = 0.0;
        for (int h = 0; h < harmonics; ++h) {
          v += amp[h] * std::sin(2.0 * M_PI * f * (h + 1) * t + phase[h]);
        }
        double env = 1.0;
        if (i < ramp) env = static_cast<double>(i) / static_cast<double>(ramp);
        if (len - i < ramp) env = static_cast<double>(len - i) / static_cast<double>(ramp);
        out.samples[at + i] = 0.25 * env * v / harmonics * 4.0;
        out.speech_mask[at + i] = 1;
      }
    }
    at += len;
    voiced = !voiced;
  }
  return out;
}

/// Frame-level 0/1 labels: a frame counts as speech when more than half of
/// its samples are inside a speech segment.
inline std::vector<int> frame_labels(const std::vector<char>& mask,
                                     const vad::FrameConfig& cfg) {
  const Index frame = cfg.frame_samples();
  const Index hop = cfg.hop_samples();
  const auto len = static_cast<Index>(mask.size());
  std::vector<int> labels;
  if (len < frame) return labels;
  for (Index f = 0; f + frame <= len; f += hop) {
    Index speech = 0;
    for (Index i = 0; i < frame; ++i) {
      speech += mask[static_cast<size_t>(f + i)];
    }
    labels.push_back(speech * 2 > frame ? 1 : 0);
  }
  return labels;
}

}  // namespace ulrs::test

#endif  // ULRS_TESTS_HELPERS_HPP
