// ulrs/vad.hpp

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

#ifndef ULRS_VAD_HPP
#define ULRS_VAD_HPP

#include <string>
#include <utility>
#include <vector>

#include "ulrs/detector.hpp"
#include "ulrs/dictionary.hpp"
#include "ulrs/types.hpp"

namespace ulrs::vad {

struct FrameConfig {
  int sample_rate_hz = 8000;
  double frame_ms = 25.0;
  double hop_ms = 10.0;

  Index frame_samples() const;
  Index hop_samples() const;
  void validate() const;
};

/// Feature stack layout; the default is 12 cepstra + 10 log band energies +
/// total log energy + spectral entropy = 24 values.
struct FeatureConfig {
  int mel_bands = 10;
  int num_cepstra = 12;
  bool include_band_energies = true;
  bool include_total_energy = true;
  bool include_entropy = true;

  Index dim() const;
  void validate() const;
};

struct AudioBuffer {
  std::vector<double> samples;  // in [-1, 1)
  int sample_rate_hz = 8000;
};

/// Reads a linear PCM, 16-bit, mono, 8000 Hz WAV file; integer samples are
/// divided by 32768.  Any other encoding (stereo, other bit depths,
/// compressed formats, other rates) raises IoError naming the mismatch.
AudioBuffer read_wav(const std::string& path);

/// Splits into frames of frame_samples() every hop_samples(); no padding, a
/// too-short signal yields an empty list.
std::vector<Vector> frame_signal(const std::vector<double>& samples,
                                 const FrameConfig& cfg);

/// Hamming window, power-of-two zero-padded power spectrum, mel triangular
/// filterbank, then the configured stack.  Energies are floored at 1e-10
/// before any log; an all-zero frame gets spectral entropy log(#bins).
Vector extract_features(const Vector& frame, const FrameConfig& cfg,
                        const FeatureConfig& feat = FeatureConfig{});

/// Adds `noise` (truncated to the clean length) scaled so the clean-to-noise
/// power ratio is snr_db; snr_db >= 200 returns the clean signal unchanged.
std::vector<double> mix_noise(const std::vector<double>& clean,
                              const std::vector<double>& noise, double snr_db);

/// Frame-by-frame detection: features -> sr_decide, one Detection per frame
/// in order.
std::vector<Detection> vad_run(const AudioBuffer& audio, const Dictionary& dict,
                               const DetectorParams& params,
                               const FrameConfig& cfg,
                               const FeatureConfig& feat = FeatureConfig{});

/// Per-frame decision statistic (threshold-free); sweeping a threshold over
/// these traces the detector's ROC.
std::vector<double> frame_statistics(const AudioBuffer& audio,
                                     const Dictionary& dict,
                                     const DetectorParams& params,
                                     const FrameConfig& cfg,
                                     const FeatureConfig& feat = FeatureConfig{});

/// (pd, pf) against a 0/1 reference; a rate whose reference class is empty is
/// reported as NaN.
std::pair<double, double> vad_score(const std::vector<Detection>& decisions,
                                    const std::vector<int>& reference);

/// Drops frames whose raw energy is below `fraction` of the median frame
/// energy (training-data silence removal).
std::vector<Vector> drop_silent_frames(const std::vector<Vector>& frames,
                                       double fraction = 0.01);

}  // namespace ulrs::vad

#endif  // ULRS_VAD_HPP
