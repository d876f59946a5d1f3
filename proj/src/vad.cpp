// ulrs/vad.cpp

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
#include <limits>

#include "ulrs/vad.hpp"

namespace ulrs::vad {

namespace {

void check_feature_dim(const Dictionary& dict, const FeatureConfig& feat) {
  if (dict.dim() != feat.dim()) {
    throw DimensionError("vad: dictionary dimension does not match the feature stack");
  }
}

}  // namespace

std::vector<Detection> vad_run(const AudioBuffer& audio, const Dictionary& dict,
                               const DetectorParams& params,
                               const FrameConfig& cfg,
                               const FeatureConfig& feat) {
  check_feature_dim(dict, feat);
  std::vector<Detection> decisions;
  for (const Vector& frame : frame_signal(audio.samples, cfg)) {
    decisions.push_back(sr_decide(extract_features(frame, cfg, feat), dict, params));
  }
  return decisions;
}

std::vector<double> frame_statistics(const AudioBuffer& audio,
                                     const Dictionary& dict,
                                     const DetectorParams& params,
                                     const FrameConfig& cfg,
                                     const FeatureConfig& feat) {
  check_feature_dim(dict, feat);
  std::vector<double> stats;
  for (const Vector& frame : frame_signal(audio.samples, cfg)) {
    stats.push_back(decision_statistic(dict, extract_features(frame, cfg, feat), params));
  }
  return stats;
}

std::pair<double, double> vad_score(const std::vector<Detection>& decisions,
                                    const std::vector<int>& reference) {
  if (decisions.size() != reference.size()) {
    throw DimensionError("vad_score: decision and reference lengths differ");
  }
  long speech_frames = 0;
  long nonspeech_frames = 0;
  long hits = 0;
  long false_alarms = 0;
  for (size_t i = 0; i < decisions.size(); ++i) {
    const bool said_speech = decisions[i].decision == Hypothesis::H1;
    if (reference[i] != 0) {
      ++speech_frames;
      if (said_speech) ++hits;
    } else {
      ++nonspeech_frames;
      if (said_speech) ++false_alarms;
    }
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double pd = speech_frames > 0
                        ? static_cast<double>(hits) / static_cast<double>(speech_frames)
                        : nan;
  const double pf = nonspeech_frames > 0
                        ? static_cast<double>(false_alarms) /
                              static_cast<double>(nonspeech_frames)
                        : nan;
  return {pd, pf};
}

}  // namespace ulrs::vad
