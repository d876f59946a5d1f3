// ulrs/features.cpp

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

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "ulrs/vad.hpp"

namespace ulrs::vad {

namespace {

constexpr double kLogFloor = 1e-10;

double hz_to_mel(double hz) { return 1127.0 * std::log(1.0 + hz / 700.0); }
double mel_to_hz(double mel) { return 700.0 * (std::exp(mel / 1127.0) - 1.0); }

Index next_pow2(Index v) {
  Index p = 1;
  while (p < v) p <<= 1;
  return p;
}

// Iterative radix-2 FFT, enough for the power-of-two frame spectra here.
void fft_radix2(std::vector<std::complex<double>>& a) {
  const size_t n = a.size();
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    const double ang = -2.0 * M_PI / static_cast<double>(len);
    const std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

}  // namespace

Index FeatureConfig::dim() const {
  Index d = num_cepstra;
  if (include_band_energies) d += mel_bands;
  if (include_total_energy) d += 1;
  if (include_entropy) d += 1;
  return d;
}

void FeatureConfig::validate() const {
  if (mel_bands < 1) throw ConfigError("feature config: need at least one band");
  if (num_cepstra < 0) throw ConfigError("feature config: negative cepstra count");
  if (dim() < 1) throw ConfigError("feature config: empty feature stack");
}

Vector extract_features(const Vector& frame, const FrameConfig& cfg,
                        const FeatureConfig& feat) {
  cfg.validate();
  feat.validate();
  const Index frame_len = cfg.frame_samples();
  if (frame.size() != frame_len) {
    throw DimensionError("extract_features: frame length mismatch");
  }

  const Index nfft = next_pow2(frame_len);
  std::vector<std::complex<double>> spec(static_cast<size_t>(nfft),
                                         std::complex<double>(0.0, 0.0));
  for (Index i = 0; i < frame_len; ++i) {
    const double w =
        0.54 - 0.46 * std::cos(2.0 * M_PI * static_cast<double>(i) /
                               static_cast<double>(frame_len - 1));
    spec[static_cast<size_t>(i)] = frame[i] * w;
  }
  fft_radix2(spec);

  const Index bins = nfft / 2 + 1;
  Vector power(bins);
  for (Index k = 0; k < bins; ++k) {
    power[k] = std::norm(spec[static_cast<size_t>(k)]);
  }

  // Triangular mel filterbank over [0, fs/2].
  const int bands = feat.mel_bands;
  const double mel_max = hz_to_mel(cfg.sample_rate_hz / 2.0);
  std::vector<double> edge_hz(static_cast<size_t>(bands) + 2);
  for (int m = 0; m < bands + 2; ++m) {
    edge_hz[static_cast<size_t>(m)] =
        mel_to_hz(mel_max * static_cast<double>(m) / static_cast<double>(bands + 1));
  }
  Vector band_energy = Vector::Zero(bands);
  for (Index k = 0; k < bins; ++k) {
    const double f = static_cast<double>(k) *
                     static_cast<double>(cfg.sample_rate_hz) /
                     static_cast<double>(nfft);
    for (int m = 0; m < bands; ++m) {
      const double lo = edge_hz[static_cast<size_t>(m)];
      const double mid = edge_hz[static_cast<size_t>(m) + 1];
      const double hi = edge_hz[static_cast<size_t>(m) + 2];
      double w = 0.0;
      if (f >= lo && f <= mid && mid > lo) {
        w = (f - lo) / (mid - lo);
      } else if (f > mid && f <= hi && hi > mid) {
        w = (hi - f) / (hi - mid);
      }
      if (w > 0.0) band_energy[m] += w * power[k];
    }
  }

  Vector log_band(bands);
  for (int m = 0; m < bands; ++m) {
    log_band[m] = std::log(std::max(band_energy[m], kLogFloor));
  }

  // Cepstra: orthonormal DCT-II of the log band energies, zero-padded so the
  // transform length covers the requested coefficient count.
  const int pad = std::max(feat.num_cepstra, bands);
  Vector cepstra(feat.num_cepstra);
  for (int i = 0; i < feat.num_cepstra; ++i) {
    double acc = 0.0;
    for (int m = 0; m < bands; ++m) {  // padded entries are zero
      acc += log_band[m] * std::cos(M_PI * static_cast<double>(i) *
                                    (2.0 * static_cast<double>(m) + 1.0) /
                                    (2.0 * static_cast<double>(pad)));
    }
    const double scale =
        i == 0 ? std::sqrt(1.0 / pad) : std::sqrt(2.0 / static_cast<double>(pad));
    cepstra[i] = scale * acc;
  }

  Vector out(feat.dim());
  Index at = 0;
  out.segment(at, feat.num_cepstra) = cepstra;
  at += feat.num_cepstra;
  if (feat.include_band_energies) {
    out.segment(at, bands) = log_band;
    at += bands;
  }
  const double total = power.sum();
  if (feat.include_total_energy) {
    out[at++] = std::log(std::max(total, kLogFloor));
  }
  if (feat.include_entropy) {
    double entropy = 0.0;
    if (total <= 0.0) {
      entropy = std::log(static_cast<double>(bins));  // uniform convention
    } else {
      for (Index k = 0; k < bins; ++k) {
        const double p = power[k] / total;
        if (p > 0.0) entropy -= p * std::log(p);
      }
    }
    out[at++] = entropy;
  }
  return out;
}

}  // namespace ulrs::vad
