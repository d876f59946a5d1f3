// ulrs/eval.hpp

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

#ifndef ULRS_EVAL_HPP
#define ULRS_EVAL_HPP

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "ulrs/dictionary.hpp"
#include "ulrs/sparse_coding.hpp"
#include "ulrs/types.hpp"

namespace ulrs {

/// Generator settings for the union-of-subspaces model y = D x + e + n.
struct SynthConfig {
  Index n = 24;
  Index num_atoms = 50;
  int sparsity = 3;
  int count = 1000;
  double snr_db = 20.0;
  double esr = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

/// One synthetic dataset.  sigma_n2 / sigma_e2 are per-component variances;
/// the drawn error and noise pools are rescaled so the sample ESR and SNR
/// match the request exactly.
struct SynthData {
  Dictionary dict;
  std::vector<Vector> h1;     // D x + e + n
  std::vector<Vector> h0;     // white noise at the same sigma_n
  std::vector<Vector> clean;  // D x (ground-truth reconstructions)
  std::vector<SparseCode> codes;
  double sigma_n2 = 0.0;
  double sigma_e2 = 0.0;
};

SynthData synth_uos(const SynthConfig& cfg);

struct RocPoint {
  double pf = 0.0;
  double pd = 0.0;
  double threshold = 0.0;
};

/// Empirical ROC: pf strictly increasing, pd non-decreasing, both in [0, 1].
struct RocCurve {
  std::vector<RocPoint> points;
};

/// Sweeps thresholds over the pooled statistic values; at each threshold
/// pf = fraction of h0 statistics strictly above, pd likewise for h1.
RocCurve monte_carlo_roc(const std::function<double(const Vector&)>& statistic,
                         const std::vector<Vector>& h0_set,
                         const std::vector<Vector>& h1_set);

/// Same sweep over precomputed statistic values.
RocCurve roc_from_stats(std::vector<double> h0_stats,
                        std::vector<double> h1_stats);

/// Trapezoidal area under the curve, extended to (1, 1).
double auc(const RocCurve& curve);

/// Step interpolation: largest pd among points with pf <= target (0 if none).
double pd_at_pf(const RocCurve& curve, double pf);

struct SweepOptions {
  int learn_sparsity = 3;
  int iterations = 15;
  std::uint64_t seed = 0;
};

/// Learns one dictionary, then reports esr_estimate for every coding
/// sparsity in [t_min, t_max]; the sequence is non-increasing.
std::vector<std::pair<int, double>> sparsity_esr_sweep(
    const std::vector<Vector>& training, Index num_atoms, int t_min, int t_max,
    const SweepOptions& opts = SweepOptions{});

}  // namespace ulrs

#endif  // ULRS_EVAL_HPP
