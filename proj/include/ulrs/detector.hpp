// ulrs/detector.hpp

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

#ifndef ULRS_DETECTOR_HPP
#define ULRS_DETECTOR_HPP

#include <cstdint>
#include <functional>
#include <limits>
#include <utility>

#include "ulrs/dictionary.hpp"
#include "ulrs/sparse_coding.hpp"
#include "ulrs/types.hpp"

namespace ulrs {

enum class Hypothesis { H0, H1 };

enum class DecisionRule { plain, sparse_penalized, robust };

/// Which coefficient solver sr_statistic runs: greedy (default) or l1.
enum class CoderKind { omp, l1 };

struct DetectorParams {
  double sigma_n2 = 1.0;   // noise variance, > 0
  double sigma_e2 = 0.0;   // subspace-model error variance, >= 0
  double gamma = 0.0;      // sparsity penalty, >= 0
  double threshold_C = std::numeric_limits<double>::quiet_NaN();
  DecisionRule rule = DecisionRule::plain;
  CoderKind coder = CoderKind::omp;
  SolverConfig solver;

  void validate() const;
};

struct Detection {
  double statistic_t = 0.0;
  double threshold = 0.0;
  Hypothesis decision = Hypothesis::H0;
  SparseCode code;
};

/// Known interference subspace: n x p, p < n, full column rank
/// (condition estimate below 1e10, checked at construction).
class InterferenceBasis {
 public:
  explicit InterferenceBasis(Matrix columns);

  const Matrix& columns() const { return columns_; }
  Index dim() const { return columns_.rows(); }
  Index rank() const { return columns_.cols(); }

 private:
  Matrix columns_;
};

/// Sufficient statistic t = <y, D x> with x solved per params (rule/coder).
/// For the robust rule the gross-error part is excluded from the
/// reconstruction entering t.
std::pair<double, SparseCode> sr_statistic(const Dictionary& dict,
                                           const Vector& y,
                                           const DetectorParams& params);

/// The statistic with every signal-dependent threshold term moved to the
/// left,
///   u = t - ||D x||^2 / 2 + (sigma_e2 / sigma_n2) ||y||^2 / 2
///       - gamma ||x||_0            (penalized rule only),
/// so the decision is exactly u > C.  Sweeping C over u traces the rule's
/// ROC.
double decision_statistic(const Dictionary& dict, const Vector& y,
                          const DetectorParams& params);

/// Full decision: H1 iff statistic_t > threshold (strict; equality keeps H0).
/// Throws ConfigError when params.threshold_C has not been calibrated.
Detection sr_decide(const Vector& y, const Dictionary& dict,
                    const DetectorParams& params);

/// Classical matched filter s^T R^-1 y for known covariance R (must be
/// symmetric positive definite).
double matched_filter_stat(const Vector& s, const Matrix& covariance,
                           const Vector& y);

/// Matched subspace energy ||P_D y||^2.
double matched_subspace_stat(const Dictionary& dict, const Vector& y);

/// Matched subspace energy after interference nulling:
/// y^T Pc_perp P_dc Pc_perp y where Pc_perp projects onto the null space of
/// C^T and P_dc onto the part of span(D) outside span(C).
double matched_subspace_stat(const Dictionary& dict,
                             const InterferenceBasis& interference,
                             const Vector& y);

/// Standard normal upper-tail probability Q(x).
double q_tail(double x);

/// Inverse of q_tail on (0, 1); |q_tail(q_tail_inv(a)) - a| <= 1e-10.
double q_tail_inv(double alpha);

/// Closed-form detection probability Q(Q^-1(alpha) - sqrt(snr / (1 + esr)))
/// with snr in linear units.  esr == 0 gives the matched-filter curve.
double theoretical_pd(double alpha, double snr, double esr);

/// Sparsity-aware curve Q(f(s) Q^-1(alpha) - sqrt(snr / (1 + esr))) for a
/// caller-supplied monotone weight f with f(s) >= f(0) > 0.
double theoretical_pd_sparse(double alpha, double snr, double esr,
                             const std::function<double(int)>& f, int s);

/// Default sparsity weight family f(s) = 1 + c s.
inline std::function<double(int)> linear_sparsity_weight(double c) {
  return [c](int s) { return 1.0 + c * static_cast<double>(s); };
}

/// Empirical Neyman-Pearson calibration: the (1 - alpha) quantile of the
/// statistic over `trials` sampler draws.  The sampler receives the trial
/// index and must be deterministic in it, which makes the result
/// reproducible and evaluation-order independent.  Requires trials >= 100.
double calibrate_threshold(const std::function<double(const Vector&)>& statistic,
                           const std::function<Vector(std::uint64_t)>& h0_sampler,
                           double alpha, int trials);

}  // namespace ulrs

#endif  // ULRS_DETECTOR_HPP
