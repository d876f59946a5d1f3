// ulrs/detector.cpp

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

#include "ulrs/detector.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace ulrs {

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794;

double gaussian_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

// Acklam's rational approximation of the standard normal quantile; relative
// error below 1.15e-9 over (0, 1), refined further by the caller.
double normal_quantile_estimate(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - p_low) {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

struct StatisticParts {
  double t = 0.0;
  double recon_norm2 = 0.0;
  double y_norm2 = 0.0;
  SparseCode code;
};

StatisticParts statistic_parts(const Dictionary& dict, const Vector& y,
                               const DetectorParams& params) {
  params.validate();
  if (y.size() != dict.dim()) {
    throw DimensionError("detector: signal length does not match dictionary");
  }
  if (params.solver.sparsity_limit > dict.num_atoms()) {
    throw ConfigError("detector: solver sparsity exceeds the atom count");
  }

  StatisticParts parts;
  if (params.rule == DecisionRule::robust) {
    RobustFit fit = robust_solve(dict, y, params.solver.robust_rho,
                                 params.solver.robust_lambda, params.solver);
    parts.code = std::move(fit.code);  // gross-error part stays out of D x
  } else if (params.coder == CoderKind::l1) {
    parts.code = l1_solve(dict, y, params.solver.l1_penalty, params.solver);
  } else {
    parts.code = omp(dict, y,
                     OmpStop::either(params.solver.sparsity_limit,
                                     params.solver.omp_residual_tol));
  }
  const Vector recon = dict.matrix() * parts.code.coefficients;
  parts.t = y.dot(recon);
  parts.recon_norm2 = recon.squaredNorm();
  parts.y_norm2 = y.squaredNorm();
  return parts;
}

}  // namespace

void DetectorParams::validate() const {
  if (!(sigma_n2 > 0)) throw ConfigError("sigma_n2 must be > 0");
  if (sigma_e2 < 0) throw ConfigError("sigma_e2 must be >= 0");
  if (gamma < 0) throw ConfigError("gamma must be >= 0");
  solver.validate();
}

InterferenceBasis::InterferenceBasis(Matrix columns)
    : columns_(std::move(columns)) {
  if (columns_.cols() < 1) throw ConfigError("interference basis is empty");
  if (columns_.cols() >= columns_.rows()) {
    throw ConfigError("interference basis must have p < n columns");
  }
  if (!columns_.allFinite()) {
    throw ConfigError("interference basis contains NaN or Inf");
  }
  Eigen::JacobiSVD<Matrix> svd(columns_);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  if (smin <= 0.0 || sv(0) / smin >= 1e10) {
    throw RankError("interference basis is rank deficient");
  }
}

std::pair<double, SparseCode> sr_statistic(const Dictionary& dict,
                                           const Vector& y,
                                           const DetectorParams& params) {
  StatisticParts parts = statistic_parts(dict, y, params);
  return {parts.t, std::move(parts.code)};
}

double decision_statistic(const Dictionary& dict, const Vector& y,
                          const DetectorParams& params) {
  const StatisticParts parts = statistic_parts(dict, y, params);
  double u = parts.t - 0.5 * parts.recon_norm2 +
             0.5 * (params.sigma_e2 / params.sigma_n2) * parts.y_norm2;
  if (params.rule == DecisionRule::sparse_penalized) {
    u -= params.gamma * static_cast<double>(parts.code.l0_norm());
  }
  return u;
}

Detection sr_decide(const Vector& y, const Dictionary& dict,
                    const DetectorParams& params) {
  if (!std::isfinite(params.threshold_C)) {
    throw ConfigError("sr_decide: threshold_C has not been calibrated");
  }
  StatisticParts parts = statistic_parts(dict, y, params);

  // Likelihood-ratio threshold for the union-of-subspaces hypothesis pair:
  // larger t favors H1, the penalized rule adds gamma * ||x||_0.
  double threshold = params.threshold_C + 0.5 * parts.recon_norm2 -
                     0.5 * (params.sigma_e2 / params.sigma_n2) * parts.y_norm2;
  if (params.rule == DecisionRule::sparse_penalized) {
    threshold += params.gamma * static_cast<double>(parts.code.l0_norm());
  }

  Detection det;
  det.statistic_t = parts.t;
  det.threshold = threshold;
  det.decision = parts.t > threshold ? Hypothesis::H1 : Hypothesis::H0;
  det.code = std::move(parts.code);
  return det;
}

double matched_filter_stat(const Vector& s, const Matrix& covariance,
                           const Vector& y) {
  const Index n = s.size();
  if (covariance.rows() != n || covariance.cols() != n || y.size() != n) {
    throw DimensionError("matched_filter_stat: size mismatch");
  }
  const double scale = covariance.cwiseAbs().maxCoeff();
  if ((covariance - covariance.transpose()).cwiseAbs().maxCoeff() >
      1e-10 * std::max(scale, 1.0)) {
    throw ConfigError("matched_filter_stat: covariance is not symmetric");
  }
  Eigen::LLT<Matrix> llt(covariance);
  if (llt.info() != Eigen::Success) {
    throw RankError("matched_filter_stat: covariance is not positive definite");
  }
  return s.dot(llt.solve(y));
}

namespace {

/// Thin orthonormal basis of the column space, rank detected by pivoted QR.
Matrix orthonormal_basis(const Matrix& m) {
  Eigen::ColPivHouseholderQR<Matrix> qr(m);
  const Index r = qr.rank();
  if (r == 0) return Matrix(m.rows(), 0);
  Matrix q = qr.householderQ() * Matrix::Identity(m.rows(), r);
  return q;
}

}  // namespace

double matched_subspace_stat(const Dictionary& dict, const Vector& y) {
  if (y.size() != dict.dim()) {
    throw DimensionError("matched_subspace_stat: signal length mismatch");
  }
  const Matrix basis = orthonormal_basis(dict.matrix());
  if (basis.cols() == 0) throw RankError("matched_subspace_stat: empty subspace");
  return (basis.transpose() * y).squaredNorm();
}

double matched_subspace_stat(const Dictionary& dict,
                             const InterferenceBasis& interference,
                             const Vector& y) {
  const Index n = dict.dim();
  if (interference.dim() != n) {
    throw DimensionError("matched_subspace_stat: interference dimension mismatch");
  }
  if (y.size() != n) {
    throw DimensionError("matched_subspace_stat: signal length mismatch");
  }
  const Matrix qc = orthonormal_basis(interference.columns());
  const Vector y_perp = y - qc * (qc.transpose() * y);
  const Matrix d_perp = dict.matrix() - qc * (qc.transpose() * dict.matrix());
  const Matrix basis = orthonormal_basis(d_perp);
  if (basis.cols() == 0) {
    throw RankError(
        "matched_subspace_stat: dictionary lies inside the interference span");
  }
  if (interference.rank() + basis.cols() >= n) {
    throw ConfigError(
        "matched_subspace_stat: no noise-only dimensions remain (p + rank >= n)");
  }
  return (basis.transpose() * y_perp).squaredNorm();
}

double q_tail(double x) { return 0.5 * std::erfc(x * M_SQRT1_2); }

double q_tail_inv(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ConfigError("q_tail_inv: alpha must lie strictly inside (0, 1)");
  }
  double x = -normal_quantile_estimate(alpha);
  for (int it = 0; it < 3; ++it) {
    const double pdf = gaussian_pdf(x);
    if (pdf == 0.0) break;
    x += (q_tail(x) - alpha) / pdf;
  }
  return x;
}

double theoretical_pd(double alpha, double snr, double esr) {
  if (snr < 0) throw ConfigError("theoretical_pd: snr must be >= 0 (linear)");
  if (esr < 0) throw ConfigError("theoretical_pd: esr must be >= 0");
  return q_tail(q_tail_inv(alpha) - std::sqrt(snr / (1.0 + esr)));
}

double theoretical_pd_sparse(double alpha, double snr, double esr,
                             const std::function<double(int)>& f, int s) {
  if (snr < 0) throw ConfigError("theoretical_pd_sparse: snr must be >= 0");
  if (esr < 0) throw ConfigError("theoretical_pd_sparse: esr must be >= 0");
  if (s < 0) throw ConfigError("theoretical_pd_sparse: sparsity must be >= 0");
  const double f0 = f(0);
  const double fs = f(s);
  if (!(f0 > 0.0) || !(fs > 0.0)) {
    throw ConfigError("theoretical_pd_sparse: weight function must be positive");
  }
  if (fs < f0) {
    throw ConfigError("theoretical_pd_sparse: weight function must be monotone");
  }
  return q_tail(fs * q_tail_inv(alpha) - std::sqrt(snr / (1.0 + esr)));
}

double calibrate_threshold(const std::function<double(const Vector&)>& statistic,
                           const std::function<Vector(std::uint64_t)>& h0_sampler,
                           double alpha, int trials) {
  if (trials < 100) throw ConfigError("calibrate_threshold: trials must be >= 100");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ConfigError("calibrate_threshold: alpha must lie inside (0, 1)");
  }
  std::vector<double> values(static_cast<size_t>(trials));
  for (int i = 0; i < trials; ++i) {
    values[static_cast<size_t>(i)] =
        statistic(h0_sampler(static_cast<std::uint64_t>(i)));
  }
  std::sort(values.begin(), values.end());
  auto k = static_cast<std::ptrdiff_t>(
      std::ceil((1.0 - alpha) * static_cast<double>(trials)));
  k = std::clamp<std::ptrdiff_t>(k, 1, trials);
  return values[static_cast<size_t>(k - 1)];
}

}  // namespace ulrs
