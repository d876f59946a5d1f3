// ulrs/sparse_coding.cpp

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

#include "ulrs/sparse_coding.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ulrs {

namespace {

double soft_threshold(double v, double t) {
  if (v > t) return v - t;
  if (v < -t) return v + t;
  return 0.0;
}

Matrix select_columns(const Matrix& columns, const std::vector<Index>& idx) {
  Matrix sub(columns.rows(), static_cast<Index>(idx.size()));
  for (Index k = 0; k < sub.cols(); ++k) sub.col(k) = columns.col(idx[k]);
  return sub;
}

void check_signal(const Matrix& columns, const Vector& y) {
  if (y.size() != columns.rows()) {
    std::ostringstream msg;
    msg << "signal length " << y.size() << " does not match dictionary dimension "
        << columns.rows();
    throw DimensionError(msg.str());
  }
}

}  // namespace

void SolverConfig::validate() const {
  if (sparsity_limit < 1) throw ConfigError("sparsity_limit must be >= 1");
  if (omp_residual_tol < 0) throw ConfigError("omp_residual_tol must be >= 0");
  if (l2_penalty < 0) throw ConfigError("l2_penalty must be >= 0");
  if (l1_penalty < 0) throw ConfigError("l1_penalty must be >= 0");
  if (robust_rho <= 0) throw ConfigError("robust_rho must be > 0");
  if (robust_lambda <= 0) throw ConfigError("robust_lambda must be > 0");
  if (epsilon_delta <= 0) throw ConfigError("epsilon_delta must be > 0");
  if (max_iterations < 1) throw ConfigError("max_iterations must be >= 1");
  if (convergence_tol <= 0) throw ConfigError("convergence_tol must be > 0");
}

namespace detail {

SparseCode build_sparse_code(const Matrix& columns, const Vector& y,
                             Vector coefficients) {
  SparseCode code;
  const double scale =
      std::max(1.0, coefficients.size() ? coefficients.cwiseAbs().maxCoeff() : 0.0);
  for (Index j = 0; j < coefficients.size(); ++j) {
    if (std::abs(coefficients[j]) <= kSupportZeroTol * scale) {
      coefficients[j] = 0.0;
    } else {
      code.support.push_back(j);
    }
  }
  code.residual_norm = (y - columns * coefficients).norm();
  code.coefficients = std::move(coefficients);
  return code;
}

SparseCode omp_impl(const Matrix& columns, const Vector& y,
                    const OmpStop& stop) {
  const Index n = columns.rows();
  const Index num_atoms = columns.cols();
  if (stop.max_atoms > num_atoms) {
    throw ConfigError("omp: sparsity target exceeds the number of atoms");
  }
  const Index cap =
      stop.max_atoms > 0 ? stop.max_atoms : std::min<Index>(n, num_atoms);
  const double y_scale = std::max(1.0, y.norm());

  std::vector<Index> support;
  std::vector<char> selected(static_cast<size_t>(num_atoms), 0);
  Vector residual = y;
  Vector sub_coeffs;

  while (static_cast<Index>(support.size()) < cap) {
    const double rnorm = residual.norm();
    if (rnorm <= stop.residual_tol || rnorm <= 1e-13 * y_scale) break;

    Vector corr = columns.transpose() * residual;
    Index best = -1;
    double best_abs = 0.0;
    for (Index j = 0; j < num_atoms; ++j) {
      if (selected[static_cast<size_t>(j)]) continue;
      const double a = std::abs(corr[j]);
      if (best < 0 || a > best_abs) {
        best = j;
        best_abs = a;
      }
    }
    if (best < 0 || best_abs <= 1e-13 * y_scale) break;

    support.push_back(best);
    selected[static_cast<size_t>(best)] = 1;

    Matrix sub = select_columns(columns, support);
    Eigen::ColPivHouseholderQR<Matrix> qr(sub);
    const Index k = static_cast<Index>(support.size());
    const double rmax = std::abs(qr.matrixR()(0, 0));
    const double rmin = std::abs(qr.matrixR()(k - 1, k - 1));
    // Condition of the Gram submatrix ~ cond(sub)^2.
    if (rmin == 0.0 || (rmax / rmin) * (rmax / rmin) > 1e12) {
      std::ostringstream msg;
      msg << "omp: selected-atom gram submatrix numerically singular after "
          << k << " atoms (condition estimate "
          << (rmin == 0.0 ? std::numeric_limits<double>::infinity()
                          : (rmax / rmin) * (rmax / rmin))
          << ")";
      throw SolverError(msg.str());
    }
    sub_coeffs = qr.solve(y);
    residual = y - sub * sub_coeffs;
  }

  Vector coeffs = Vector::Zero(num_atoms);
  for (size_t k = 0; k < support.size(); ++k) {
    coeffs[support[k]] = sub_coeffs[static_cast<Index>(k)];
  }
  return build_sparse_code(columns, y, std::move(coeffs));
}

}  // namespace detail

SparseCode omp(const Dictionary& dict, const Vector& y, const OmpStop& stop) {
  check_signal(dict.matrix(), y);
  if (stop.max_atoms < 0) throw ConfigError("omp: negative sparsity target");
  if (stop.residual_tol < 0) throw ConfigError("omp: negative residual target");
  return detail::omp_impl(dict.matrix(), y, stop);
}

Vector least_squares(const Dictionary& dict, const Vector& y) {
  const Matrix& d = dict.matrix();
  check_signal(d, y);
  Eigen::ColPivHouseholderQR<Matrix> qr(d);
  if (qr.rank() < d.cols()) {
    std::ostringstream msg;
    msg << "least_squares: dictionary is rank deficient (rank " << qr.rank()
        << " of " << d.cols() << " atoms)";
    throw RankError(msg.str());
  }
  return qr.solve(y);
}

Vector ridge(const Dictionary& dict, const Vector& y, double l2_penalty) {
  if (l2_penalty < 0) throw ConfigError("ridge: l2_penalty must be >= 0");
  if (l2_penalty == 0.0) return least_squares(dict, y);
  const Matrix& d = dict.matrix();
  check_signal(d, y);
  Matrix gram = d.transpose() * d;
  gram.diagonal().array() += l2_penalty;
  return Eigen::LLT<Matrix>(gram).solve(d.transpose() * y);
}

double l1_kkt_residual(const Matrix& columns, const Vector& y, const Vector& x,
                       double lambda) {
  check_signal(columns, y);
  if (x.size() != columns.cols()) {
    throw DimensionError("l1_kkt_residual: coefficient length mismatch");
  }
  const Vector grad = 2.0 * (columns.transpose() * (y - columns * x));
  double worst = 0.0;
  for (Index j = 0; j < x.size(); ++j) {
    const double g = grad[j];
    const double v = x[j] == 0.0
                         ? std::max(0.0, std::abs(g) - lambda)
                         : std::abs(g - lambda * (x[j] > 0 ? 1.0 : -1.0));
    worst = std::max(worst, v);
  }
  return worst;
}

SparseCode l1_solve(const Matrix& columns, const Vector& y, double lambda,
                    const SolverConfig& cfg,
                    std::vector<double>* objective_trace) {
  check_signal(columns, y);
  cfg.validate();
  if (lambda <= 0) throw ConfigError("l1_solve: lambda must be > 0");

  const Index m = columns.cols();
  Vector col_norm2(m);
  for (Index j = 0; j < m; ++j) col_norm2[j] = columns.col(j).squaredNorm();

  Vector x = Vector::Zero(m);
  Vector residual = y;
  if (objective_trace) objective_trace->clear();

  double last_objective = residual.squaredNorm();
  for (int sweep = 0; sweep < cfg.max_iterations; ++sweep) {
    for (Index j = 0; j < m; ++j) {
      const double nj = col_norm2[j];
      if (nj <= cfg.epsilon_delta) continue;  // degenerate column stays at 0
      const double cj = columns.col(j).dot(residual) + nj * x[j];
      const double xj_new = soft_threshold(cj, lambda / 2.0) / nj;
      const double delta = xj_new - x[j];
      if (delta != 0.0) {
        residual -= columns.col(j) * delta;
        x[j] = xj_new;
      }
    }
    if ((sweep & 63) == 63) residual = y - columns * x;  // shed drift

    last_objective = residual.squaredNorm() + lambda * x.lpNorm<1>();
    if (objective_trace) objective_trace->push_back(last_objective);

    if (l1_kkt_residual(columns, y, x, lambda) <= cfg.convergence_tol) {
      return detail::build_sparse_code(columns, y, std::move(x));
    }
  }
  std::ostringstream msg;
  msg << "l1_solve: no convergence after " << cfg.max_iterations
      << " sweeps (objective " << last_objective << ")";
  throw SolverError(msg.str(), last_objective);
}

SparseCode l1_solve(const Dictionary& dict, const Vector& y, double lambda,
                    const SolverConfig& cfg) {
  return l1_solve(dict.matrix(), y, lambda, cfg);
}

RobustFit robust_solve(const Dictionary& dict, const Vector& y, double rho,
                       double lambda, const SolverConfig& cfg) {
  if (rho <= 0) throw ConfigError("robust_solve: rho must be > 0");
  if (lambda <= 0) throw ConfigError("robust_solve: lambda must be > 0");
  const Matrix& d = dict.matrix();
  check_signal(d, y);
  const Index n = d.rows();
  const Index num_atoms = d.cols();

  Matrix extended(n, num_atoms + n);
  extended.leftCols(num_atoms) = d;
  extended.rightCols(n) = (rho / lambda) * Matrix::Identity(n, n);

  SparseCode z = l1_solve(extended, y, rho, cfg);

  RobustFit fit;
  fit.error = z.coefficients.tail(n);
  fit.code.coefficients = z.coefficients.head(num_atoms);
  for (Index j : z.support) {
    if (j < num_atoms) fit.code.support.push_back(j);
  }
  fit.code.residual_norm = (y - d * fit.code.coefficients).norm();
  return fit;
}

SparseCode exhaustive_sparse(const Dictionary& dict, const Vector& y,
                             Index max_atoms) {
  const Matrix& d = dict.matrix();
  check_signal(d, y);
  const Index num_atoms = d.cols();
  if (max_atoms < 0) throw ConfigError("exhaustive_sparse: negative sparsity");
  if (max_atoms > num_atoms) {
    throw ConfigError("exhaustive_sparse: sparsity exceeds atom count");
  }

  double total = 0.0;
  double choose = 1.0;
  for (Index t = 0; t <= max_atoms; ++t) {
    total += choose;
    choose = choose * static_cast<double>(num_atoms - t) / static_cast<double>(t + 1);
    if (total > 1e6) {
      throw ConfigError("exhaustive_sparse: combinatorial budget exceeded");
    }
  }

  const double tie_eps = 1e-12 * std::max(1.0, y.norm());
  double best_residual = y.norm();
  std::vector<Index> best_support;  // empty support is the baseline
  Vector best_coeffs;               // on-support values

  std::vector<Index> current;
  // Depth-first lexicographic enumeration: the first support reaching the
  // minimum is the lexicographically smallest one.
  auto visit = [&](auto&& self, Index start) -> void {
    if (!current.empty()) {
      Matrix sub = select_columns(d, current);
      Eigen::ColPivHouseholderQR<Matrix> qr(sub);
      Vector coeffs = qr.solve(y);
      const double r = (y - sub * coeffs).norm();
      if (r < best_residual - tie_eps) {
        best_residual = r;
        best_support = current;
        best_coeffs = coeffs;
      }
    }
    if (static_cast<Index>(current.size()) == max_atoms) return;
    for (Index j = start; j < num_atoms; ++j) {
      current.push_back(j);
      self(self, j + 1);
      current.pop_back();
    }
  };
  visit(visit, 0);

  Vector coeffs = Vector::Zero(num_atoms);
  for (size_t k = 0; k < best_support.size(); ++k) {
    coeffs[best_support[k]] = best_coeffs[static_cast<Index>(k)];
  }
  return detail::build_sparse_code(d, y, std::move(coeffs));
}

}  // namespace ulrs
