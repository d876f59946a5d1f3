// ulrs/sparse_coding.hpp

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

#ifndef ULRS_SPARSE_CODING_HPP
#define ULRS_SPARSE_CODING_HPP

#include <vector>

#include "ulrs/dictionary.hpp"
#include "ulrs/types.hpp"

namespace ulrs {

// Entries with |x_j| <= kSupportZeroTol * max(1, ||x||_inf) count as zero for
// support membership.
inline constexpr double kSupportZeroTol = 1e-10;

/// Coefficient vector over a dictionary with explicit support.
/// coefficients[j] == 0 exactly for every j outside the support, and
/// residual_norm == ||y - D * coefficients||_2 for the (D, y) it came from.
struct SparseCode {
  Vector coefficients;
  std::vector<Index> support;  // sorted ascending
  double residual_norm = 0.0;

  Index l0_norm() const { return static_cast<Index>(support.size()); }
};

/// Parameters shared by the coefficient solvers.
struct SolverConfig {
  Index sparsity_limit = 1;       // greedy stop: max selected atoms
  double omp_residual_tol = 0.0;  // greedy stop: residual norm (0 = off)
  double l2_penalty = 0.0;
  double l1_penalty = 0.1;
  double robust_rho = 0.1;
  double robust_lambda = 0.1;
  double epsilon_delta = 1e-12;  // division guard
  int max_iterations = 10000;
  double convergence_tol = 1e-10;

  void validate() const;
};

/// Stopping rule for the greedy solver: either a sparsity cap, a residual
/// norm target, or both (first one hit wins).  max_atoms == 0 means "no cap"
/// (bounded by min(n, K)).
struct OmpStop {
  Index max_atoms = 0;
  double residual_tol = 0.0;

  static OmpStop sparsity(Index t) { return {t, 0.0}; }
  static OmpStop residual(double eps) { return {0, eps}; }
  static OmpStop either(Index t, double eps) { return {t, eps}; }
};

/// Orthogonal matching pursuit.  Adds the atom best correlated with the
/// residual (ties break toward the lowest index), refits by least squares on
/// the selected support, and stops per `stop`.  The residual norm is
/// non-increasing across iterations and orthogonal to the selected atoms.
/// Throws SolverError when the selected-atom Gram submatrix has condition
/// estimate above 1e12.
SparseCode omp(const Dictionary& dict, const Vector& y, const OmpStop& stop);

/// Unconstrained least squares x = (D^T D)^-1 D^T y.
/// Throws RankError when D is not full column rank (no silent pseudo-inverse).
Vector least_squares(const Dictionary& dict, const Vector& y);

/// Ridge regression x = (D^T D + l2 I)^-1 D^T y.  l2 == 0 falls back to
/// least_squares including its rank check.
Vector ridge(const Dictionary& dict, const Vector& y, double l2_penalty);

/// Minimizes ||y - D x||_2^2 + lambda ||x||_1 by cyclic coordinate descent.
/// The objective is non-increasing per sweep; iteration stops once the KKT
/// subgradient residual falls below cfg.convergence_tol.  Throws SolverError
/// (carrying the last objective) when cfg.max_iterations sweeps do not
/// converge.
SparseCode l1_solve(const Dictionary& dict, const Vector& y, double lambda,
                    const SolverConfig& cfg = SolverConfig{});

/// Same solver over an arbitrary column matrix (columns need not have unit
/// norm).  Optionally records the objective after every sweep.
SparseCode l1_solve(const Matrix& columns, const Vector& y, double lambda,
                    const SolverConfig& cfg = SolverConfig{},
                    std::vector<double>* objective_trace = nullptr);

/// KKT subgradient residual of the l1 objective at x; the solver drives this
/// to cfg.convergence_tol, and tests use it as the optimality oracle.
double l1_kkt_residual(const Matrix& columns, const Vector& y, const Vector& x,
                       double lambda);

struct RobustFit {
  SparseCode code;  // coefficients over the dictionary atoms
  Vector error;     // per-sample gross-error coefficients
};

/// Huber-type robust fit via the extended column matrix
/// B = [D | (rho/lambda) I]: solves min ||y - B z||_2^2 + rho ||z||_1 with
/// the same solver path as l1_solve and splits z back into (x, e).
/// Reconstruction: y ~ D x + (rho/lambda) e + residual.
RobustFit robust_solve(const Dictionary& dict, const Vector& y, double rho,
                       double lambda, const SolverConfig& cfg = SolverConfig{});

/// Brute-force test oracle: globally best support of size <= max_atoms by
/// exhaustive enumeration (least squares per support, ties toward the
/// lexicographically smallest support).  Refuses to enumerate more than 1e6
/// supports.
SparseCode exhaustive_sparse(const Dictionary& dict, const Vector& y,
                             Index max_atoms);

namespace detail {

/// Zeroes sub-threshold entries, collects the support, recomputes the
/// residual norm against `columns`.
SparseCode build_sparse_code(const Matrix& columns, const Vector& y,
                             Vector coefficients);

/// omp over a raw column matrix (columns assumed unit norm); the public
/// overload validates and forwards here.
SparseCode omp_impl(const Matrix& columns, const Vector& y,
                    const OmpStop& stop);

}  // namespace detail

}  // namespace ulrs

#endif  // ULRS_SPARSE_CODING_HPP
