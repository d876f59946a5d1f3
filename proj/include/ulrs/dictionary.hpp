// ulrs/dictionary.hpp

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

#ifndef ULRS_DICTIONARY_HPP
#define ULRS_DICTIONARY_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "ulrs/types.hpp"

namespace ulrs {

/// Bank of matched subspaces: an n x K matrix whose columns (atoms) all have
/// unit l2 norm.  Construction validates the invariants; use normalized() to
/// build from arbitrary nonzero columns.
class Dictionary {
 public:
  /// Validates: finite entries, n >= 1, K >= 1, unit-norm columns (1e-9).
  explicit Dictionary(Matrix atoms);

  /// Rescales every column to unit norm, then constructs.
  /// Throws ConfigError if a column is identically zero.
  static Dictionary normalized(Matrix atoms);

  Index dim() const { return atoms_.rows(); }
  Index num_atoms() const { return atoms_.cols(); }
  const Matrix& matrix() const { return atoms_; }
  Vector atom(Index j) const { return atoms_.col(j); }

 private:
  Matrix atoms_;
};

/// Per-iteration training diagnostics of the learning routines.
struct LearnStats {
  std::vector<double> per_iteration_rmse;  // entrywise RMS of the fit error
  double final_esr = 0.0;
  int iterations_run = 0;
};

/// Lloyd clustering of the training vectors; centroids are normalized at the
/// end to satisfy the Dictionary invariant.  per_iteration_rmse records the
/// (pre-normalization) clustering RMSE, which is non-increasing.  An empty
/// cluster is re-seeded from the training point farthest from its centroid.
std::pair<Dictionary, LearnStats> kmeans_learn(
    const std::vector<Vector>& training, Index num_atoms, int iterations,
    std::uint64_t seed);

/// Alternating sparse coding (greedy, sparsity target) and sequential rank-1
/// atom updates.  Initializes from kmeans_learn.  With supports held fixed,
/// an update stage never increases the Frobenius fit error; unused atoms are
/// replaced by the worst-represented training vector (normalized).
std::pair<Dictionary, LearnStats> ksvd_learn(
    const std::vector<Vector>& training, Index num_atoms, int sparsity,
    int iterations, std::uint64_t seed);

/// Sampled-cosine parametric dictionary with `num_atoms` swept frequencies.
/// Requires num_atoms >= dim; num_atoms == dim yields an orthonormal basis.
Dictionary overcomplete_dct(Index dim, Index num_atoms);

/// Maximum absolute inner product between distinct atoms, in [0, 1].
double coherence(const Dictionary& dict);

/// Codes every signal greedily with the given sparsity and returns
///   (mean squared residual) / (mean squared reconstruction norm).
/// Returns +inf when every code is zero (no represented energy).
double esr_estimate(const Dictionary& dict, const std::vector<Vector>& signals,
                    int sparsity);

namespace detail {

/// One ksvd dictionary-update stage over all atoms, supports frozen.
/// `codes` is dense K x L with exact zeros off-support.  Updates atoms and
/// code values in place and returns the Frobenius fit error afterwards.
double ksvd_dictionary_update(Matrix& atoms, Matrix& codes,
                              const Matrix& signals);

/// Flips (atom, code row) sign so the atom's largest-magnitude entry is
/// positive.
void fix_atom_sign(Eigen::Ref<Vector> atom, Eigen::Ref<Eigen::RowVectorXd> row);

}  // namespace detail

}  // namespace ulrs

#endif  // ULRS_DICTIONARY_HPP
