// ulrs/dictionary.cpp

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

#include "ulrs/dictionary.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "ulrs/sparse_coding.hpp"

namespace ulrs {

namespace {

constexpr double kUnitNormTol = 1e-9;
constexpr int kKsvdInitKmeansIters = 10;

Matrix stack_training(const std::vector<Vector>& training) {
  if (training.empty()) throw ConfigError("training set is empty");
  const Index n = training.front().size();
  if (n < 1) throw ConfigError("training vectors are empty");
  Matrix y(n, static_cast<Index>(training.size()));
  for (size_t i = 0; i < training.size(); ++i) {
    if (training[i].size() != n) {
      throw DimensionError("training vectors have inconsistent lengths");
    }
    y.col(static_cast<Index>(i)) = training[i];
  }
  if (!y.allFinite()) throw ConfigError("training contains NaN or Inf");
  return y;
}

/// K distinct column indices by seeded partial Fisher-Yates.
std::vector<Index> sample_without_replacement(Index population, Index k,
                                              std::uint64_t seed) {
  std::vector<Index> idx(static_cast<size_t>(population));
  std::iota(idx.begin(), idx.end(), Index{0});
  std::mt19937_64 engine(seed);
  for (Index i = 0; i < k; ++i) {
    std::uniform_int_distribution<Index> pick(i, population - 1);
    std::swap(idx[static_cast<size_t>(i)], idx[static_cast<size_t>(pick(engine))]);
  }
  idx.resize(static_cast<size_t>(k));
  return idx;
}

}  // namespace

Dictionary::Dictionary(Matrix atoms) : atoms_(std::move(atoms)) {
  if (atoms_.rows() < 1 || atoms_.cols() < 1) {
    throw ConfigError("dictionary must have at least one row and one atom");
  }
  if (!atoms_.allFinite()) throw ConfigError("dictionary contains NaN or Inf");
  for (Index j = 0; j < atoms_.cols(); ++j) {
    const double norm = atoms_.col(j).norm();
    if (std::abs(norm - 1.0) > kUnitNormTol) {
      std::ostringstream msg;
      msg << "atom " << j << " has norm " << norm << ", expected 1";
      throw ConfigError(msg.str());
    }
  }
}

Dictionary Dictionary::normalized(Matrix atoms) {
  if (atoms.rows() < 1 || atoms.cols() < 1) {
    throw ConfigError("dictionary must have at least one row and one atom");
  }
  if (!atoms.allFinite()) throw ConfigError("dictionary contains NaN or Inf");
  for (Index j = 0; j < atoms.cols(); ++j) {
    const double norm = atoms.col(j).norm();
    if (norm == 0.0) {
      std::ostringstream msg;
      msg << "atom " << j << " is identically zero and cannot be normalized";
      throw ConfigError(msg.str());
    }
    atoms.col(j) /= norm;
  }
  return Dictionary(std::move(atoms));
}

std::pair<Dictionary, LearnStats> kmeans_learn(
    const std::vector<Vector>& training, Index num_atoms, int iterations,
    std::uint64_t seed) {
  Matrix y = stack_training(training);
  const Index n = y.rows();
  const Index count = y.cols();
  if (num_atoms < 1) throw ConfigError("kmeans: need at least one centroid");
  if (count < num_atoms) {
    throw ConfigError("kmeans: fewer training vectors than centroids");
  }
  if (iterations < 1) throw ConfigError("kmeans: iterations must be >= 1");

  Matrix centroids(n, num_atoms);
  {
    const auto idx = sample_without_replacement(count, num_atoms, seed);
    for (Index k = 0; k < num_atoms; ++k) centroids.col(k) = y.col(idx[k]);
  }

  LearnStats stats;
  std::vector<Index> assignment(static_cast<size_t>(count), 0);
  Vector dist2(count);

  for (int iter = 0; iter < iterations; ++iter) {
    double sse = 0.0;
    for (Index i = 0; i < count; ++i) {
      Index best = 0;
      double best_d = (y.col(i) - centroids.col(0)).squaredNorm();
      for (Index k = 1; k < num_atoms; ++k) {
        const double d = (y.col(i) - centroids.col(k)).squaredNorm();
        if (d < best_d) {
          best_d = d;
          best = k;
        }
      }
      assignment[static_cast<size_t>(i)] = best;
      dist2[i] = best_d;
      sse += best_d;
    }
    stats.per_iteration_rmse.push_back(
        std::sqrt(sse / static_cast<double>(n * count)));

    Matrix sums = Matrix::Zero(n, num_atoms);
    std::vector<Index> sizes(static_cast<size_t>(num_atoms), 0);
    for (Index i = 0; i < count; ++i) {
      sums.col(assignment[static_cast<size_t>(i)]) += y.col(i);
      ++sizes[static_cast<size_t>(assignment[static_cast<size_t>(i)])];
    }
    std::vector<char> reseeded(static_cast<size_t>(count), 0);
    for (Index k = 0; k < num_atoms; ++k) {
      if (sizes[static_cast<size_t>(k)] > 0) {
        centroids.col(k) =
            sums.col(k) / static_cast<double>(sizes[static_cast<size_t>(k)]);
      } else {
        // Empty cluster: re-seed from the point farthest from its centroid.
        Index far = -1;
        double far_d = -1.0;
        for (Index i = 0; i < count; ++i) {
          if (reseeded[static_cast<size_t>(i)]) continue;
          if (dist2[i] > far_d) {
            far_d = dist2[i];
            far = i;
          }
        }
        if (far >= 0) {
          centroids.col(k) = y.col(far);
          reseeded[static_cast<size_t>(far)] = 1;
        }
      }
    }
  }
  stats.iterations_run = iterations;

  // Normalize for the Dictionary invariant; a zero centroid (possible with
  // degenerate data) is replaced by the largest-norm training vector.
  for (Index k = 0; k < num_atoms; ++k) {
    if (centroids.col(k).norm() == 0.0) {
      Index big = 0;
      double big_n = y.col(0).norm();
      for (Index i = 1; i < count; ++i) {
        const double v = y.col(i).norm();
        if (v > big_n) {
          big_n = v;
          big = i;
        }
      }
      if (big_n == 0.0) {
        throw ConfigError("kmeans: training data is identically zero");
      }
      centroids.col(k) = y.col(big);
    }
  }
  Dictionary dict = Dictionary::normalized(std::move(centroids));
  stats.final_esr = esr_estimate(dict, training, 1);
  return {std::move(dict), std::move(stats)};
}

namespace detail {

void fix_atom_sign(Eigen::Ref<Vector> atom, Eigen::Ref<Eigen::RowVectorXd> row) {
  Index peak = 0;
  atom.cwiseAbs().maxCoeff(&peak);
  if (atom[peak] < 0.0) {
    atom = -atom;
    row = -row;
  }
}

double ksvd_dictionary_update(Matrix& atoms, Matrix& codes,
                              const Matrix& signals) {
  const Index n = atoms.rows();
  const Index num_atoms = atoms.cols();
  const Index count = signals.cols();
  if (codes.rows() != num_atoms || codes.cols() != count || signals.rows() != n) {
    throw DimensionError("ksvd_dictionary_update: shape mismatch");
  }

  Matrix residual = signals - atoms * codes;
  std::vector<Index> unused;

  for (Index k = 0; k < num_atoms; ++k) {
    std::vector<Index> omega;
    for (Index i = 0; i < count; ++i) {
      if (codes(k, i) != 0.0) omega.push_back(i);
    }
    if (omega.empty()) {
      unused.push_back(k);
      continue;
    }

    const Index m = static_cast<Index>(omega.size());
    Matrix e(n, m);
    Eigen::RowVectorXd g_old(m);
    for (Index c = 0; c < m; ++c) {
      g_old[c] = codes(k, omega[static_cast<size_t>(c)]);
      e.col(c) = residual.col(omega[static_cast<size_t>(c)]) +
                 atoms.col(k) * g_old[c];
    }

    // Best rank-1 factor of e by power iteration on e e^T, warm-started at
    // the current atom (1e-10 relative eigenvalue change, cap 1000).
    Vector v = atoms.col(k);
    double eig = (e.transpose() * v).squaredNorm();
    for (int it = 0; it < 1000; ++it) {
      Vector w = e * (e.transpose() * v);
      const double wn = w.norm();
      if (wn == 0.0) break;
      v = w / wn;
      const double eig_new = (e.transpose() * v).squaredNorm();
      const bool done = std::abs(eig_new - eig) <= 1e-10 * std::max(eig_new, 1e-300);
      eig = eig_new;
      if (done) break;
    }
    if (eig == 0.0) {
      // Start vector orthogonal to the column space; fall back to the
      // largest residual column.
      Index big = 0;
      e.colwise().squaredNorm().maxCoeff(&big);
      const double cn = e.col(big).norm();
      if (cn > 0.0) {
        v = e.col(big) / cn;
        for (int it = 0; it < 1000; ++it) {
          Vector w = e * (e.transpose() * v);
          const double wn = w.norm();
          if (wn == 0.0) break;
          v = w / wn;
          const double eig_new = (e.transpose() * v).squaredNorm();
          const bool done =
              std::abs(eig_new - eig) <= 1e-10 * std::max(eig_new, 1e-300);
          eig = eig_new;
          if (done) break;
        }
      }
    }

    // Keep whichever of (old atom refit, power-iteration atom) explains more
    // energy; both choices leave the Frobenius error non-increasing.
    const double gain_old = (e.transpose() * atoms.col(k)).squaredNorm();
    const double gain_new = (e.transpose() * v).squaredNorm();
    Vector atom = gain_new > gain_old ? v : Vector(atoms.col(k));
    Eigen::RowVectorXd row = (e.transpose() * atom).transpose();
    if (row.squaredNorm() == 0.0) {
      unused.push_back(k);
      for (Index c = 0; c < m; ++c) {
        codes(k, omega[static_cast<size_t>(c)]) = 0.0;
        residual.col(omega[static_cast<size_t>(c)]) = e.col(c);
      }
      continue;
    }
    fix_atom_sign(atom, row);

    atoms.col(k) = atom;
    for (Index c = 0; c < m; ++c) {
      codes(k, omega[static_cast<size_t>(c)]) = row[c];
      residual.col(omega[static_cast<size_t>(c)]) = e.col(c) - atom * row[c];
    }
  }

  // Replace unused atoms with the worst-represented training vectors.
  std::vector<char> taken(static_cast<size_t>(count), 0);
  for (Index k : unused) {
    Index worst = -1;
    double worst_n = -1.0;
    for (Index i = 0; i < count; ++i) {
      if (taken[static_cast<size_t>(i)]) continue;
      const double r = residual.col(i).squaredNorm();
      if (r > worst_n && signals.col(i).norm() > 0.0) {
        worst_n = r;
        worst = i;
      }
    }
    if (worst < 0) continue;  // nothing usable; keep the old atom
    taken[static_cast<size_t>(worst)] = 1;
    Vector atom = signals.col(worst) / signals.col(worst).norm();
    Eigen::RowVectorXd dummy(0);
    fix_atom_sign(atom, dummy);
    atoms.col(k) = atom;
  }

  return residual.norm();
}

}  // namespace detail

std::pair<Dictionary, LearnStats> ksvd_learn(
    const std::vector<Vector>& training, Index num_atoms, int sparsity,
    int iterations, std::uint64_t seed) {
  Matrix y = stack_training(training);
  const Index n = y.rows();
  const Index count = y.cols();
  if (y.colwise().norm().maxCoeff() == 0.0) {
    throw ConfigError("ksvd: training data is identically zero");
  }
  if (count < num_atoms) {
    throw ConfigError("ksvd: fewer training vectors than atoms");
  }
  if (sparsity < 1 || sparsity >= n) {
    throw ConfigError("ksvd: sparsity must satisfy 1 <= T < n");
  }
  if (sparsity > num_atoms) {
    throw ConfigError("ksvd: sparsity exceeds the atom count");
  }
  if (iterations < 1) throw ConfigError("ksvd: iterations must be >= 1");

  Matrix atoms =
      kmeans_learn(training, num_atoms, kKsvdInitKmeansIters, seed).first.matrix();

  LearnStats stats;
  Matrix codes(num_atoms, count);
  const OmpStop stop = OmpStop::sparsity(sparsity);
  for (int iter = 0; iter < iterations; ++iter) {
    for (Index i = 0; i < count; ++i) {
      codes.col(i) = detail::omp_impl(atoms, y.col(i), stop).coefficients;
    }
    const double frob = detail::ksvd_dictionary_update(atoms, codes, y);
    stats.per_iteration_rmse.push_back(frob /
                                       std::sqrt(static_cast<double>(n * count)));
  }
  stats.iterations_run = iterations;

  Dictionary dict = Dictionary::normalized(std::move(atoms));
  stats.final_esr = esr_estimate(dict, training, sparsity);
  return {std::move(dict), std::move(stats)};
}

Dictionary overcomplete_dct(Index dim, Index num_atoms) {
  if (dim < 1) throw ConfigError("overcomplete_dct: dim must be >= 1");
  if (num_atoms < dim) {
    throw ConfigError("overcomplete_dct: need at least as many atoms as dims");
  }
  Matrix atoms(dim, num_atoms);
  for (Index j = 0; j < num_atoms; ++j) {
    for (Index i = 0; i < dim; ++i) {
      atoms(i, j) = std::cos(M_PI * (2.0 * static_cast<double>(i) + 1.0) *
                             static_cast<double>(j) /
                             (2.0 * static_cast<double>(num_atoms)));
    }
  }
  return Dictionary::normalized(std::move(atoms));
}

double coherence(const Dictionary& dict) {
  const Index num_atoms = dict.num_atoms();
  if (num_atoms < 2) throw ConfigError("coherence: need at least two atoms");
  const Matrix gram = dict.matrix().transpose() * dict.matrix();
  double mu = 0.0;
  for (Index i = 0; i < num_atoms; ++i) {
    for (Index j = i + 1; j < num_atoms; ++j) {
      mu = std::max(mu, std::abs(gram(i, j)));
    }
  }
  return std::min(mu, 1.0);
}

double esr_estimate(const Dictionary& dict, const std::vector<Vector>& signals,
                    int sparsity) {
  if (signals.empty()) throw ConfigError("esr_estimate: empty signal set");
  if (sparsity < 1 || sparsity > dict.num_atoms()) {
    throw ConfigError("esr_estimate: sparsity must satisfy 1 <= T <= K");
  }
  const OmpStop stop = OmpStop::sparsity(sparsity);
  double residual2 = 0.0;
  double represented2 = 0.0;
  for (const Vector& y : signals) {
    const SparseCode code = omp(dict, y, stop);
    residual2 += code.residual_norm * code.residual_norm;
    represented2 += (dict.matrix() * code.coefficients).squaredNorm();
  }
  if (represented2 == 0.0) return std::numeric_limits<double>::infinity();
  return residual2 / represented2;
}

}  // namespace ulrs
