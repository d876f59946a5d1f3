// ulrs/tests/dictionary_test.cpp

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

#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "helpers.hpp"
#include "ulrs/sparse_coding.hpp"

using namespace ulrs;

namespace {

/// Training set planted as exactly T-sparse combinations of a hidden
/// unit-norm dictionary.
std::vector<Vector> planted_training(const Matrix& hidden, int sparsity,
                                     int count, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<Index> pick(0, hidden.cols() - 1);
  std::vector<Vector> out;
  out.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    std::set<Index> support;
    while (static_cast<int>(support.size()) < sparsity) support.insert(pick(engine));
    Vector y = Vector::Zero(hidden.rows());
    for (Index j : support) y += normal(engine) * hidden.col(j);
    out.push_back(std::move(y));
  }
  return out;
}

double data_rms(const std::vector<Vector>& data) {
  double acc = 0.0;
  Index entries = 0;
  for (const Vector& v : data) {
    acc += v.squaredNorm();
    entries += v.size();
  }
  return std::sqrt(acc / static_cast<double>(entries));
}

}  // namespace

TEST_CASE("dictionary construction enforces its invariants") {
  Matrix bad(2, 1);
  bad << 1, 1;  // norm sqrt(2)
  CHECK_THROWS_AS(Dictionary{bad}, ConfigError);
  CHECK_NOTHROW(Dictionary::normalized(bad));

  Matrix nan(2, 1);
  nan << std::nan(""), 0;
  CHECK_THROWS_AS(Dictionary::normalized(nan), ConfigError);

  Matrix zero = Matrix::Zero(3, 2);
  CHECK_THROWS_AS(Dictionary::normalized(zero), ConfigError);
}

TEST_CASE("kmeans finds two well-separated cluster directions") {
  std::mt19937_64 engine(5);
  std::normal_distribution<double> normal(0.0, 0.01);
  Vector c1 = test::random_vector(6, 1).normalized();
  Vector c2 = test::random_vector(6, 2).normalized();
  std::vector<Vector> training;
  for (int i = 0; i < 60; ++i) {
    Vector base = (i % 2 == 0) ? c1 : c2;
    Vector noise(6);
    for (Index k = 0; k < 6; ++k) noise[k] = normal(engine);
    training.push_back(3.0 * base + noise);
  }
  const auto [dict, stats] = kmeans_learn(training, 2, 20, 3);
  for (const Vector& target : {c1, c2}) {
    double best = 2.0;
    for (Index j = 0; j < 2; ++j) {
      const double angle = std::acos(std::min(1.0, std::abs(dict.atom(j).dot(target))));
      best = std::min(best, angle);
    }
    CHECK(best <= 1e-3);
  }
  CHECK(stats.iterations_run == 20);
}

TEST_CASE("kmeans with one centroid is the global mean direction") {
  std::vector<Vector> training;
  for (int i = 0; i < 10; ++i) {
    training.push_back(test::random_vector(5, 10 + i) + Vector::Constant(5, 4.0));
  }
  Vector mean = Vector::Zero(5);
  for (const Vector& v : training) mean += v;
  mean /= 10.0;
  const auto [dict, stats] = kmeans_learn(training, 1, 5, 0);
  CHECK((dict.atom(0) - mean.normalized()).norm() <= 1e-12);
}

TEST_CASE("kmeans clustering error never increases") {
  std::vector<Vector> training;
  for (int i = 0; i < 200; ++i) training.push_back(test::random_vector(8, 900 + i));
  const auto [dict, stats] = kmeans_learn(training, 12, 25, 4);
  REQUIRE(stats.per_iteration_rmse.size() == 25);
  for (size_t i = 1; i < stats.per_iteration_rmse.size(); ++i) {
    CHECK(stats.per_iteration_rmse[i] <= stats.per_iteration_rmse[i - 1] + 1e-12);
  }
  for (double r : stats.per_iteration_rmse) {
    CHECK(std::isfinite(r));
    CHECK(r >= 0.0);
  }
}

TEST_CASE("kmeans survives duplicate-heavy data via farthest-point reseeding") {
  std::vector<Vector> training(20, Vector::Constant(4, 1.0));
  training.push_back(Vector::Constant(4, -3.0));
  training.push_back(2.0 * test::random_vector(4, 77));
  Dictionary dict = kmeans_learn(training, 3, 10, 1).first;
  for (Index j = 0; j < dict.num_atoms(); ++j) {
    CHECK(dict.atom(j).norm() == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("ksvd dictionary-update stage never increases the fit error") {
  const Matrix hidden = test::random_unit_atoms(12, 20, 42);
  const std::vector<Vector> training = planted_training(hidden, 3, 200, 43);
  Matrix y(12, 200);
  for (int i = 0; i < 200; ++i) y.col(i) = training[static_cast<size_t>(i)];

  Matrix atoms = test::random_unit_atoms(12, 20, 44);
  Matrix codes(20, 200);
  for (Index i = 0; i < 200; ++i) {
    codes.col(i) = detail::omp_impl(atoms, y.col(i), OmpStop::sparsity(3)).coefficients;
  }
  const double before = (y - atoms * codes).norm();
  const double after = detail::ksvd_dictionary_update(atoms, codes, y);
  CHECK(after <= before + 1e-9);
  const double again = detail::ksvd_dictionary_update(atoms, codes, y);
  CHECK(again <= after + 1e-9);
  for (Index j = 0; j < atoms.cols(); ++j) {
    CHECK(atoms.col(j).norm() == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("ksvd learns a planted union-of-subspaces model") {
  const Matrix hidden = test::random_unit_atoms(24, 50, 1234);
  const std::vector<Vector> training = planted_training(hidden, 2, 2000, 1235);
  const auto [dict, stats] = ksvd_learn(training, 50, 2, 30, 7);
  REQUIRE(stats.per_iteration_rmse.size() == 30);
  double best = stats.per_iteration_rmse.front();
  for (double r : stats.per_iteration_rmse) best = std::min(best, r);
  CHECK(best <= 1e-3 * data_rms(training));
  for (Index j = 0; j < dict.num_atoms(); ++j) {
    CHECK(dict.atom(j).norm() == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("ksvd beats kmeans on the same data at the same size") {
  const Matrix hidden = test::random_unit_atoms(16, 30, 555);
  const std::vector<Vector> training = planted_training(hidden, 3, 600, 556);
  const auto kmeans_rmse =
      kmeans_learn(training, 30, 20, 9).second.per_iteration_rmse.back();
  const auto ksvd_rmse =
      ksvd_learn(training, 30, 3, 20, 9).second.per_iteration_rmse.back();
  CHECK(ksvd_rmse <= kmeans_rmse);
}

TEST_CASE("ksvd rejects degenerate input") {
  std::vector<Vector> zeros(30, Vector::Zero(8));
  CHECK_THROWS_AS(ksvd_learn(zeros, 4, 2, 5, 0), ConfigError);
  std::vector<Vector> ok(30, Vector::Constant(8, 1.0));
  CHECK_THROWS_AS(ksvd_learn(ok, 4, 8, 5, 0), ConfigError);  // T >= n
}

TEST_CASE("learning is deterministic in the seed") {
  const Matrix hidden = test::random_unit_atoms(10, 16, 31);
  const std::vector<Vector> training = planted_training(hidden, 2, 150, 32);
  const Matrix a = ksvd_learn(training, 16, 2, 8, 21).first.matrix();
  const Matrix b = ksvd_learn(training, 16, 2, 8, 21).first.matrix();
  CHECK(a == b);
  const Matrix c = kmeans_learn(training, 16, 8, 21).first.matrix();
  const Matrix d = kmeans_learn(training, 16, 8, 21).first.matrix();
  CHECK(c == d);
}

TEST_CASE("sampled-cosine dictionary is orthonormal exactly at K = n") {
  const Dictionary square = overcomplete_dct(8, 8);
  CHECK(coherence(square) < 1e-12);
  const Dictionary wide = overcomplete_dct(8, 16);
  const double mu = coherence(wide);
  CHECK(mu > 0.0);
  CHECK(mu < 1.0);
  for (Index j = 0; j < wide.num_atoms(); ++j) {
    CHECK(wide.atom(j).norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(overcomplete_dct(8, 4), ConfigError);
}

TEST_CASE("coherence matches hand values") {
  CHECK_THROWS_AS(coherence(Dictionary(Matrix::Identity(3, 1))), ConfigError);
  CHECK(coherence(Dictionary(Matrix::Identity(4, 4))) == doctest::Approx(0.0));

  Matrix dup(3, 2);
  dup.col(0) = test::random_vector(3, 8).normalized();
  dup.col(1) = dup.col(0);
  CHECK(coherence(Dictionary(dup)) == doctest::Approx(1.0));

  Matrix angled(2, 2);
  angled.col(0) << 1, 0;
  angled.col(1) << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  CHECK(coherence(Dictionary(angled)) ==
        doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-12));
}

TEST_CASE("esr estimate agrees with a two-signal hand computation") {
  const Dictionary d(Matrix::Identity(2, 2));
  std::vector<Vector> signals(2, Vector(2));
  signals[0] << 1, 1;  // codes to atom 0, residual 1, represented 1
  signals[1] << 1, 0;  // exact, residual 0, represented 1
  CHECK(esr_estimate(d, signals, 1) == doctest::Approx(0.5));
}

TEST_CASE("esr estimate is zero for representable signals and monotone in T") {
  const Dictionary d = overcomplete_dct(8, 8);
  std::vector<Vector> sparse_signals;
  std::mt19937_64 engine(64);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    Vector coeffs = Vector::Zero(8);
    coeffs[static_cast<Index>(i % 8)] = normal(engine);
    coeffs[static_cast<Index>((i + 3) % 8)] = normal(engine);
    sparse_signals.push_back(d.matrix() * coeffs);
  }
  CHECK(esr_estimate(d, sparse_signals, 2) <= 1e-12);

  const Dictionary rd(test::random_unit_atoms(10, 20, 90));
  std::vector<Vector> noisy;
  for (int i = 0; i < 30; ++i) noisy.push_back(test::random_vector(10, 700 + i));
  double prev = std::numeric_limits<double>::infinity();
  for (int t = 1; t <= 8; ++t) {
    const double esr = esr_estimate(rd, noisy, t);
    CHECK(esr <= prev + 1e-12);
    prev = esr;
  }
}

TEST_CASE("esr estimate reports infinite mismatch for unrepresentable input") {
  const Dictionary d(Matrix::Identity(3, 3));
  std::vector<Vector> zeros(4, Vector::Zero(3));
  CHECK(std::isinf(esr_estimate(d, zeros, 1)));
  CHECK_THROWS_AS(esr_estimate(d, {}, 1), ConfigError);
}
