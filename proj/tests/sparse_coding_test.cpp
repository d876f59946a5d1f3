// ulrs/tests/sparse_coding_test.cpp

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

#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "helpers.hpp"

using namespace ulrs;

namespace {

Dictionary three_atom_dict() {
  Matrix m(2, 3);
  m.col(0) << 1, 0;
  m.col(1) << 0, 1;
  m.col(2) << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return Dictionary(m);
}

Dictionary identity_dict(Index n) {
  return Dictionary(Matrix::Identity(n, n));
}

void check_code_invariants(const Dictionary& d, const Vector& y,
                           const SparseCode& code) {
  std::set<Index> support(code.support.begin(), code.support.end());
  Index nonzeros = 0;
  for (Index j = 0; j < code.coefficients.size(); ++j) {
    if (code.coefficients[j] != 0.0) {
      ++nonzeros;
      CHECK(support.count(j) == 1);
    } else {
      CHECK(support.count(j) == 0);
    }
  }
  CHECK(nonzeros == code.l0_norm());
  const double recomputed = (y - d.matrix() * code.coefficients).norm();
  CHECK(std::abs(recomputed - code.residual_norm) <=
        1e-9 * std::max(1.0, recomputed));
}

}  // namespace

TEST_CASE("omp picks the matching atom for atom-aligned signals") {
  const Dictionary d = three_atom_dict();

  Vector y(2);
  y << 0, 2;
  SparseCode code = omp(d, y, OmpStop::sparsity(1));
  REQUIRE(code.support == std::vector<Index>{1});
  CHECK(code.coefficients[1] == doctest::Approx(2.0));
  CHECK(code.residual_norm == doctest::Approx(0.0).epsilon(1e-12));
  check_code_invariants(d, y, code);

  Vector y2 = 3.0 * d.atom(2);
  code = omp(d, y2, OmpStop::sparsity(1));
  REQUIRE(code.support == std::vector<Index>{2});
  CHECK(code.coefficients[2] == doctest::Approx(3.0));
  CHECK(code.residual_norm <= 1e-12);
}

TEST_CASE("omp with one atom is the matched filter bank") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Dictionary d(test::random_unit_atoms(6, 10, 100 + seed));
    const Vector y = test::random_vector(6, 500 + seed);
    const SparseCode code = omp(d, y, OmpStop::sparsity(1));
    REQUIRE(code.support.size() == 1);
    Index best = 0;
    double best_abs = 0.0;
    const Vector corr = d.matrix().transpose() * y;
    for (Index j = 0; j < d.num_atoms(); ++j) {
      if (std::abs(corr[j]) > best_abs) {
        best_abs = std::abs(corr[j]);
        best = j;
      }
    }
    CHECK(code.support[0] == best);
    CHECK(code.coefficients[best] == doctest::Approx(corr[best]));
  }
}

TEST_CASE("omp correlation ties break toward the lowest atom index") {
  Matrix m(2, 2);
  m.col(0) << 1, 0;
  m.col(1) << 0, 1;
  const Dictionary d(m);
  Vector y(2);
  y << 1, 1;  // equal correlation with both atoms
  const SparseCode code = omp(d, y, OmpStop::sparsity(1));
  REQUIRE(code.support == std::vector<Index>{0});
}

TEST_CASE("omp residual shrinks with the sparsity budget and stays orthogonal") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Dictionary d(test::random_unit_atoms(12, 20, 40 + seed));
    const Vector y = test::random_vector(12, 70 + seed);
    double prev = y.norm();
    for (Index t = 1; t <= 8; ++t) {
      const SparseCode code = omp(d, y, OmpStop::sparsity(t));
      CHECK(code.residual_norm <= prev + 1e-12);
      prev = code.residual_norm;
      const Vector residual = y - d.matrix() * code.coefficients;
      for (Index j : code.support) {
        CHECK(std::abs(d.atom(j).dot(residual)) <= 1e-8 * std::max(1.0, y.norm()));
      }
      check_code_invariants(d, y, code);
    }
  }
}

TEST_CASE("omp recovers planted supports on a low-coherence dictionary") {
  const Dictionary d = test::low_coherence_dictionary(8, 12, 0.32, 7);
  REQUIRE(coherence(d) * 3 < 1.0);  // exact-recovery regime for T = 2
  std::mt19937_64 engine(11);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<Index> pick(0, 11);

  for (int rep = 0; rep < 50; ++rep) {
    Index a = pick(engine);
    Index b = pick(engine);
    while (b == a) b = pick(engine);
    Vector coeffs = Vector::Zero(12);
    coeffs[a] = normal(engine);
    coeffs[b] = normal(engine);
    const Vector y = d.matrix() * coeffs;
    const SparseCode greedy = omp(d, y, OmpStop::sparsity(2));
    std::set<Index> expect{a, b};
    std::set<Index> got(greedy.support.begin(), greedy.support.end());
    CHECK(got == expect);
    CHECK(greedy.residual_norm <= 1e-9 * std::max(1.0, y.norm()));

    const SparseCode oracle = exhaustive_sparse(d, y, 2);
    CHECK(oracle.residual_norm <= greedy.residual_norm + 1e-12);
  }
}

TEST_CASE("omp residual-driven stop keeps adding atoms until the target") {
  const Dictionary d(test::random_unit_atoms(10, 30, 3));
  const Vector y = test::random_vector(10, 4);
  const SparseCode code = omp(d, y, OmpStop::residual(0.3 * y.norm()));
  CHECK(code.residual_norm <= 0.3 * y.norm());
  const SparseCode tighter = omp(d, y, OmpStop::residual(0.05 * y.norm()));
  CHECK(tighter.residual_norm <= 0.05 * y.norm());
  CHECK(tighter.l0_norm() >= code.l0_norm());
}

TEST_CASE("omp rejects bad inputs") {
  const Dictionary d = three_atom_dict();
  CHECK_THROWS_AS(omp(d, test::random_vector(3, 1), OmpStop::sparsity(1)),
                  DimensionError);
  CHECK_THROWS_AS(omp(d, test::random_vector(2, 1), OmpStop::sparsity(4)),
                  ConfigError);
}

TEST_CASE("omp flags a numerically singular atom selection") {
  Matrix m(4, 2);
  Vector base = test::random_vector(4, 9).normalized();
  Vector bump = test::random_vector(4, 10);
  m.col(0) = base;
  m.col(1) = (base + 1e-9 * bump).normalized();
  const Dictionary d(m);
  const Vector y = m.col(0) + m.col(1);
  CHECK_THROWS_AS(omp(d, y, OmpStop::sparsity(2)), SolverError);
}

TEST_CASE("least squares matches the hand-solved normal equations") {
  Matrix m(2, 2);
  m.col(0) << 1, 0;
  m.col(1) << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const Dictionary d(m);
  Vector y(2);
  y << 1, 2;
  const Vector x = least_squares(d, y);
  // By hand: gram = [[1, 1/sqrt2], [1/sqrt2, 1]], rhs = [1, 3/sqrt2],
  // solution (-1, 2*sqrt2).
  CHECK(x[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(x[1] == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));

  const Vector residual = y - m * x;
  for (Index j = 0; j < 2; ++j) {
    CHECK(std::abs(m.col(j).dot(residual)) <= 1e-8);
  }
}

TEST_CASE("least squares on an orthonormal dictionary is a correlation") {
  const Dictionary d = identity_dict(4);
  const Vector y = test::random_vector(4, 21);
  const Vector x = least_squares(d, y);
  CHECK((x - y).norm() <= 1e-12);
  CHECK(least_squares(d, Vector::Zero(4)).norm() == 0.0);
}

TEST_CASE("least squares refuses rank-deficient dictionaries") {
  Matrix m(3, 2);
  Vector a = test::random_vector(3, 33).normalized();
  m.col(0) = a;
  m.col(1) = a;
  CHECK_THROWS_AS(least_squares(Dictionary(m), test::random_vector(3, 34)),
                  RankError);
  // More atoms than dimensions can never be full column rank.
  const Dictionary wide(test::random_unit_atoms(3, 5, 35));
  CHECK_THROWS_AS(least_squares(wide, test::random_vector(3, 36)), RankError);
}

TEST_CASE("ridge shrinks toward zero and reduces to least squares") {
  const Dictionary d(test::random_unit_atoms(6, 4, 50));
  const Vector y = test::random_vector(6, 51);
  CHECK((ridge(d, y, 0.0) - least_squares(d, y)).norm() <= 1e-10);

  const Dictionary scalar(Matrix::Identity(1, 1));
  Vector one(1);
  one << 1;
  CHECK(ridge(scalar, one, 1.0)[0] == doctest::Approx(0.5));

  for (double lambda : {0.1, 1.0, 10.0}) {
    const Vector x = ridge(d, y, lambda);
    CHECK(x.norm() <= (d.matrix().transpose() * y).norm() / lambda + 1e-12);
  }
}

TEST_CASE("l1 solver returns zero above the critical penalty") {
  const Dictionary d(test::random_unit_atoms(8, 16, 60));
  const Vector y = test::random_vector(8, 61);
  const double critical = 2.0 * (d.matrix().transpose() * y).lpNorm<Eigen::Infinity>();
  const SparseCode code = l1_solve(d, y, critical * 1.0001);
  CHECK(code.coefficients.norm() == 0.0);
  CHECK(code.support.empty());
  CHECK(code.residual_norm == doctest::Approx(y.norm()));
}

TEST_CASE("l1 solver soft-thresholds the scalar case") {
  const Dictionary d(Matrix::Identity(1, 1));
  Vector y(1);
  y << 3;
  const SparseCode code = l1_solve(d, y, 2.0);
  CHECK(code.coefficients[0] == doctest::Approx(2.0));  // |y| - lambda/2
}

TEST_CASE("l1 solver meets the KKT conditions on random instances") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const Dictionary d(test::random_unit_atoms(10, 20, 300 + seed));
    const Vector y = test::random_vector(10, 400 + seed);
    SolverConfig cfg;
    cfg.convergence_tol = 1e-10;
    const SparseCode code = l1_solve(d, y, 0.2, cfg);
    CHECK(l1_kkt_residual(d.matrix(), y, code.coefficients, 0.2) <= 1e-8);
    check_code_invariants(d, y, code);
  }
}

TEST_CASE("l1 objective never increases across sweeps") {
  const Dictionary d(test::random_unit_atoms(12, 24, 77));
  const Vector y = test::random_vector(12, 78);
  std::vector<double> trace;
  l1_solve(d.matrix(), y, 0.15, SolverConfig{}, &trace);
  REQUIRE(!trace.empty());
  for (size_t i = 1; i < trace.size(); ++i) {
    CHECK(trace[i] <= trace[i - 1] + 1e-9 * std::max(1.0, trace.front()));
  }
}

TEST_CASE("l1 solver reports non-convergence with the last objective") {
  const Dictionary d(test::random_unit_atoms(10, 20, 90));
  const Vector y = 10.0 * test::random_vector(10, 91);
  SolverConfig cfg;
  cfg.max_iterations = 1;
  cfg.convergence_tol = 1e-14;
  try {
    l1_solve(d, y, 1e-6, cfg);
    FAIL("expected SolverError");
  } catch (const SolverError& e) {
    CHECK(e.has_last_objective());
    CHECK(e.last_objective() >= 0.0);
  }
}

TEST_CASE("robust solve equals the l1 path on the extended matrix bit for bit") {
  const Dictionary d(test::random_unit_atoms(8, 12, 101));
  const Vector y = test::random_vector(8, 102);
  const double rho = 0.3;
  const double lambda = 0.15;

  Matrix extended(8, 12 + 8);
  extended.leftCols(12) = d.matrix();
  extended.rightCols(8) = (rho / lambda) * Matrix::Identity(8, 8);
  const SparseCode z = l1_solve(extended, y, rho);

  const RobustFit fit = robust_solve(d, y, rho, lambda);
  CHECK(fit.code.coefficients == z.coefficients.head(12));
  CHECK(fit.error == z.coefficients.tail(8));
}

TEST_CASE("robust solve ignores clean data and catches a planted spike") {
  const Dictionary d(test::random_unit_atoms(12, 18, 110));
  Vector coeffs = Vector::Zero(18);
  coeffs[3] = 1.5;
  coeffs[11] = -1.0;
  const Vector clean = d.matrix() * coeffs;
  const double rho = 0.05;
  const double lambda = 0.4;

  const RobustFit clean_fit = robust_solve(d, clean, rho, lambda);
  CHECK(clean_fit.error.lpNorm<Eigen::Infinity>() <= 1e-6 * clean.norm());
  const SparseCode plain = l1_solve(d, clean, rho);
  CHECK(clean_fit.code.support == plain.support);

  Vector spiked = clean;
  const Index where = 7;
  spiked[where] += 10.0 * clean.lpNorm<Eigen::Infinity>();
  const RobustFit spike_fit = robust_solve(d, spiked, rho, lambda);
  Index peak = 0;
  spike_fit.error.cwiseAbs().maxCoeff(&peak);
  CHECK(peak == where);

  const RobustFit crushed = robust_solve(d, spiked, 1e6, lambda);
  CHECK(crushed.code.coefficients.norm() == 0.0);
  CHECK(crushed.error.norm() == 0.0);
}

TEST_CASE("exhaustive search is the l0 oracle") {
  const Dictionary d = identity_dict(2);
  Vector y(2);
  y << 3, 1;

  const SparseCode empty = exhaustive_sparse(d, y, 0);
  CHECK(empty.support.empty());
  CHECK(empty.residual_norm == doctest::Approx(y.norm()));

  const SparseCode one = exhaustive_sparse(d, y, 1);
  REQUIRE(one.support == std::vector<Index>{0});
  CHECK(one.coefficients[0] == doctest::Approx(3.0));
  CHECK(one.residual_norm == doctest::Approx(1.0));

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Dictionary rd(test::random_unit_atoms(6, 10, 200 + seed));
    const Vector ry = test::random_vector(6, 250 + seed);
    for (Index t = 0; t <= 3; ++t) {
      const SparseCode oracle = exhaustive_sparse(rd, ry, t);
      const SparseCode greedy = omp(rd, ry, OmpStop::sparsity(std::max<Index>(t, 1)));
      if (t >= 1) CHECK(oracle.residual_norm <= greedy.residual_norm + 1e-12);
      check_code_invariants(rd, ry, oracle);
    }
  }
}

TEST_CASE("exhaustive search enforces its combinatorial budget") {
  const Dictionary d(test::random_unit_atoms(10, 50, 5));
  CHECK_THROWS_AS(exhaustive_sparse(d, test::random_vector(10, 6), 10),
                  ConfigError);
}

TEST_CASE("solvers are pure functions") {
  const Dictionary d(test::random_unit_atoms(10, 15, 1000));
  const Vector y = test::random_vector(10, 1001);
  const SparseCode a = omp(d, y, OmpStop::sparsity(4));
  const SparseCode b = omp(d, y, OmpStop::sparsity(4));
  CHECK(a.coefficients == b.coefficients);
  CHECK(a.support == b.support);
  const SparseCode la = l1_solve(d, y, 0.2);
  const SparseCode lb = l1_solve(d, y, 0.2);
  CHECK(la.coefficients == lb.coefficients);
}
