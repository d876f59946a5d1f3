// ulrs/types.hpp

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

#ifndef ULRS_TYPES_HPP
#define ULRS_TYPES_HPP

#include <Eigen/Core>
#include <stdexcept>
#include <string>

namespace ulrs {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input sizes do not match (signal length vs. dictionary dimension, ...).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A matrix required to have full rank (or to be positive definite) is not.
class RankError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration value or violated operation precondition.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Iterative solver failed (non-convergence, ill-conditioned subproblem).
/// Carries the last objective value when one is available.
class SolverError : public Error {
 public:
  explicit SolverError(const std::string& msg) : Error(msg) {}
  SolverError(const std::string& msg, double last_objective)
      : Error(msg), last_objective_(last_objective), has_objective_(true) {}

  bool has_last_objective() const { return has_objective_; }
  double last_objective() const { return last_objective_; }

 private:
  double last_objective_ = 0.0;
  bool has_objective_ = false;
};

/// File parsing / serialization failure.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace ulrs

#endif  // ULRS_TYPES_HPP
