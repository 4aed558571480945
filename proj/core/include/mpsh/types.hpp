// Copyright 2026 mpsh authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace mpsh {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Global absolute tolerance for equality/PSD checks. Defaults to 1e-10 and
// may be overridden once per process through the MPSH_TOL environment
// variable; set_default_tol takes precedence over both.
double default_tol();
void set_default_tol(double tol);

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Shape/validation problems in caller-supplied data (non-square matrix,
// dimension mismatch, parameter out of range, malformed file content).
class InputError : public Error {
 public:
  using Error::Error;
};

// A brute-force evaluation would exceed the configured work cap.
class CapExceededError : public Error {
 public:
  using Error::Error;
};

// Numerical breakdown: eigensolver non-convergence, lost cross-route
// agreement, vanishing normalization encountered mid-computation.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// The chain normalization N(n) is numerically zero.
class DegenerateChainError : public Error {
 public:
  using Error::Error;
};

// Eigenvalue 1 of a channel is degenerate: no unique fixed point.
class DegenerateFixedSpaceError : public Error {
 public:
  using Error::Error;
};

// A Markov-Dobrushin certificate with positive trace is unavailable.
class NoErgodicityCertificateError : public Error {
 public:
  using Error::Error;
};

}  // namespace mpsh
