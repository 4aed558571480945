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

#include "mpsh/matrix.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace mpsh {

namespace {

std::atomic<double>& tol_storage() {
  static std::atomic<double> tol = [] {
    if (const char* env = std::getenv("MPSH_TOL")) {
      char* end = nullptr;
      const double v = std::strtod(env, &end);
      if (end != env && std::isfinite(v) && v > 0.0) return v;
    }
    return 1e-10;
  }();
  return tol;
}

}  // namespace

double default_tol() { return tol_storage().load(); }

void set_default_tol(double tol) {
  if (!(std::isfinite(tol) && tol > 0.0)) {
    throw InputError("default tolerance must be positive and finite");
  }
  tol_storage().store(tol);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Complex trace(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) {
    std::ostringstream msg;
    msg << "trace requires a square matrix, got " << a.rows() << "x" << a.cols();
    throw InputError(msg.str());
  }
  return a.trace();
}

ComplexMatrix partial_trace_tail(const ComplexMatrix& x, int keep,
                                 const std::vector<int>& dims) {
  if (keep < 0 || static_cast<std::size_t>(keep) > dims.size()) {
    throw InputError("partial_trace_tail: keep outside [0, #factors]");
  }
  long head_dim = 1, tail_dim = 1;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (dims[k] <= 0) throw InputError("partial_trace_tail: factor dims must be positive");
    (static_cast<int>(k) < keep ? head_dim : tail_dim) *= dims[k];
  }
  if (x.rows() != x.cols() || x.rows() != head_dim * tail_dim) {
    std::ostringstream msg;
    msg << "partial_trace_tail: matrix is " << x.rows() << "x" << x.cols()
        << " but factor dims give " << head_dim * tail_dim;
    throw InputError(msg.str());
  }
  ComplexMatrix out = ComplexMatrix::Zero(head_dim, head_dim);
  for (long i = 0; i < head_dim; ++i) {
    for (long j = 0; j < head_dim; ++j) {
      Complex acc(0.0, 0.0);
      for (long t = 0; t < tail_dim; ++t) {
        acc += x(i * tail_dim + t, j * tail_dim + t);
      }
      out(i, j) = acc;
    }
  }
  return out;
}

HermitianDecomposition positive_negative_parts(const ComplexMatrix& h, double tol) {
  if (!is_hermitian(h, tol)) {
    throw InputError("positive_negative_parts requires a Hermitian matrix");
  }
  const HermitianEigen eig = eig_hermitian(h, tol);
  const Eigen::Index n = h.rows();
  HermitianDecomposition parts{ComplexMatrix::Zero(n, n), ComplexMatrix::Zero(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    const double lambda = eig.values(k);
    const ComplexMatrix projector =
        eig.vectors.col(k) * eig.vectors.col(k).adjoint();
    if (lambda > 0.0) {
      parts.positive_part += lambda * projector;
    } else if (lambda < 0.0) {
      parts.negative_part += (-lambda) * projector;
    }
  }
  return parts;
}

double tv_norm(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw InputError("tv_norm requires a square matrix");
  }
  const ComplexMatrix re = 0.5 * (m + m.adjoint());
  const ComplexMatrix im = (m - m.adjoint()) / Complex(0.0, 2.0);
  // Trace norm of a Hermitian matrix is the absolute eigenvalue sum; the
  // large Hermiticity tolerance below only guards against NaN inputs since
  // re/im are Hermitian by construction.
  double total = 0.0;
  for (const ComplexMatrix* part : {&re, &im}) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(*part,
                                                        Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
      throw NumericalError("tv_norm: eigenvalue computation failed");
    }
    total += solver.eigenvalues().cwiseAbs().sum();
  }
  return total;
}

HermitianEigen eig_hermitian(const ComplexMatrix& h, double tol) {
  if (!is_hermitian(h, tol)) {
    throw InputError("eig_hermitian requires a Hermitian matrix");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eig_hermitian: solver did not converge");
  }
  const Eigen::Index n = h.rows();
  HermitianEigen out{RealVector(n), ComplexMatrix(n, n)};
  // Eigen returns ascending eigenvalues; we report descending.
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = solver.eigenvalues()(n - 1 - k);
    out.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  }
  return out;
}

GeneralEigen eig_general(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw InputError("eig_general requires a square matrix");
  }
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(m);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eig_general: solver did not converge");
  }
  const Eigen::Index n = m.rows();
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return std::abs(solver.eigenvalues()(a)) > std::abs(solver.eigenvalues()(b));
  });
  GeneralEigen out{ComplexVector(n), ComplexMatrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = solver.eigenvalues()(order[k]);
    out.vectors.col(k) = solver.eigenvectors().col(order[k]);
  }
  return out;
}

ComplexMatrix matrix_unit(int dim, int k, int l) {
  if (dim <= 0 || k < 0 || l < 0 || k >= dim || l >= dim) {
    throw InputError("matrix_unit: index outside [0, dim)");
  }
  ComplexMatrix e = ComplexMatrix::Zero(dim, dim);
  e(k, l) = Complex(1.0, 0.0);
  return e;
}

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return max_abs(a - b) <= tol;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - m.adjoint()) <= tol;
}

void ensure_finite(const ComplexMatrix& m, const char* context) {
  if (!m.allFinite()) {
    throw InputError(std::string(context) + ": non-finite entries");
  }
}

}  // namespace mpsh
