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

#include "mpsh/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mpsh/random.hpp"

namespace mpsh {

namespace {

// Seed for the deterministic sphere grid in dimensions > 2.
constexpr std::uint64_t kSphereSeed = 0x6d707368u;  // "mpsh"

double lambda_min_on_pure_state(const SuperOperator& phi, const ComplexVector& xi) {
  const ComplexMatrix out = phi(xi * xi.adjoint());
  const ComplexMatrix herm = 0.5 * (out + out.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("md_sphere_search: eigenvalue computation failed");
  }
  return solver.eigenvalues().minCoeff();
}

}  // namespace

KrausFamily::KrausFamily(int dim_in, KrausConvention convention_in,
                         std::vector<ComplexMatrix> operators_in)
    : dim(dim_in), convention(convention_in), operators(std::move(operators_in)) {
  if (dim <= 0) throw InputError("KrausFamily: dim must be positive");
  if (operators.empty()) throw InputError("KrausFamily: needs at least one operator");
  for (const ComplexMatrix& a : operators) {
    if (a.rows() != dim || a.cols() != dim) {
      std::ostringstream msg;
      msg << "KrausFamily: operator is " << a.rows() << "x" << a.cols()
          << ", expected " << dim << "x" << dim;
      throw InputError(msg.str());
    }
    ensure_finite(a, "KrausFamily");
  }
}

ComplexVector vec(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw InputError("vec requires a square matrix");
  // Eigen stores column-major, so the raw buffer is already the
  // column-stacked vector.
  return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

ComplexMatrix unvec(const ComplexVector& v, int dim) {
  if (v.size() != static_cast<Eigen::Index>(dim) * dim) {
    throw InputError("unvec: length does not match dim^2");
  }
  return Eigen::Map<const ComplexMatrix>(v.data(), dim, dim);
}

SuperOperator::SuperOperator(int dim, ComplexMatrix matrix)
    : dim_(dim), matrix_(std::move(matrix)) {
  if (dim_ <= 0) throw InputError("SuperOperator: dim must be positive");
  const Eigen::Index d2 = static_cast<Eigen::Index>(dim_) * dim_;
  if (matrix_.rows() != d2 || matrix_.cols() != d2) {
    throw InputError("SuperOperator: matrix must be dim^2 x dim^2");
  }
  ensure_finite(matrix_, "SuperOperator");
}

SuperOperator SuperOperator::identity_map(int dim) {
  const Eigen::Index d2 = static_cast<Eigen::Index>(dim) * dim;
  return SuperOperator(dim, ComplexMatrix::Identity(d2, d2));
}

ComplexMatrix SuperOperator::operator()(const ComplexMatrix& m) const {
  if (m.rows() != dim_ || m.cols() != dim_) {
    throw InputError("SuperOperator: operand dimension mismatch");
  }
  return unvec(matrix_ * vec(m), dim_);
}

SuperOperator from_kraus(const KrausFamily& family) {
  const Eigen::Index d2 = static_cast<Eigen::Index>(family.dim) * family.dim;
  ComplexMatrix m = ComplexMatrix::Zero(d2, d2);
  for (const ComplexMatrix& a : family.operators) {
    if (family.convention == KrausConvention::schrodinger) {
      // M -> A M A†, i.e. (A†)^T ⊗ A = conj(A) ⊗ A.
      m += kron(a.conjugate(), a);
    } else {
      // M -> A† M A, i.e. A^T ⊗ A†.
      m += kron(a.transpose(), a.adjoint());
    }
  }
  return SuperOperator(family.dim, std::move(m));
}

ComplexMatrix apply(const SuperOperator& phi, const ComplexMatrix& m) {
  return phi(m);
}

SuperOperator compose(const SuperOperator& f, const SuperOperator& g) {
  if (f.dim() != g.dim()) throw InputError("compose: dimension mismatch");
  return SuperOperator(f.dim(), f.matrix() * g.matrix());
}

Complex superop_trace(const SuperOperator& phi) {
  const int d = phi.dim();
  Complex by_definition(0.0, 0.0);
  for (int k = 0; k < d; ++k) {
    for (int l = 0; l < d; ++l) {
      by_definition += phi(matrix_unit(d, k, l))(k, l);
    }
  }
  const Complex by_matrix = phi.matrix().trace();
  const double scale = std::max(1.0, std::abs(by_matrix));
  if (std::abs(by_definition - by_matrix) > 1e-12 * scale) {
    throw NumericalError(
        "superop_trace: definition and matrix-trace routes disagree");
  }
  return by_matrix;
}

ComplexMatrix choi_matrix(const SuperOperator& phi) {
  const int d = phi.dim();
  const Eigen::Index d2 = static_cast<Eigen::Index>(d) * d;
  ComplexMatrix choi = ComplexMatrix::Zero(d2, d2);
  for (int k = 0; k < d; ++k) {
    for (int l = 0; l < d; ++l) {
      const ComplexMatrix e = matrix_unit(d, k, l);
      choi += kron(e, phi(e));
    }
  }
  return choi;
}

CptpReport is_cptp(const KrausFamily& family, double tol) {
  const int d = family.dim;
  ComplexMatrix completeness = ComplexMatrix::Zero(d, d);
  ComplexMatrix gauge = ComplexMatrix::Zero(d, d);
  for (const ComplexMatrix& a : family.operators) {
    completeness += a.adjoint() * a;
    gauge += a * a.adjoint();
  }
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);

  CptpReport report;
  report.completeness_violation = max_abs(completeness - id);
  report.gauge_violation = max_abs(gauge - id);
  report.trace_preserving = report.completeness_violation <= tol;

  const ComplexMatrix choi = choi_matrix(from_kraus(family));
  const ComplexMatrix herm = 0.5 * (choi + choi.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("is_cptp: Choi eigenvalue computation failed");
  }
  report.choi_min_eigenvalue = solver.eigenvalues().minCoeff();
  report.completely_positive = report.choi_min_eigenvalue >= -tol;
  return report;
}

UnitalReport is_unital(const KrausFamily& family, double tol) {
  const int d = family.dim;
  ComplexMatrix gauge = ComplexMatrix::Zero(d, d);
  for (const ComplexMatrix& a : family.operators) gauge += a * a.adjoint();
  UnitalReport report;
  report.gauge_violation = max_abs(gauge - ComplexMatrix::Identity(d, d));
  report.unital = report.gauge_violation <= tol;
  return report;
}

DensityMatrix density_matrix(const ComplexMatrix& m, double tol) {
  ensure_finite(m, "density_matrix");
  if (!is_hermitian(m, tol)) {
    throw InputError("density_matrix: not Hermitian within tolerance");
  }
  if (std::abs(m.trace() - Complex(1.0, 0.0)) > tol) {
    throw InputError("density_matrix: trace differs from 1");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
      ComplexMatrix(0.5 * (m + m.adjoint())), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("density_matrix: eigenvalue computation failed");
  }
  if (solver.eigenvalues().minCoeff() < -tol) {
    throw InputError("density_matrix: not positive semidefinite within tolerance");
  }
  return DensityMatrix{m};
}

DensityMatrix fixed_point(const SuperOperator& phi) {
  const GeneralEigen eig = eig_general(phi.matrix());
  Eigen::Index best = -1;
  double best_dist = std::numeric_limits<double>::infinity();
  int multiplicity = 0;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    const double dist = std::abs(eig.values(k) - Complex(1.0, 0.0));
    if (dist <= kPeripheralTol) ++multiplicity;
    if (dist < best_dist) {
      best_dist = dist;
      best = k;
    }
  }
  if (best_dist > 1e-6) {
    throw NumericalError("fixed_point: no eigenvalue within 1e-6 of 1");
  }
  if (multiplicity > 1) {
    throw DegenerateFixedSpaceError(
        "fixed_point: eigenvalue 1 is degenerate, no unique invariant state");
  }
  ComplexMatrix rho = unvec(eig.vectors.col(best), phi.dim());
  // The eigenvector carries an arbitrary global phase; for a channel with
  // simple eigenvalue 1 the eigenmatrix is proportional to a PSD matrix, so
  // its trace is nonzero and fixes a canonical representative.
  const Complex t = rho.trace();
  if (std::abs(t) < 1e-12 * phi.dim()) {
    throw NumericalError("fixed_point: invariant eigenmatrix has vanishing trace");
  }
  rho *= std::conj(t) / std::abs(t);
  rho = ComplexMatrix(0.5 * (rho + rho.adjoint()));
  rho /= rho.trace().real();
  if (max_abs(phi(rho) - rho) > 1e-9) {
    throw NumericalError("fixed_point: residual ||Phi(rho)-rho|| exceeds 1e-9");
  }
  return DensityMatrix{std::move(rho)};
}

SpectralReport spectral_classification(const SuperOperator& phi) {
  const GeneralEigen eig = eig_general(phi.matrix());
  SpectralReport report;
  report.eigenvalues = eig.values;
  report.spectral_gap =
      eig.values.size() > 1 ? 1.0 - std::abs(eig.values(1)) : 1.0;
  int near_one = 0, peripheral = 0;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    if (std::abs(eig.values(k) - Complex(1.0, 0.0)) <= kPeripheralTol) ++near_one;
    if (std::abs(eig.values(k)) >= 1.0 - kPeripheralTol) ++peripheral;
  }
  report.ergodic = near_one == 1;
  report.mixing = report.ergodic && peripheral == 1;
  if (report.ergodic) {
    report.fixed_point = fixed_point(phi);
  }
  return report;
}

SuperOperator limit_channel(const SuperOperator& phi) {
  SpectralReport report = spectral_classification(phi);
  if (!report.mixing) {
    throw NotMixingError("limit_channel: channel is not mixing", std::move(report));
  }
  const ComplexMatrix& rho = report.fixed_point->matrix;
  const ComplexVector fixed = vec(rho);
  const ComplexVector trace_functional =
      vec(ComplexMatrix::Identity(phi.dim(), phi.dim()));
  return SuperOperator(phi.dim(), fixed * trace_functional.transpose());
}

MDReport md_closed_form_depolarizing(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InputError("md_closed_form_depolarizing: p outside [0, 1]");
  }
  // Pure-state outputs have eigenvalues (1 ± |1 - 4p/3|)/2, so the operator
  // infimum over pure states is min(2p/3, 1 - 2p/3) * I.
  const double c = std::min(2.0 * p / 3.0, 1.0 - 2.0 * p / 3.0);
  MDReport report;
  report.kappa = c * ComplexMatrix::Identity(2, 2);
  report.kappa_trace = 2.0 * c;
  report.exactness = MDExactness::closed_form;
  if (report.kappa_trace > 0.0 && report.kappa_trace < 1.0) {
    report.theta = -std::log1p(-report.kappa_trace);
  }
  return report;
}

MDReport md_sphere_search(const SuperOperator& phi, int grid_points,
                          int refinement_rounds) {
  if (grid_points <= 0) throw InputError("md_sphere_search: empty grid");
  const int d = phi.dim();
  double best = std::numeric_limits<double>::infinity();
  ComplexVector best_xi;

  auto consider = [&](const ComplexVector& xi) {
    const double value = lambda_min_on_pure_state(phi, xi);
    if (value < best) {
      best = value;
      best_xi = xi;
    }
  };

  if (d == 2) {
    // Fibonacci lattice on the Bloch sphere; xi is determined by a sphere
    // point up to the irrelevant global phase.
    const double golden_angle = M_PI * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < grid_points; ++k) {
      const double z = 1.0 - 2.0 * (k + 0.5) / grid_points;
      const double polar = std::acos(std::clamp(z, -1.0, 1.0));
      const double azimuth = golden_angle * k;
      ComplexVector xi(2);
      xi(0) = Complex(std::cos(polar / 2.0), 0.0);
      xi(1) = std::polar(std::sin(polar / 2.0), azimuth);
      consider(xi);
    }
  } else {
    Prng prng(kSphereSeed);
    for (int k = 0; k < grid_points; ++k) consider(prng.unit_vector(d));
  }

  // Local refinement: shrinking Gaussian perturbations around the minimizer.
  Prng prng(kSphereSeed + 1);
  double radius = 0.3;
  const int samples_per_round = std::max(32, grid_points / 50);
  for (int round = 0; round < refinement_rounds; ++round) {
    const ComplexVector center = best_xi;
    for (int k = 0; k < samples_per_round; ++k) {
      ComplexVector xi = center + radius * prng.unit_vector(d);
      const double norm = xi.norm();
      if (norm == 0.0) continue;
      consider(xi / norm);
    }
    radius *= 0.5;
  }

  // A CP map sends pure states to PSD matrices; clamp eigensolver dust.
  const double c = std::max(best, 0.0);
  MDReport report;
  report.kappa = c * ComplexMatrix::Identity(d, d);
  report.kappa_trace = c * d;
  report.exactness = MDExactness::lower_bound;
  if (report.kappa_trace > 0.0 && report.kappa_trace < 1.0) {
    report.theta = -std::log1p(-report.kappa_trace);
  }
  return report;
}

double mixing_rate(const MDReport& report) {
  if (report.kappa_trace <= 0.0) {
    throw NoErgodicityCertificateError(
        "mixing_rate: Tr(kappa) <= 0 gives no ergodicity certificate");
  }
  if (report.kappa_trace >= 1.0) {
    // One-step stationarity: the contraction coefficient is 0.
    return std::numeric_limits<double>::infinity();
  }
  return -std::log1p(-report.kappa_trace);
}

ContractionCheck check_contraction(const SuperOperator& phi,
                                   const DensityMatrix& rho,
                                   const DensityMatrix& sigma,
                                   const MDReport& md, double tol) {
  ContractionCheck check;
  check.lhs = tv_norm(phi(rho.matrix) - phi(sigma.matrix));
  check.rhs = (1.0 - md.kappa_trace) * tv_norm(rho.matrix - sigma.matrix);
  check.satisfied = check.lhs <= check.rhs + tol;
  return check;
}

}  // namespace mpsh
