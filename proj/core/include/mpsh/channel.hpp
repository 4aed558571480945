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

#include <optional>
#include <vector>

#include "mpsh/matrix.hpp"
#include "mpsh/types.hpp"

namespace mpsh {

// How a Kraus operator list realizes a map:
//   schrodinger: M -> sum_i A_i M A_i†
//   heisenberg:  M -> sum_i A_i† M A_i
enum class KrausConvention { schrodinger, heisenberg };

struct KrausFamily {
  int dim = 0;
  KrausConvention convention = KrausConvention::schrodinger;
  std::vector<ComplexMatrix> operators;

  KrausFamily() = default;
  // Validates: at least one operator, all dim x dim, finite entries.
  KrausFamily(int dim, KrausConvention convention,
              std::vector<ComplexMatrix> operators);
};

// Column-stacking vectorization: vec(M)[i + j*dim] = M(i, j).
ComplexVector vec(const ComplexMatrix& m);
ComplexMatrix unvec(const ComplexVector& v, int dim);

// A linear map on dim x dim matrices, stored as its dim^2 x dim^2 matrix in
// the column-stacking convention (so M -> A M B has matrix B^T ⊗ A).
class SuperOperator {
 public:
  SuperOperator(int dim, ComplexMatrix matrix);
  static SuperOperator identity_map(int dim);

  int dim() const { return dim_; }
  const ComplexMatrix& matrix() const { return matrix_; }

  ComplexMatrix operator()(const ComplexMatrix& m) const;

 private:
  int dim_;
  ComplexMatrix matrix_;
};

// Realize the map described by a Kraus family.
SuperOperator from_kraus(const KrausFamily& family);

// Apply the map to a dim x dim matrix.
ComplexMatrix apply(const SuperOperator& phi, const ComplexMatrix& m);

// compose(f, g) = f ∘ g (g acts first).
SuperOperator compose(const SuperOperator& f, const SuperOperator& g);

// Superoperator trace sum_{k,l} <e_k| Phi(E_kl) |e_l>. Computed both from the
// definition and as the trace of the stored matrix; the two are asserted to
// agree (they coincide under column stacking).
Complex superop_trace(const SuperOperator& phi);

// Choi matrix sum_{k,l} E_kl ⊗ Phi(E_kl); the map is completely positive
// iff this is PSD.
ComplexMatrix choi_matrix(const SuperOperator& phi);

// Flags are computed from the literal operator sums:
//   trace_preserving  <=>  sum_i A_i† A_i = I (completeness)
//   unital            <=>  sum_i A_i A_i† = I (gauge)
// For a schrodinger-convention family these are exactly the trace-preservation
// and unitality of the realized map; for a heisenberg-convention family the
// two conditions swap roles.
struct CptpReport {
  bool completely_positive = false;
  bool trace_preserving = false;
  double choi_min_eigenvalue = 0.0;
  double completeness_violation = 0.0;  // ||sum A†A - I||_max
  double gauge_violation = 0.0;         // ||sum A A† - I||_max
};
CptpReport is_cptp(const KrausFamily& family, double tol = default_tol());

struct UnitalReport {
  bool unital = false;
  double gauge_violation = 0.0;
};
UnitalReport is_unital(const KrausFamily& family, double tol = default_tol());

struct DensityMatrix {
  ComplexMatrix matrix;
};

// Validating factory: Hermitian, PSD and unit trace within tol.
DensityMatrix density_matrix(const ComplexMatrix& m, double tol = default_tol());

// Eigenvalues within this distance of 1 (resp. of the unit circle) count as
// the peripheral spectrum when deciding ergodicity/mixing.
inline constexpr double kPeripheralTol = 1e-9;

// Unique invariant state of a trace-preserving map with simple eigenvalue 1.
// Throws NumericalError when no eigenvalue lies within 1e-6 of 1, and
// DegenerateFixedSpaceError when eigenvalue 1 is degenerate.
DensityMatrix fixed_point(const SuperOperator& phi);

struct SpectralReport {
  ComplexVector eigenvalues;  // sorted by descending modulus
  double spectral_gap = 0.0;  // 1 - |second largest modulus|
  bool ergodic = false;       // eigenvalue 1 simple among the peripheral spectrum
  bool mixing = false;        // exactly one peripheral eigenvalue
  std::optional<DensityMatrix> fixed_point;  // present when ergodic
};
SpectralReport spectral_classification(const SuperOperator& phi);

// Raised when an operation requires a mixing channel; carries the evidence.
class NotMixingError : public Error {
 public:
  NotMixingError(const std::string& what, SpectralReport report)
      : Error(what), report(std::move(report)) {}
  SpectralReport report;
};

// The rank-one limit map M -> Tr(M) rho*. Requires phi mixing.
SuperOperator limit_channel(const SuperOperator& phi);

enum class MDExactness { closed_form, lower_bound };

// Markov-Dobrushin data: kappa PSD with Phi(xi xi†) >= kappa for all unit xi,
// and theta = -ln(1 - Tr kappa) whenever 0 < Tr kappa < 1.
struct MDReport {
  ComplexMatrix kappa;
  double kappa_trace = 0.0;
  std::optional<double> theta;
  MDExactness exactness = MDExactness::lower_bound;
};

// Exact constant for the depolarizing family: kappa = min(2p/3, 1-2p/3) * I.
MDReport md_closed_form_depolarizing(double p);

// Grid search for c = min over unit xi of lambda_min(Phi(xi xi†)), returning
// kappa = c * I. For dim 2 the grid is a Fibonacci lattice on the Bloch
// sphere; for larger dim a deterministic quasi-random set on the unit sphere
// of C^dim. Each refinement round re-samples around the current minimizer
// with a shrinking radius. Deterministic for fixed parameters.
MDReport md_sphere_search(const SuperOperator& phi, int grid_points = 10000,
                          int refinement_rounds = 3);

// theta from a certificate: throws NoErgodicityCertificateError when
// Tr kappa <= 0; returns +infinity (one-step stationarity) when Tr kappa >= 1.
double mixing_rate(const MDReport& report);

struct ContractionCheck {
  bool satisfied = false;
  double lhs = 0.0;  // ||Phi(rho) - Phi(sigma)||_TV
  double rhs = 0.0;  // (1 - Tr kappa) ||rho - sigma||_TV
};
ContractionCheck check_contraction(const SuperOperator& phi,
                                   const DensityMatrix& rho,
                                   const DensityMatrix& sigma,
                                   const MDReport& md,
                                   double tol = default_tol());

}  // namespace mpsh
