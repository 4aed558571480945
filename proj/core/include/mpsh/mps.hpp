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
#include <string>
#include <vector>

#include "mpsh/channel.hpp"
#include "mpsh/matrix.hpp"
#include "mpsh/types.hpp"

namespace mpsh {

// Work caps for brute-force evaluations.
struct EvalCaps {
  std::size_t max_state_amplitudes = 65536;    // d^n amplitudes
  std::size_t max_observable_entries = 65536;  // d^(2N) dense entries
};

// A finite-volume matrix product chain. Site tensors are stored as Kraus
// families in the heisenberg convention, so transfer_channel(chain, k)
// realizes M -> sum_i A_i† M A_i from the site-k family. For a
// translation-invariant chain a single family describes every site.
struct MPSChain {
  int physical_dim = 0;  // d
  int bond_dim = 0;      // D
  bool translation_invariant = false;
  std::vector<KrausFamily> sites;

  MPSChain() = default;
  MPSChain(int physical_dim, int bond_dim, bool translation_invariant,
           std::vector<KrausFamily> sites);

  // 1-based site access; unbounded for translation-invariant chains.
  const KrausFamily& site(int k) const;
  // Largest usable site index (max int when translation invariant).
  int max_site() const;
};

// Dense observable supported on the window [first, last] (1-based sites).
struct LocalObservable {
  int first = 1;
  int last = 1;
  ComplexMatrix matrix;  // d^N x d^N with N = last - first + 1

  LocalObservable() = default;
  LocalObservable(int first, int last, ComplexMatrix matrix);
  int window_length() const { return last - first + 1; }
};

// Amplitudes of |Psi_n> = sum Tr(A_{i_1}...A_{i_n}) |i_1...i_n>, with the
// site-1 index slowest-varying: flat index = ((i_1 d + i_2) d + ...) + i_n.
struct StateVector {
  int sites = 0;
  int physical_dim = 0;
  ComplexVector amplitudes;
};

StateVector state_vector(const MPSChain& chain, int n, const EvalCaps& caps = {});

// N(n) = sum |Tr(A_{i_1}...A_{i_n})|^2 = Tr(Phi_n ∘ ... ∘ Phi_1), computed
// through the transfer route. Throws DegenerateChainError below 1e-14.
double normalization(const MPSChain& chain, int n);

// Amplitude-sum route for the same quantity (oracle for the transfer route).
double normalization_brute_force(const MPSChain& chain, int n,
                                 const EvalCaps& caps = {});

// Transfer channel of site k: M -> sum_i A_i† M A_i.
SuperOperator transfer_channel(const MPSChain& chain, int k);

// Heisenberg lift of x over its window:
//   X^(M) = sum_{i,j} <i|X|j> (A_{i_first}...A_{i_last})† M (A_{j_first}...A_{j_last}).
// Lifting the identity gives the composed transfer channels of the window,
// and for adjacent windows lift(later) ∘ lift(earlier) = lift of the tensor
// observable on the union.
SuperOperator lift_observable(const MPSChain& chain, const LocalObservable& x,
                              const EvalCaps& caps = {});

// A state-functional value together with how it was produced.
struct ExpectationResult {
  Complex value;
  std::string method;                    // "transfer", "brute_force+transfer",
                                         // "projective", "ergodic"
  std::optional<double> route_residual;  // |brute - transfer| when both ran

  // Asserts the value is real within 1e-10 (guaranteed for Hermitian
  // observables) and returns the real part.
  double real_value() const;
};

// phi_n(x) = <Psi_{n+1}| x ⊗ id |Psi_{n+1}> / N(n+1) for x supported on
// [1, N], N <= n. Always computed through the transfer route
//   Tr(Phi_{n+1} ∘ ... ∘ Phi_{N+1} ∘ x^) / N(n+1),
// and cross-checked against the explicit state vector whenever d^(n+1) fits
// the cap; disagreement beyond 1e-10 raises NumericalError.
ExpectationResult finite_expectation(const MPSChain& chain,
                                     const LocalObservable& x, int n,
                                     const EvalCaps& caps = {});

struct GaugeReport {
  std::vector<double> site_violations;  // ||sum_i A_i A_i† - I||_max per site
  double max_violation = 0.0;
};
GaugeReport gauge_check(const MPSChain& chain);

// Residuals of the site-(n, n+1) operator identity
//   sum_j (A_i^[n] A_j^[n+1])† ⊗ (A_i^[n] A_j^[n+1]) = A_i^[n]† ⊗ A_i^[n],
// one violation per physical index i.
struct ConsistencyReport {
  int n = 0;
  std::vector<double> violations;
  double max_violation = 0.0;
};
ConsistencyReport projective_consistency_check(const MPSChain& chain, int n);

class NotProjectiveError : public Error {
 public:
  NotProjectiveError(const std::string& what, ConsistencyReport report)
      : Error(what), report(std::move(report)) {}
  ConsistencyReport report;
};

// Volume-independent value phi(x) = Tr(Phi_{N+1} ∘ x^) / Tr(Phi_1) for chains
// passing the consistency identity (checked for every applicable n up to
// consistency_tol; refuses otherwise with the failing report attached).
ExpectationResult projective_limit(const MPSChain& chain, const LocalObservable& x,
                                   double consistency_tol = 1e-8,
                                   const EvalCaps& caps = {});

// Thermodynamic limit for a translation-invariant chain whose transfer
// channel is mixing: phi(x) = sum_{a,b} (rho*)_{ab} Tr(x^(E_ab)) with rho*
// the invariant state of the transfer channel.
ExpectationResult ergodic_limit(const MPSChain& chain, const LocalObservable& x,
                                const EvalCaps& caps = {});

// Both sides of the trace factorization
//   conj(Tr(A_{i_1}..A_{i_{n+k}})) Tr(A_{j_1}..A_{j_n} A_{i_{n+1}}..A_{i_{n+k}})
//   = Tr[(A_{i_n}†..A_{i_1}† ⊗ A_{j_1}..A_{j_n})
//        (A_{i_{n+k}}†..A_{i_{n+1}}† ⊗ A_{i_{n+1}}..A_{i_{n+k}})],
// where the boundary block carries the i indices in both tensor factors
// (the j tuple has length n and shares the i tail).
struct TraceIdentityCheck {
  Complex lhs;
  Complex rhs;
  double residual = 0.0;
};
TraceIdentityCheck trace_product_identity_check(const MPSChain& chain, int n, int k,
                                                const std::vector<int>& i_tuple,
                                                const std::vector<int>& j_tuple);

// Volume-independence probe: for each n in [n_min, n_max], the largest
// |phi_{n+1}(X) - phi_n(X)| over the probe set (single-site matrix units and
// the Hermitian basis built from them when `probes` is empty).
struct ProjectivityReport {
  std::vector<int> n_values;
  std::vector<double> violations;
  double max_violation = 0.0;
  bool projective = false;  // max violation <= 100 * default_tol()
};
ProjectivityReport projectivity_probe(const MPSChain& chain, int n_min, int n_max,
                                      const std::vector<LocalObservable>& probes = {},
                                      const EvalCaps& caps = {});

}  // namespace mpsh
