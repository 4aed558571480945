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
//
// Reference model families: the GHZ chain, the depolarizing chain, random
// gauge-correct chains, and random orthogonal-projector chains, together with
// the analytic closed forms the test suite checks the generic machinery
// against.  Every closed form here is evaluated without touching the transfer
// machinery so the two routes stay independent.

#pragma once

#include <cstdint>

#include "mpsh/mps.hpp"

namespace mpsh {

struct PauliMatrices {
  ComplexMatrix identity;
  ComplexMatrix x;
  ComplexMatrix y;
  ComplexMatrix z;
};

PauliMatrices paulis();

// GHZ chain: d = 2, D = 2, A_1 = diag(1, 0), A_2 = diag(0, 1), translation
// invariant and in gauge exactly.
MPSChain ghz_chain();

// Limit (and finite-n, n >= window) expectation of a window observable on the
// GHZ chain: (X[0..0, 0..0] + X[1..1, 1..1]) / 2.
Complex ghz_closed_form(const LocalObservable& x);

// Depolarizing chain: d = 4, D = 2, A_0 = sqrt(1-p) I, A_k = sqrt(p/3) sigma_k,
// translation invariant and in gauge exactly for any p in [0, 1].
MPSChain depolarizing_chain(double p);

// Action of the depolarizing transfer map on a 2x2 matrix,
// (1 - 4p/3) M + (2p/3) Tr(M) I, written without the Kraus sum.
ComplexMatrix depolarizing_apply_closed_form(double p, const ComplexMatrix& m);

// N(n) = 1 + 3 (1 - 4p/3)^n.
double depolarizing_normalization_closed_form(double p, int n);

// Finite-volume expectation of a single-site observable x (4x4):
// phi_n(x) = sum_ij x(i,j) [mu^n conj(t_i) t_j + (1 - mu^n) delta_ij c_i^2]
//            / N(n+1),
// with mu = 1 - 4p/3, t = (2 sqrt(1-p), 0, 0, 0) the operator traces and
// c^2 = (1-p, p/3, p/3, p/3) the operator weights.
Complex depolarizing_site_closed_form(double p, const ComplexMatrix& x, int n);

// n -> infinity value of the above for p in (0, 1]: sum_i x(i,i) c_i^2.
Complex depolarizing_site_limit_closed_form(double p, const ComplexMatrix& x);

// Limit expectation of the two-site projector E_00 (x) E_00: (1 - p)^2.
double depolarizing_two_site_projector_limit(double p);

// Mixing rate of the depolarizing transfer map: with
// c = min(2p/3, 1 - 2p/3) the exact overlap constant, theta = -ln(1 - 2c),
// equal to -ln|1 - 4p/3| away from p = 3/4 and +infinity there.
double depolarizing_theta_closed_form(double p);

// Random chain in exact gauge: stacks a Ginibre (d*D) x D matrix, takes the
// thin QR factor with the R diagonal made real positive (so the draw is
// deterministic in the seed), and splits its adjoint into d blocks.
MPSChain random_gauge_chain(int physical_dim, int bond_dim, int sites,
                            bool translation_invariant, std::uint64_t seed);

// Random translation-invariant chain built from an orthogonal-projector
// family A_i = U Pi_i U^dagger, where the Pi_i partition the computational
// basis.  Such chains satisfy the consistency identity exactly.
MPSChain random_projector_chain(int physical_dim, int bond_dim,
                                std::uint64_t seed);

}  // namespace mpsh
