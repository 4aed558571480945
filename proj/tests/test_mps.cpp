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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "mpsh/channel.hpp"
#include "mpsh/matrix.hpp"
#include "mpsh/models.hpp"
#include "mpsh/mps.hpp"
#include "mpsh/random.hpp"

using namespace mpsh;

namespace {

ComplexMatrix random_hermitian(Prng& rng, int dim) {
  const ComplexMatrix g = rng.ginibre(dim, dim);
  return 0.5 * (g + g.adjoint());
}

// Oracle: evaluate phi_n(x) directly from the amplitude vector of the
// (n+1)-site state, without the transfer machinery.  The observable acts on
// the first N sites; indices split as flat = head * d^(n+1-N) + tail.
Complex brute_expectation(const MPSChain& chain, const LocalObservable& x, int n) {
  const StateVector psi = state_vector(chain, n + 1);
  const Eigen::Index head_dim = x.matrix.rows();
  const Eigen::Index tail_dim = psi.amplitudes.size() / head_dim;
  Complex numerator(0, 0);
  for (Eigen::Index hi = 0; hi < head_dim; ++hi) {
    for (Eigen::Index hj = 0; hj < head_dim; ++hj) {
      if (x.matrix(hi, hj) == Complex(0, 0)) continue;
      Complex gram(0, 0);
      for (Eigen::Index t = 0; t < tail_dim; ++t) {
        gram += std::conj(psi.amplitudes(hi * tail_dim + t)) *
                psi.amplitudes(hj * tail_dim + t);
      }
      numerator += x.matrix(hi, hj) * gram;
    }
  }
  return numerator / psi.amplitudes.squaredNorm();
}

}  // namespace

TEST_CASE("state_vector of the GHZ chain is the two-peak amplitude pattern") {
  const StateVector psi = state_vector(ghz_chain(), 3);
  REQUIRE(psi.amplitudes.size() == 8);
  CHECK(psi.amplitudes(0) == Complex(1, 0));
  CHECK(psi.amplitudes(7) == Complex(1, 0));
  for (int k = 1; k < 7; ++k) CHECK(psi.amplitudes(k) == Complex(0, 0));
}

TEST_CASE("state_vector flat index runs with the first site slowest") {
  // Bond dimension 1 makes amplitudes plain products a_{i1} ... a_{in},
  // pinning the index convention without any matrix structure.
  ComplexMatrix a0(1, 1), a1(1, 1);
  a0(0, 0) = Complex(0.6, 0);
  a1(0, 0) = Complex(0, 0.8);
  const KrausFamily family(1, KrausConvention::heisenberg, {a0, a1});
  const MPSChain chain(2, 1, true, {family});
  const StateVector psi = state_vector(chain, 3);
  for (int i1 = 0; i1 < 2; ++i1) {
    for (int i2 = 0; i2 < 2; ++i2) {
      for (int i3 = 0; i3 < 2; ++i3) {
        const Complex expected = (i1 ? a1 : a0)(0, 0) * (i2 ? a1 : a0)(0, 0) *
                                 (i3 ? a1 : a0)(0, 0);
        CHECK(psi.amplitudes(4 * i1 + 2 * i2 + i3) == expected);
      }
    }
  }
}

TEST_CASE("normalization agrees with the brute-force state norm") {
  for (const std::uint64_t seed : {41u, 42u, 43u}) {
    const MPSChain chain = random_gauge_chain(3, 2, 4, false, seed);
    for (int n = 1; n <= 4; ++n) {
      CHECK(normalization(chain, n) ==
            doctest::Approx(normalization_brute_force(chain, n)).epsilon(1e-12));
    }
  }
}

TEST_CASE("normalization matches the depolarizing closed form 1 + 3(1-4p/3)^n") {
  const MPSChain chain = depolarizing_chain(0.3);
  for (int n = 1; n <= 6; ++n) {
    CHECK(normalization(chain, n) ==
          doctest::Approx(depolarizing_normalization_closed_form(0.3, n))
              .epsilon(1e-12));
  }
}

TEST_CASE("transfer_channel applies M -> sum_i A_i† M A_i") {
  Prng rng(44);
  const MPSChain chain = random_gauge_chain(3, 2, 1, true, 45);
  const SuperOperator phi = transfer_channel(chain, 1);
  const ComplexMatrix m = rng.ginibre(2, 2);
  ComplexMatrix expected = ComplexMatrix::Zero(2, 2);
  for (const ComplexMatrix& a : chain.site(1).operators) {
    expected += a.adjoint() * m * a;
  }
  CHECK(max_abs(ComplexMatrix(phi(m) - expected)) < 1e-13);
}

TEST_CASE("lift of the window identity equals the composed transfer maps") {
  const MPSChain chain = random_gauge_chain(2, 3, 3, false, 46);
  const LocalObservable identity(1, 3, ComplexMatrix::Identity(8, 8));
  const SuperOperator lifted = lift_observable(chain, identity);
  const SuperOperator composed = compose(
      transfer_channel(chain, 3),
      compose(transfer_channel(chain, 2), transfer_channel(chain, 1)));
  CHECK(max_abs(ComplexMatrix(lifted.matrix() - composed.matrix())) < 1e-12);
}

TEST_CASE("lift of a single-site observable matches the operator sum") {
  Prng rng(47);
  const MPSChain chain = random_gauge_chain(3, 2, 1, true, 48);
  const ComplexMatrix x = random_hermitian(rng, 3);
  const SuperOperator lifted = lift_observable(chain, LocalObservable(1, 1, x));
  const ComplexMatrix m = rng.ginibre(2, 2);
  ComplexMatrix expected = ComplexMatrix::Zero(2, 2);
  const std::vector<ComplexMatrix>& ops = chain.site(1).operators;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      expected += x(i, j) * ops[i].adjoint() * m * ops[j];
    }
  }
  CHECK(max_abs(ComplexMatrix(lifted(m) - expected)) < 1e-13);
}

TEST_CASE("lift composes across windows: later window acts after earlier") {
  Prng rng(49);
  const MPSChain chain = random_gauge_chain(2, 2, 2, false, 50);
  const ComplexMatrix x = random_hermitian(rng, 2);
  const ComplexMatrix y = random_hermitian(rng, 2);
  const SuperOperator joint =
      lift_observable(chain, LocalObservable(1, 2, kron(x, y)));
  const SuperOperator site1 = lift_observable(chain, LocalObservable(1, 1, x));
  const SuperOperator site2 = lift_observable(chain, LocalObservable(2, 2, y));
  CHECK(max_abs(ComplexMatrix(joint.matrix() - compose(site2, site1).matrix())) <
        1e-12);
}

TEST_CASE("finite_expectation cross-checks the state-vector route internally") {
  const MPSChain chain = random_gauge_chain(2, 3, 5, false, 51);
  Prng rng(52);
  const LocalObservable x(1, 2, random_hermitian(rng, 4));
  const ExpectationResult result = finite_expectation(chain, x, 4);
  CHECK(result.method == "brute_force+transfer");
  REQUIRE(result.route_residual.has_value());
  CHECK(*result.route_residual < 1e-10);
  // Independent oracle in test code.
  CHECK(std::abs(result.value - brute_expectation(chain, x, 4)) < 1e-11);
}

TEST_CASE("finite_expectation falls back to the transfer route over the cap") {
  const MPSChain chain = depolarizing_chain(0.3);
  const LocalObservable e00(1, 1, matrix_unit(4, 0, 0));
  EvalCaps caps;
  caps.max_state_amplitudes = 8;  // 4^(n+1) never fits
  const ExpectationResult capped = finite_expectation(chain, e00, 3, caps);
  CHECK(capped.method == "transfer");
  CHECK(!capped.route_residual.has_value());
  const ExpectationResult full = finite_expectation(chain, e00, 3);
  CHECK(std::abs(capped.value - full.value) < 1e-14);
}

TEST_CASE("finite_expectation validates the window") {
  const MPSChain chain = ghz_chain();
  const LocalObservable off_window(2, 2, ComplexMatrix::Identity(2, 2));
  CHECK_THROWS_AS(finite_expectation(chain, off_window, 3), InputError);
  const LocalObservable wide(1, 3, ComplexMatrix::Identity(8, 8));
  CHECK_THROWS_AS(finite_expectation(chain, wide, 2), InputError);
}

TEST_CASE("real_value rejects a genuinely complex expectation") {
  const MPSChain chain = ghz_chain();
  const ComplexMatrix x = Complex(0, 1) * matrix_unit(2, 0, 0);
  const ExpectationResult result =
      finite_expectation(chain, LocalObservable(1, 1, x), 3);
  CHECK(std::abs(result.value - Complex(0, 0.5)) < 1e-12);
  CHECK_THROWS_AS(result.real_value(), NumericalError);
}

TEST_CASE("gauge_check reports the exact defect of a perturbed chain") {
  MPSChain chain = random_gauge_chain(2, 2, 1, true, 53);
  CHECK(gauge_check(chain).max_violation < 1e-12);
  chain.sites[0].operators[0] *= 1.01;
  // sum A A† picks up (1.01^2 - 1) * A_0 A_0†; just confirm it is visible.
  CHECK(gauge_check(chain).max_violation > 1e-3);
}

TEST_CASE("projective_consistency_check is exact for GHZ") {
  const ConsistencyReport report = projective_consistency_check(ghz_chain(), 1);
  CHECK(report.max_violation == 0.0);
}

TEST_CASE("projective_consistency_check matches a direct reimplementation") {
  const MPSChain chain = depolarizing_chain(0.3);
  const ConsistencyReport report = projective_consistency_check(chain, 1);
  const std::vector<ComplexMatrix>& ops = chain.site(1).operators;
  double expected = 0.0;
  for (const ComplexMatrix& ai : ops) {
    ComplexMatrix lhs = ComplexMatrix::Zero(4, 4);
    for (const ComplexMatrix& bj : ops) {
      const ComplexMatrix prod = ai * bj;
      lhs += kron(prod.adjoint(), prod);
    }
    expected = std::max(expected, max_abs(ComplexMatrix(lhs - kron(ai.adjoint(), ai))));
  }
  CHECK(report.max_violation == doctest::Approx(expected).epsilon(1e-14));
  // The depolarizing family is genuinely non-projective at p = 0.3.
  CHECK(report.max_violation > 0.1);
}

TEST_CASE("projective_limit reproduces GHZ closed forms and refuses depolarizing") {
  const MPSChain ghz = ghz_chain();
  const PauliMatrices sigma = paulis();
  const LocalObservable zz(1, 2, kron(sigma.z, sigma.z));
  CHECK(std::abs(projective_limit(ghz, zz).value - ghz_closed_form(zz)) < 1e-13);

  const MPSChain dep = depolarizing_chain(0.3);
  const LocalObservable e00(1, 1, matrix_unit(4, 0, 0));
  CHECK_THROWS_AS(projective_limit(dep, e00), NotProjectiveError);
  try {
    projective_limit(dep, e00);
  } catch (const NotProjectiveError& err) {
    CHECK(err.report.max_violation > 0.1);
  }
}

TEST_CASE("projective_limit equals finite expectations on projector chains") {
  for (const std::uint64_t seed : {54u, 55u, 56u}) {
    const MPSChain chain = random_projector_chain(3, 4, seed);
    Prng rng(seed + 100);
    const LocalObservable x(1, 1, random_hermitian(rng, 3));
    const Complex limit = projective_limit(chain, x).value;
    for (int n = 1; n <= 4; ++n) {
      CHECK(std::abs(finite_expectation(chain, x, n).value - limit) < 1e-10);
    }
  }
}

TEST_CASE("ergodic_limit matches the depolarizing closed form") {
  const MPSChain chain = depolarizing_chain(0.3);
  const LocalObservable e00(1, 1, matrix_unit(4, 0, 0));
  CHECK(std::abs(ergodic_limit(chain, e00).value - Complex(0.7, 0)) < 1e-12);
  CHECK_THROWS_AS(ergodic_limit(ghz_chain(),
                                LocalObservable(1, 1, matrix_unit(2, 0, 0))),
                  NotMixingError);
}

TEST_CASE("ergodic limit agrees with large finite volumes near stationarity") {
  // At p = 0.74 the transfer map contracts by |1 - 4p/3| = 0.0133 per site,
  // so phi_7 is already within ~0.0133^7 of the limit; compare both against
  // the closed form and against each other.
  const MPSChain chain = depolarizing_chain(0.74);
  const LocalObservable e00(1, 1, matrix_unit(4, 0, 0));
  const Complex limit = ergodic_limit(chain, e00).value;
  CHECK(std::abs(limit - depolarizing_site_limit_closed_form(0.74, e00.matrix)) <
        1e-12);
  CHECK(std::abs(finite_expectation(chain, e00, 7).value - limit) < 1e-4);
}

TEST_CASE("trace identity hand case on the GHZ chain") {
  // n = 1, k = 1, i = (0, 0), j = (0): every product is diag(1, 0).
  const TraceIdentityCheck check =
      trace_product_identity_check(ghz_chain(), 1, 1, {0, 0}, {0});
  CHECK(std::abs(check.lhs - Complex(1, 0)) < 1e-15);
  CHECK(std::abs(check.rhs - Complex(1, 0)) < 1e-15);
  CHECK(check.residual < 1e-15);
}

TEST_CASE("trace identity holds on random chains and tuples") {
  Prng rng(57);
  for (int trial = 0; trial < 25; ++trial) {
    const int d = 2 + static_cast<int>(rng.uniform() * 2);
    const int bond = 2 + static_cast<int>(rng.uniform() * 2);
    const int n = 1 + static_cast<int>(rng.uniform() * 3);
    const int k = static_cast<int>(rng.uniform() * 3);
    const MPSChain chain = random_gauge_chain(d, bond, n + k, false, 58 + trial);
    std::vector<int> i_tuple(n + k), j_tuple(n);
    for (int& v : i_tuple) v = static_cast<int>(rng.uniform() * d);
    for (int& v : j_tuple) v = static_cast<int>(rng.uniform() * d);
    const TraceIdentityCheck check =
        trace_product_identity_check(chain, n, k, i_tuple, j_tuple);
    CHECK(check.residual < 1e-12);
  }
}

TEST_CASE("projectivity_probe classifies GHZ and depolarizing correctly") {
  const ProjectivityReport ghz = projectivity_probe(ghz_chain(), 1, 4);
  CHECK(ghz.projective);
  CHECK(ghz.max_violation < 1e-12);

  const ProjectivityReport dep = projectivity_probe(depolarizing_chain(0.3), 1, 3);
  CHECK(!dep.projective);
  CHECK(dep.max_violation > 1e-3);
  CHECK(dep.n_values.size() == 3);
  CHECK(dep.violations.size() == 3);
}

TEST_CASE("caps guard exponential blowups with structured errors") {
  const MPSChain chain = ghz_chain();
  EvalCaps caps;
  caps.max_state_amplitudes = 1 << 10;
  CHECK_THROWS_AS(state_vector(chain, 11, caps), CapExceededError);
  caps.max_observable_entries = 16;
  CHECK_THROWS_AS(
      lift_observable(chain, LocalObservable(1, 3, ComplexMatrix::Identity(8, 8)),
                      caps),
      CapExceededError);
}

TEST_CASE("MPSChain validates construction and site access") {
  const KrausFamily family = ghz_chain().site(1);
  CHECK_THROWS_AS(MPSChain(2, 2, true, {family, family}), InputError);
  CHECK_THROWS_AS(MPSChain(3, 2, true, {family}), InputError);  // d mismatch
  const MPSChain two_site(2, 2, false, {family, family});
  CHECK_THROWS_AS(two_site.site(3), InputError);
  CHECK_THROWS_AS(two_site.site(0), InputError);
  CHECK(two_site.max_site() == 2);

  // Schrodinger-convention site families are rejected.
  KrausFamily wrong = family;
  wrong.convention = KrausConvention::schrodinger;
  CHECK_THROWS_AS(MPSChain(2, 2, true, {wrong}), InputError);
}
