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
#include <Eigen/SVD>
#include <complex>

#include "doctest.h"
#include "mpsh/matrix.hpp"
#include "mpsh/random.hpp"

using namespace mpsh;

namespace {

ComplexMatrix random_hermitian(Prng& rng, int dim) {
  const ComplexMatrix g = rng.ginibre(dim, dim);
  return 0.5 * (g + g.adjoint());
}

// Independent oracle for the trace norm: sum of singular values via SVD.
double trace_norm_svd(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues().sum();
}

}  // namespace

TEST_CASE("kron matches the hand-expanded 2x2 block formula") {
  ComplexMatrix a(2, 2), b(2, 2);
  a << Complex(1, 1), Complex(2, 0), Complex(0, -1), Complex(3, 2);
  b << Complex(5, 0), Complex(0, 1), Complex(1, 1), Complex(-2, 0);
  const ComplexMatrix k = kron(a, b);
  REQUIRE(k.rows() == 4);
  REQUIRE(k.cols() == 4);
  // Block (i,j) of kron(a, b) is a(i,j) * b; spot-check all four blocks.
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      CHECK(max_abs(ComplexMatrix(k.block(2 * i, 2 * j, 2, 2) - a(i, j) * b)) ==
            0.0);
    }
  }
}

TEST_CASE("kron is multiplicative: (A kron B)(C kron D) = AC kron BD") {
  Prng rng(11);
  const ComplexMatrix a = rng.ginibre(2, 3), c = rng.ginibre(3, 2);
  const ComplexMatrix b = rng.ginibre(3, 2), d = rng.ginibre(2, 3);
  const ComplexMatrix lhs = kron(a, b) * kron(c, d);
  const ComplexMatrix rhs = kron(ComplexMatrix(a * c), ComplexMatrix(b * d));
  CHECK(max_abs(ComplexMatrix(lhs - rhs)) < 1e-13);
}

TEST_CASE("trace requires a square matrix") {
  CHECK_THROWS_AS(trace(ComplexMatrix::Zero(2, 3)), InputError);
  ComplexMatrix m(2, 2);
  m << Complex(1, 2), Complex(0, 0), Complex(0, 0), Complex(3, -1);
  CHECK(trace(m) == Complex(4, 1));
}

TEST_CASE("partial_trace_tail contracts the tail factor of a Kronecker product") {
  Prng rng(12);
  const ComplexMatrix a = rng.ginibre(3, 3);
  const ComplexMatrix b = rng.ginibre(4, 4);
  // Oracle: Tr_tail(a kron b) = Tr(b) * a.
  const ComplexMatrix reduced = partial_trace_tail(kron(a, b), 1, {3, 4});
  CHECK(max_abs(ComplexMatrix(reduced - b.trace() * a)) < 1e-13);
}

TEST_CASE("partial_trace_tail on a hand-computed 4x4 case") {
  // x indexed by (head, tail) pairs (h t, h' t'); entries chosen by hand.
  ComplexMatrix x(4, 4);
  x.setZero();
  x(0, 0) = 1;   // (0,0),(0,0) -> contributes to out(0,0)
  x(1, 1) = 2;   // (0,1),(0,1) -> contributes to out(0,0)
  x(0, 2) = 5;   // (0,0),(1,0) -> contributes to out(0,1)
  x(3, 1) = 7;   // (1,1),(0,1) -> contributes to out(1,0)
  x(2, 2) = -3;  // (1,0),(1,0) -> contributes to out(1,1)
  const ComplexMatrix out = partial_trace_tail(x, 1, {2, 2});
  CHECK(out(0, 0) == Complex(3, 0));
  CHECK(out(0, 1) == Complex(5, 0));
  CHECK(out(1, 0) == Complex(7, 0));
  CHECK(out(1, 1) == Complex(-3, 0));
}

TEST_CASE("partial trace composes: tracing in two steps equals one step") {
  Prng rng(13);
  const ComplexMatrix x = rng.ginibre(2 * 3 * 2, 2 * 3 * 2);
  const ComplexMatrix two_step =
      partial_trace_tail(partial_trace_tail(x, 2, {2, 3, 2}), 1, {2, 3});
  const ComplexMatrix one_step = partial_trace_tail(x, 1, {2, 3, 2});
  CHECK(max_abs(ComplexMatrix(two_step - one_step)) < 1e-13);
  CHECK(partial_trace_tail(x, 3, {2, 3, 2}) == x);
  CHECK_THROWS_AS(partial_trace_tail(x, 4, {2, 3, 2}), InputError);
  CHECK_THROWS_AS(partial_trace_tail(x, 1, {2, 3}), InputError);
}

TEST_CASE("positive_negative_parts splits a diagonal matrix exactly") {
  ComplexMatrix h = ComplexMatrix::Zero(3, 3);
  h(0, 0) = 3.0;
  h(1, 1) = -2.0;
  const HermitianDecomposition parts = positive_negative_parts(h);
  CHECK(max_abs(ComplexMatrix(parts.positive_part - matrix_unit(3, 0, 0) * 3.0)) <
        1e-14);
  CHECK(max_abs(ComplexMatrix(parts.negative_part - matrix_unit(3, 1, 1) * 2.0)) <
        1e-14);
}

TEST_CASE("positive_negative_parts reconstructs random Hermitian matrices") {
  Prng rng(14);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix h = random_hermitian(rng, 4);
    const HermitianDecomposition parts = positive_negative_parts(h);
    CHECK(max_abs(ComplexMatrix(h - (parts.positive_part - parts.negative_part))) <
          1e-12);
    // Both parts are PSD: smallest eigenvalue >= -tiny.
    for (const ComplexMatrix* part : {&parts.positive_part, &parts.negative_part}) {
      const HermitianEigen eig = eig_hermitian(*part);
      CHECK(eig.values.minCoeff() > -1e-12);
    }
  }
}

TEST_CASE("tv_norm of a Hermitian matrix equals the SVD trace norm") {
  Prng rng(15);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix h = random_hermitian(rng, 5);
    CHECK(tv_norm(h) == doctest::Approx(trace_norm_svd(h)).epsilon(1e-12));
  }
}

TEST_CASE("tv_norm axioms: zero, absolute homogeneity, triangle inequality") {
  Prng rng(16);
  CHECK(tv_norm(ComplexMatrix::Zero(3, 3)) == 0.0);
  const ComplexMatrix a = random_hermitian(rng, 3);
  const ComplexMatrix b = random_hermitian(rng, 3);
  CHECK(tv_norm(ComplexMatrix(-2.5 * a)) ==
        doctest::Approx(2.5 * tv_norm(a)).epsilon(1e-12));
  CHECK(tv_norm(ComplexMatrix(a + b)) <= tv_norm(a) + tv_norm(b) + 1e-12);
}

TEST_CASE("tv_norm hand value: diag(1/2, -1/2) has norm 1") {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 0.5;
  m(1, 1) = -0.5;
  CHECK(tv_norm(m) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("eig_hermitian returns a descending orthonormal eigensystem") {
  Prng rng(17);
  const ComplexMatrix h = random_hermitian(rng, 6);
  const HermitianEigen eig = eig_hermitian(h);
  for (int i = 0; i + 1 < eig.values.size(); ++i) {
    CHECK(eig.values(i) >= eig.values(i + 1));
  }
  const ComplexMatrix v = eig.vectors;
  CHECK(max_abs(ComplexMatrix(v.adjoint() * v - ComplexMatrix::Identity(6, 6))) <
        1e-12);
  ComplexMatrix recon = ComplexMatrix::Zero(6, 6);
  for (int i = 0; i < 6; ++i) {
    recon += eig.values(i) * (v.col(i) * v.col(i).adjoint());
  }
  CHECK(max_abs(ComplexMatrix(recon - h)) < 1e-12);
}

TEST_CASE("eig_general sorts by modulus and solves the eigenproblem") {
  Prng rng(18);
  const ComplexMatrix m = rng.ginibre(5, 5);
  const GeneralEigen eig = eig_general(m);
  for (int i = 0; i + 1 < eig.values.size(); ++i) {
    CHECK(std::abs(eig.values(i)) >= std::abs(eig.values(i + 1)) - 1e-14);
  }
  for (int i = 0; i < 5; ++i) {
    const ComplexVector residual = m * eig.vectors.col(i) - eig.values(i) * eig.vectors.col(i);
    CHECK(residual.cwiseAbs().maxCoeff() < 1e-11);
  }
}

TEST_CASE("eig_general hand case: nilpotent shift has all-zero spectrum") {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  const GeneralEigen eig = eig_general(m);
  CHECK(std::abs(eig.values(0)) < 1e-14);
  CHECK(std::abs(eig.values(1)) < 1e-14);
}

TEST_CASE("matrix_unit places a single one") {
  const ComplexMatrix e = matrix_unit(3, 1, 2);
  CHECK(e(1, 2) == Complex(1, 0));
  CHECK(e.cwiseAbs().sum() == 1.0);
}

TEST_CASE("is_hermitian and approx_equal behave on simple inputs") {
  ComplexMatrix h(2, 2);
  h << Complex(1, 0), Complex(0, 1), Complex(0, -1), Complex(2, 0);
  CHECK(is_hermitian(h));
  ComplexMatrix g = h;
  g(0, 1) = Complex(0, 1.5);
  CHECK(!is_hermitian(g));
  CHECK(approx_equal(h, h, 0.0));
  CHECK(!approx_equal(h, g, 1e-3));
}

TEST_CASE("ensure_finite rejects NaN and infinity") {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = Complex(std::numeric_limits<double>::quiet_NaN(), 0);
  CHECK_THROWS_AS(ensure_finite(m, "test"), InputError);
  m(0, 0) = Complex(std::numeric_limits<double>::infinity(), 0);
  CHECK_THROWS_AS(ensure_finite(m, "test"), InputError);
  m(0, 0) = Complex(0, 0);
  CHECK_NOTHROW(ensure_finite(m, "test"));
}

TEST_CASE("default_tol is adjustable and restorable") {
  const double before = default_tol();
  set_default_tol(1e-6);
  CHECK(default_tol() == 1e-6);
  set_default_tol(before);
  CHECK(default_tol() == before);
  CHECK_THROWS_AS(set_default_tol(-1.0), InputError);
}
