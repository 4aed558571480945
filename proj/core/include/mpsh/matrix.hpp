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

#include <vector>

#include "mpsh/types.hpp"

namespace mpsh {

// Kronecker product; block (i,j) of the result is a(i,j) * b.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Plain diagonal-sum trace. Throws InputError on non-square input.
Complex trace(const ComplexMatrix& a);

// Partial trace over the trailing tensor factors of x, whose row/column
// index space factorizes as dims[0] x dims[1] x ... with dims[0] the
// slowest-varying index. The first `keep` factors are retained.
ComplexMatrix partial_trace_tail(const ComplexMatrix& x, int keep,
                                 const std::vector<int>& dims);

// Spectral split h = positive_part - negative_part with both parts PSD.
struct HermitianDecomposition {
  ComplexMatrix positive_part;
  ComplexMatrix negative_part;
};

// Requires h Hermitian within tol (absolute, entrywise).
HermitianDecomposition positive_negative_parts(const ComplexMatrix& h,
                                               double tol = default_tol());

// Total-variation norm: sum of the trace norms of the Hermitian and
// anti-Hermitian parts, ||M|| = Tr(Re(M)_+ + Re(M)_-) + Tr(Im(M)_+ + Im(M)_-)
// where Re(M) = (M + M*)/2 and Im(M) = (M - M*)/(2i).
double tv_norm(const ComplexMatrix& m);

struct HermitianEigen {
  RealVector values;      // sorted by descending value
  ComplexMatrix vectors;  // columns, same order, orthonormal
};

struct GeneralEigen {
  ComplexVector values;   // sorted by descending modulus
  ComplexMatrix vectors;  // columns, same order, unit norm
};

// Hermitian eigendecomposition (input checked Hermitian within tol).
HermitianEigen eig_hermitian(const ComplexMatrix& h, double tol = default_tol());

// General complex eigendecomposition.
GeneralEigen eig_general(const ComplexMatrix& m);

// --- small shared helpers ---

// Matrix unit E_kl (1 at row k, column l) of size dim x dim.
ComplexMatrix matrix_unit(int dim, int k, int l);

// Largest entrywise modulus.
double max_abs(const ComplexMatrix& m);

// Entrywise check ||a - b||_max <= tol.
bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b,
                  double tol = default_tol());

bool is_hermitian(const ComplexMatrix& m, double tol = default_tol());

// Throws InputError if any entry is NaN or infinite.
void ensure_finite(const ComplexMatrix& m, const char* context);

}  // namespace mpsh
