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

#include "mpsh/models.hpp"

#include <Eigen/QR>
#include <cmath>
#include <limits>
#include <sstream>

#include "mpsh/random.hpp"

namespace mpsh {

namespace {

void require_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream msg;
    msg << what << ": p must lie in [0, 1], got " << p;
    throw InputError(msg.str());
  }
}

// Thin unitary factor of a Ginibre draw, with each column rotated so the
// corresponding R diagonal entry is real positive; this pins the factor
// uniquely and keeps the draw a deterministic function of the seed.
ComplexMatrix haar_frame(Prng& rng, int rows, int cols) {
  const ComplexMatrix g = rng.ginibre(rows, cols);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q =
      qr.householderQ() * ComplexMatrix::Identity(rows, cols);
  const ComplexMatrix r =
      qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  for (int j = 0; j < cols; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag < 1e-12) {
      throw NumericalError("haar_frame: near-singular Ginibre draw");
    }
    q.col(j) *= r(j, j) / mag;
  }
  return q;
}

KrausFamily gauge_family(Prng& rng, int d, int D) {
  const ComplexMatrix q = haar_frame(rng, d * D, D);
  std::vector<ComplexMatrix> ops;
  ops.reserve(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    // Row block i of q^dagger; the blocks satisfy sum_i A_i A_i^dagger = I
    // because q has orthonormal columns.
    ops.push_back(q.block(i * D, 0, D, D).adjoint());
  }
  return KrausFamily(D, KrausConvention::heisenberg, std::move(ops));
}

}  // namespace

PauliMatrices paulis() {
  PauliMatrices p;
  p.identity = ComplexMatrix::Identity(2, 2);
  p.x = ComplexMatrix::Zero(2, 2);
  p.x(0, 1) = 1.0;
  p.x(1, 0) = 1.0;
  p.y = ComplexMatrix::Zero(2, 2);
  p.y(0, 1) = Complex(0.0, -1.0);
  p.y(1, 0) = Complex(0.0, 1.0);
  p.z = ComplexMatrix::Identity(2, 2);
  p.z(1, 1) = -1.0;
  return p;
}

MPSChain ghz_chain() {
  ComplexMatrix a1 = ComplexMatrix::Zero(2, 2);
  a1(0, 0) = 1.0;
  ComplexMatrix a2 = ComplexMatrix::Zero(2, 2);
  a2(1, 1) = 1.0;
  KrausFamily family(2, KrausConvention::heisenberg, {a1, a2});
  return MPSChain(2, 2, true, {std::move(family)});
}

Complex ghz_closed_form(const LocalObservable& x) {
  if (x.first != 1) {
    throw InputError("ghz_closed_form: observable window must start at site 1");
  }
  const Eigen::Index dim = x.matrix.rows();
  return 0.5 * (x.matrix(0, 0) + x.matrix(dim - 1, dim - 1));
}

MPSChain depolarizing_chain(double p) {
  require_probability(p, "depolarizing_chain");
  const PauliMatrices sigma = paulis();
  const double c0 = std::sqrt(1.0 - p);
  const double ck = std::sqrt(p / 3.0);
  std::vector<ComplexMatrix> ops{c0 * sigma.identity, ck * sigma.x, ck * sigma.y,
                                 ck * sigma.z};
  KrausFamily family(2, KrausConvention::heisenberg, std::move(ops));
  return MPSChain(4, 2, true, {std::move(family)});
}

ComplexMatrix depolarizing_apply_closed_form(double p, const ComplexMatrix& m) {
  require_probability(p, "depolarizing_apply_closed_form");
  if (m.rows() != 2 || m.cols() != 2) {
    throw InputError("depolarizing_apply_closed_form: matrix must be 2x2");
  }
  const double mu = 1.0 - 4.0 * p / 3.0;
  return mu * m +
         (2.0 * p / 3.0) * m.trace() * ComplexMatrix::Identity(2, 2);
}

double depolarizing_normalization_closed_form(double p, int n) {
  require_probability(p, "depolarizing_normalization_closed_form");
  if (n < 1) throw InputError("depolarizing_normalization_closed_form: n >= 1");
  return 1.0 + 3.0 * std::pow(1.0 - 4.0 * p / 3.0, n);
}

Complex depolarizing_site_closed_form(double p, const ComplexMatrix& x, int n) {
  require_probability(p, "depolarizing_site_closed_form");
  if (x.rows() != 4 || x.cols() != 4) {
    throw InputError("depolarizing_site_closed_form: observable must be 4x4");
  }
  if (n < 1) throw InputError("depolarizing_site_closed_form: n >= 1");
  const double mu_n = std::pow(1.0 - 4.0 * p / 3.0, n);
  const double traces[4] = {2.0 * std::sqrt(1.0 - p), 0.0, 0.0, 0.0};
  const double weights[4] = {1.0 - p, p / 3.0, p / 3.0, p / 3.0};
  Complex numerator(0.0, 0.0);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      Complex term = mu_n * traces[i] * traces[j];
      if (i == j) term += (1.0 - mu_n) * weights[i];
      numerator += x(i, j) * term;
    }
  }
  return numerator / depolarizing_normalization_closed_form(p, n + 1);
}

Complex depolarizing_site_limit_closed_form(double p, const ComplexMatrix& x) {
  require_probability(p, "depolarizing_site_limit_closed_form");
  if (x.rows() != 4 || x.cols() != 4) {
    throw InputError("depolarizing_site_limit_closed_form: observable must be 4x4");
  }
  if (p == 0.0) {
    throw InputError(
        "depolarizing_site_limit_closed_form: no limit at p = 0 (chain is pure)");
  }
  const double weights[4] = {1.0 - p, p / 3.0, p / 3.0, p / 3.0};
  Complex value(0.0, 0.0);
  for (int i = 0; i < 4; ++i) value += x(i, i) * weights[i];
  return value;
}

double depolarizing_two_site_projector_limit(double p) {
  require_probability(p, "depolarizing_two_site_projector_limit");
  return (1.0 - p) * (1.0 - p);
}

double depolarizing_theta_closed_form(double p) {
  require_probability(p, "depolarizing_theta_closed_form");
  const double c = std::min(2.0 * p / 3.0, 1.0 - 2.0 * p / 3.0);
  const double trace = 2.0 * c;
  if (trace >= 1.0) return std::numeric_limits<double>::infinity();
  return -std::log1p(-trace);
}

MPSChain random_gauge_chain(int physical_dim, int bond_dim, int sites,
                            bool translation_invariant, std::uint64_t seed) {
  if (physical_dim < 1 || bond_dim < 1 || sites < 1) {
    throw InputError("random_gauge_chain: dimensions and sites must be positive");
  }
  if (translation_invariant && sites != 1) {
    throw InputError("random_gauge_chain: translation-invariant chains take sites=1");
  }
  Prng rng(seed);
  std::vector<KrausFamily> families;
  families.reserve(static_cast<std::size_t>(sites));
  for (int s = 0; s < sites; ++s) {
    families.push_back(gauge_family(rng, physical_dim, bond_dim));
  }
  MPSChain chain(physical_dim, bond_dim, translation_invariant,
                 std::move(families));
  if (gauge_check(chain).max_violation > 1e-12) {
    throw NumericalError("random_gauge_chain: gauge invariant violated");
  }
  return chain;
}

MPSChain random_projector_chain(int physical_dim, int bond_dim,
                                std::uint64_t seed) {
  if (physical_dim < 1 || bond_dim < 1) {
    throw InputError("random_projector_chain: dimensions must be positive");
  }
  Prng rng(seed);
  const ComplexMatrix u = haar_frame(rng, bond_dim, bond_dim);
  // Partition the basis directions uniformly at random over the d outcomes.
  std::vector<int> part(static_cast<std::size_t>(bond_dim));
  for (int& slot : part) {
    slot = static_cast<int>(rng.uniform() * physical_dim);
    if (slot == physical_dim) slot = physical_dim - 1;
  }
  std::vector<ComplexMatrix> ops(
      static_cast<std::size_t>(physical_dim),
      ComplexMatrix::Zero(bond_dim, bond_dim));
  for (int b = 0; b < bond_dim; ++b) {
    const ComplexVector column = u.col(b);
    ops[static_cast<std::size_t>(part[static_cast<std::size_t>(b)])] +=
        column * column.adjoint();
  }
  KrausFamily family(bond_dim, KrausConvention::heisenberg, std::move(ops));
  return MPSChain(physical_dim, bond_dim, true, {std::move(family)});
}

}  // namespace mpsh
