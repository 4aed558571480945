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

#include "mpsh/mps.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace mpsh {

namespace {

// d^n checked against a cap (throws CapExceededError beyond it).
std::size_t checked_pow(int d, int n, std::size_t cap, const char* what) {
  std::size_t total = 1;
  for (int k = 0; k < n; ++k) {
    if (total > cap / static_cast<std::size_t>(d)) {
      std::ostringstream msg;
      msg << what << ": d^" << n << " exceeds the configured cap " << cap;
      throw CapExceededError(msg.str());
    }
    total *= static_cast<std::size_t>(d);
  }
  if (total > cap) {
    std::ostringstream msg;
    msg << what << ": d^" << n << " exceeds the configured cap " << cap;
    throw CapExceededError(msg.str());
  }
  return total;
}

// Ordered operator products over a site range: entry t is
// A^[first]_{t_1} ... A^[last]_{t_N} with t_1 the slowest-varying digit.
std::vector<ComplexMatrix> window_products(const MPSChain& chain, int first,
                                           int last) {
  const int D = chain.bond_dim;
  std::vector<ComplexMatrix> cur{ComplexMatrix::Identity(D, D)};
  for (int s = first; s <= last; ++s) {
    const KrausFamily& family = chain.site(s);
    std::vector<ComplexMatrix> next;
    next.reserve(cur.size() * family.operators.size());
    for (const ComplexMatrix& p : cur) {
      for (const ComplexMatrix& a : family.operators) next.push_back(p * a);
    }
    cur = std::move(next);
  }
  return cur;
}

}  // namespace

MPSChain::MPSChain(int physical_dim_in, int bond_dim_in,
                   bool translation_invariant_in, std::vector<KrausFamily> sites_in)
    : physical_dim(physical_dim_in),
      bond_dim(bond_dim_in),
      translation_invariant(translation_invariant_in),
      sites(std::move(sites_in)) {
  if (physical_dim <= 0 || bond_dim <= 0) {
    throw InputError("MPSChain: physical and bond dimensions must be positive");
  }
  if (sites.empty()) throw InputError("MPSChain: needs at least one site family");
  if (translation_invariant && sites.size() != 1) {
    throw InputError("MPSChain: a translation-invariant chain has one site family");
  }
  for (const KrausFamily& family : sites) {
    if (family.dim != bond_dim) {
      throw InputError("MPSChain: site family bond dimension mismatch");
    }
    if (family.operators.size() != static_cast<std::size_t>(physical_dim)) {
      throw InputError("MPSChain: site family must have d operators");
    }
    if (family.convention != KrausConvention::heisenberg) {
      throw InputError("MPSChain: site families must use the heisenberg convention");
    }
  }
}

const KrausFamily& MPSChain::site(int k) const {
  if (k < 1) throw InputError("MPSChain::site: sites are 1-based");
  if (translation_invariant) return sites.front();
  if (static_cast<std::size_t>(k) > sites.size()) {
    std::ostringstream msg;
    msg << "MPSChain::site: site " << k << " beyond the " << sites.size()
        << "-site family";
    throw InputError(msg.str());
  }
  return sites[static_cast<std::size_t>(k) - 1];
}

int MPSChain::max_site() const {
  return translation_invariant ? std::numeric_limits<int>::max()
                               : static_cast<int>(sites.size());
}

LocalObservable::LocalObservable(int first_in, int last_in, ComplexMatrix matrix_in)
    : first(first_in), last(last_in), matrix(std::move(matrix_in)) {
  if (first < 1 || last < first) {
    throw InputError("LocalObservable: window must satisfy 1 <= first <= last");
  }
  if (matrix.rows() != matrix.cols() || matrix.rows() == 0) {
    throw InputError("LocalObservable: matrix must be square and nonempty");
  }
  ensure_finite(matrix, "LocalObservable");
}

StateVector state_vector(const MPSChain& chain, int n, const EvalCaps& caps) {
  if (n < 1) throw InputError("state_vector: n must be at least 1");
  if (n > chain.max_site()) {
    throw InputError("state_vector: n beyond the per-site family length");
  }
  const int d = chain.physical_dim;
  const std::size_t total =
      checked_pow(d, n, caps.max_state_amplitudes, "state_vector");

  StateVector psi;
  psi.sites = n;
  psi.physical_dim = d;
  psi.amplitudes.resize(static_cast<Eigen::Index>(total));
  Eigen::Index flat = 0;
  std::function<void(int, const ComplexMatrix&)> descend =
      [&](int k, const ComplexMatrix& prefix) {
        if (k == n) {
          psi.amplitudes(flat++) = prefix.trace();
          return;
        }
        const KrausFamily& family = chain.site(k + 1);
        for (int i = 0; i < d; ++i) descend(k + 1, prefix * family.operators[i]);
      };
  descend(0, ComplexMatrix::Identity(chain.bond_dim, chain.bond_dim));
  return psi;
}

double normalization(const MPSChain& chain, int n) {
  if (n < 1) throw InputError("normalization: n must be at least 1");
  if (n > chain.max_site()) {
    throw InputError("normalization: n beyond the per-site family length");
  }
  ComplexMatrix acc = transfer_channel(chain, 1).matrix();
  for (int k = 2; k <= n; ++k) {
    acc = transfer_channel(chain, k).matrix() * acc;
  }
  const Complex t = superop_trace(SuperOperator(chain.bond_dim, std::move(acc)));
  const double value = t.real();
  if (value < 1e-14) {
    throw DegenerateChainError("normalization: N(n) vanishes numerically");
  }
  return value;
}

double normalization_brute_force(const MPSChain& chain, int n, const EvalCaps& caps) {
  return state_vector(chain, n, caps).amplitudes.squaredNorm();
}

SuperOperator transfer_channel(const MPSChain& chain, int k) {
  return from_kraus(chain.site(k));
}

SuperOperator lift_observable(const MPSChain& chain, const LocalObservable& x,
                              const EvalCaps& caps) {
  if (x.last > chain.max_site()) {
    throw InputError("lift_observable: window beyond the per-site family length");
  }
  const int d = chain.physical_dim;
  const int D = chain.bond_dim;
  const int N = x.window_length();
  checked_pow(d, 2 * N, caps.max_observable_entries, "lift_observable");
  const std::size_t dn = checked_pow(d, N, caps.max_observable_entries,
                                     "lift_observable");
  if (x.matrix.rows() != static_cast<Eigen::Index>(dn)) {
    std::ostringstream msg;
    msg << "lift_observable: matrix is " << x.matrix.rows() << "x"
        << x.matrix.cols() << " but the window needs " << dn << "x" << dn;
    throw InputError(msg.str());
  }

  const std::vector<ComplexMatrix> products = window_products(chain, x.first, x.last);
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(D) * D,
                                        static_cast<Eigen::Index>(D) * D);
  for (std::size_t ti = 0; ti < dn; ++ti) {
    const ComplexMatrix pi_adj = products[ti].adjoint();
    for (std::size_t tj = 0; tj < dn; ++tj) {
      const Complex c = x.matrix(static_cast<Eigen::Index>(ti),
                                 static_cast<Eigen::Index>(tj));
      if (c == Complex(0.0, 0.0)) continue;
      // <i|X|j> P_i† M P_j has matrix P_j^T ⊗ P_i†.
      m += c * kron(products[tj].transpose(), pi_adj);
    }
  }
  return SuperOperator(D, std::move(m));
}

double ExpectationResult::real_value() const {
  if (std::abs(value.imag()) > 1e-10 * std::max(1.0, std::abs(value))) {
    throw NumericalError("expectation value has a non-negligible imaginary part");
  }
  return value.real();
}

ExpectationResult finite_expectation(const MPSChain& chain,
                                     const LocalObservable& x, int n,
                                     const EvalCaps& caps) {
  if (x.first != 1) {
    throw InputError("finite_expectation: observable window must start at site 1");
  }
  const int N = x.window_length();
  if (n < N) throw InputError("finite_expectation: n must cover the window");
  if (n + 1 > chain.max_site()) {
    throw InputError("finite_expectation: n+1 beyond the per-site family length");
  }

  const SuperOperator xhat = lift_observable(chain, x, caps);
  ComplexMatrix acc = xhat.matrix();
  for (int s = N + 1; s <= n + 1; ++s) {
    acc = transfer_channel(chain, s).matrix() * acc;
  }
  const Complex numerator =
      superop_trace(SuperOperator(chain.bond_dim, std::move(acc)));
  const double denominator = normalization(chain, n + 1);

  ExpectationResult result;
  result.value = numerator / denominator;
  result.method = "transfer";

  const int d = chain.physical_dim;
  bool brute_feasible = true;
  std::size_t total = 1;
  for (int k = 0; k < n + 1; ++k) {
    if (total > caps.max_state_amplitudes / static_cast<std::size_t>(d)) {
      brute_feasible = false;
      break;
    }
    total *= static_cast<std::size_t>(d);
  }
  if (brute_feasible && total <= caps.max_state_amplitudes) {
    const StateVector psi = state_vector(chain, n + 1, caps);
    const Eigen::Index head = x.matrix.rows();
    const Eigen::Index tail = psi.amplitudes.size() / head;
    using RowMajorMatrix =
        Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const Eigen::Map<const RowMajorMatrix> psim(psi.amplitudes.data(), head, tail);
    const ComplexMatrix gram = psim * psim.adjoint();
    const double norm2 = psi.amplitudes.squaredNorm();
    if (norm2 < 1e-14) {
      throw DegenerateChainError("finite_expectation: N(n+1) vanishes numerically");
    }
    const Complex brute = (x.matrix * gram).trace() / norm2;
    const double residual = std::abs(brute - result.value);
    if (residual > 1e-10 * std::max(1.0, std::abs(result.value))) {
      std::ostringstream msg;
      msg << "finite_expectation: brute-force and transfer routes disagree by "
          << residual;
      throw NumericalError(msg.str());
    }
    result.method = "brute_force+transfer";
    result.route_residual = residual;
  }
  return result;
}

GaugeReport gauge_check(const MPSChain& chain) {
  GaugeReport report;
  report.site_violations.reserve(chain.sites.size());
  for (const KrausFamily& family : chain.sites) {
    ComplexMatrix gauge = ComplexMatrix::Zero(chain.bond_dim, chain.bond_dim);
    for (const ComplexMatrix& a : family.operators) gauge += a * a.adjoint();
    const double violation = max_abs(
        gauge - ComplexMatrix::Identity(chain.bond_dim, chain.bond_dim));
    report.site_violations.push_back(violation);
    report.max_violation = std::max(report.max_violation, violation);
  }
  return report;
}

ConsistencyReport projective_consistency_check(const MPSChain& chain, int n) {
  if (n < 1) throw InputError("projective_consistency_check: n must be >= 1");
  if (n + 1 > chain.max_site()) {
    throw InputError(
        "projective_consistency_check: needs sites n and n+1 defined");
  }
  const KrausFamily& a = chain.site(n);
  const KrausFamily& b = chain.site(n + 1);
  ConsistencyReport report;
  report.n = n;
  report.violations.reserve(a.operators.size());
  for (const ComplexMatrix& ai : a.operators) {
    ComplexMatrix lhs = ComplexMatrix::Zero(
        static_cast<Eigen::Index>(chain.bond_dim) * chain.bond_dim,
        static_cast<Eigen::Index>(chain.bond_dim) * chain.bond_dim);
    for (const ComplexMatrix& bj : b.operators) {
      const ComplexMatrix prod = ai * bj;
      lhs += kron(prod.adjoint(), prod);
    }
    const double violation = max_abs(lhs - kron(ai.adjoint(), ai));
    report.violations.push_back(violation);
    report.max_violation = std::max(report.max_violation, violation);
  }
  return report;
}

ExpectationResult projective_limit(const MPSChain& chain, const LocalObservable& x,
                                   double consistency_tol, const EvalCaps& caps) {
  if (x.first != 1) {
    throw InputError("projective_limit: observable window must start at site 1");
  }
  const int N = x.window_length();
  if (N + 1 > chain.max_site()) {
    throw InputError("projective_limit: needs site N+1 defined");
  }
  const int last_pair =
      chain.translation_invariant ? 1 : static_cast<int>(chain.sites.size()) - 1;
  for (int n = 1; n <= last_pair; ++n) {
    ConsistencyReport report = projective_consistency_check(chain, n);
    if (report.max_violation > consistency_tol) {
      std::ostringstream msg;
      msg << "projective_limit: consistency identity fails at n = " << n
          << " with violation " << report.max_violation;
      throw NotProjectiveError(msg.str(), std::move(report));
    }
  }

  const SuperOperator xhat = lift_observable(chain, x, caps);
  const Complex numerator =
      superop_trace(compose(transfer_channel(chain, N + 1), xhat));
  const Complex denominator = superop_trace(transfer_channel(chain, 1));
  if (std::abs(denominator) < 1e-14) {
    throw DegenerateChainError("projective_limit: Tr(Phi_1) vanishes");
  }
  ExpectationResult result;
  result.value = numerator / denominator;
  result.method = "projective";
  return result;
}

ExpectationResult ergodic_limit(const MPSChain& chain, const LocalObservable& x,
                                const EvalCaps& caps) {
  if (!chain.translation_invariant) {
    throw InputError("ergodic_limit: chain must be translation invariant");
  }
  if (x.first != 1) {
    throw InputError("ergodic_limit: observable window must start at site 1");
  }
  const SuperOperator phi = transfer_channel(chain, 1);
  SpectralReport spectral = spectral_classification(phi);
  if (!spectral.mixing) {
    throw NotMixingError("ergodic_limit: transfer channel is not mixing",
                         std::move(spectral));
  }
  const ComplexMatrix& rho = spectral.fixed_point->matrix;
  const SuperOperator xhat = lift_observable(chain, x, caps);
  const int D = chain.bond_dim;
  Complex value(0.0, 0.0);
  for (int a = 0; a < D; ++a) {
    for (int b = 0; b < D; ++b) {
      value += rho(a, b) * xhat(matrix_unit(D, a, b)).trace();
    }
  }
  ExpectationResult result;
  result.value = value;
  result.method = "ergodic";
  return result;
}

TraceIdentityCheck trace_product_identity_check(const MPSChain& chain, int n, int k,
                                                const std::vector<int>& i_tuple,
                                                const std::vector<int>& j_tuple) {
  if (n < 1 || k < 0) {
    throw InputError("trace_product_identity_check: need n >= 1 and k >= 0");
  }
  if (i_tuple.size() != static_cast<std::size_t>(n + k) ||
      j_tuple.size() != static_cast<std::size_t>(n)) {
    throw InputError(
        "trace_product_identity_check: tuples must have lengths n+k and n");
  }
  if (n + k > chain.max_site()) {
    throw InputError(
        "trace_product_identity_check: n+k beyond the per-site family length");
  }
  const int D = chain.bond_dim;
  auto op = [&](int site, int index) -> const ComplexMatrix& {
    if (index < 0 || index >= chain.physical_dim) {
      throw InputError("trace_product_identity_check: index outside [0, d)");
    }
    return chain.site(site).operators[static_cast<std::size_t>(index)];
  };

  ComplexMatrix head_i = ComplexMatrix::Identity(D, D);
  ComplexMatrix head_j = ComplexMatrix::Identity(D, D);
  for (int m = 1; m <= n; ++m) {
    head_i = head_i * op(m, i_tuple[static_cast<std::size_t>(m - 1)]);
    head_j = head_j * op(m, j_tuple[static_cast<std::size_t>(m - 1)]);
  }
  ComplexMatrix tail_i = ComplexMatrix::Identity(D, D);
  for (int m = n + 1; m <= n + k; ++m) {
    tail_i = tail_i * op(m, i_tuple[static_cast<std::size_t>(m - 1)]);
  }

  TraceIdentityCheck check;
  check.lhs = std::conj((head_i * tail_i).trace()) * (head_j * tail_i).trace();
  check.rhs = (kron(head_i.adjoint(), head_j) * kron(tail_i.adjoint(), tail_i))
                  .trace();
  check.residual = std::abs(check.lhs - check.rhs);
  return check;
}

ProjectivityReport projectivity_probe(const MPSChain& chain, int n_min, int n_max,
                                      const std::vector<LocalObservable>& probes,
                                      const EvalCaps& caps) {
  if (n_min < 1 || n_max < n_min) {
    throw InputError("projectivity_probe: need 1 <= n_min <= n_max");
  }
  if (n_max + 2 > chain.max_site()) {
    throw InputError("projectivity_probe: n_max+2 beyond the per-site family length");
  }
  const int d = chain.physical_dim;

  std::vector<LocalObservable> set = probes;
  if (set.empty()) {
    // Single-site matrix units plus the Hermitian basis they generate.
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        set.emplace_back(1, 1, matrix_unit(d, a, b));
      }
    }
    for (int a = 0; a < d; ++a) {
      for (int b = a + 1; b < d; ++b) {
        set.emplace_back(1, 1,
                         ComplexMatrix(matrix_unit(d, a, b) + matrix_unit(d, b, a)));
        set.emplace_back(1, 1,
                         ComplexMatrix(Complex(0.0, 1.0) *
                                       (matrix_unit(d, a, b) - matrix_unit(d, b, a))));
      }
    }
  }

  ProjectivityReport report;
  for (int n = n_min; n <= n_max; ++n) {
    double violation = 0.0;
    for (const LocalObservable& x : set) {
      const Complex at_n = finite_expectation(chain, x, n, caps).value;
      const Complex at_n1 = finite_expectation(chain, x, n + 1, caps).value;
      violation = std::max(violation, std::abs(at_n1 - at_n));
    }
    report.n_values.push_back(n);
    report.violations.push_back(violation);
    report.max_violation = std::max(report.max_violation, violation);
  }
  report.projective = report.max_violation <= 100.0 * default_tol();
  return report;
}

}  // namespace mpsh
