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

#include "mpsh/io.hpp"

#include <sstream>
#include <utility>

#include "json.hpp"

namespace mpsh::io {

namespace {

using json = nlohmann::ordered_json;

json complex_to_node(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_node(const json& node) {
  if (!node.is_array() || node.size() != 2 || !node[0].is_number() ||
      !node[1].is_number()) {
    throw InputError("io: complex entries must be [re, im] number pairs");
  }
  return Complex(node[0].get<double>(), node[1].get<double>());
}

json matrix_to_node(const ComplexMatrix& m) {
  json data = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      data.push_back(complex_to_node(m(i, j)));
    }
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

const json& require_key(const json& node, const char* key, const char* what) {
  const auto it = node.find(key);
  if (it == node.end()) {
    std::ostringstream msg;
    msg << "io: " << what << " is missing key \"" << key << "\"";
    throw InputError(msg.str());
  }
  return *it;
}

ComplexMatrix matrix_from_node(const json& node) {
  if (!node.is_object()) throw InputError("io: matrix must be an object");
  const json& rows_node = require_key(node, "rows", "matrix");
  const json& cols_node = require_key(node, "cols", "matrix");
  const json& data = require_key(node, "data", "matrix");
  if (!rows_node.is_number_integer() || !cols_node.is_number_integer()) {
    throw InputError("io: matrix rows/cols must be integers");
  }
  const auto rows = rows_node.get<Eigen::Index>();
  const auto cols = cols_node.get<Eigen::Index>();
  if (rows < 0 || cols < 0 || !data.is_array() ||
      data.size() != static_cast<std::size_t>(rows * cols)) {
    throw InputError("io: matrix data length must equal rows * cols");
  }
  ComplexMatrix m(rows, cols);
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      m(i, j) = complex_from_node(data[k++]);
    }
  }
  return m;
}

json family_to_node(const KrausFamily& family) {
  json ops = json::array();
  for (const ComplexMatrix& a : family.operators) ops.push_back(matrix_to_node(a));
  return json{{"dim", family.dim},
              {"convention", family.convention == KrausConvention::heisenberg
                                 ? "heisenberg"
                                 : "schrodinger"},
              {"operators", std::move(ops)}};
}

KrausFamily family_from_node(const json& node) {
  if (!node.is_object()) throw InputError("io: Kraus family must be an object");
  const json& dim_node = require_key(node, "dim", "Kraus family");
  const json& conv = require_key(node, "convention", "Kraus family");
  const json& ops_node = require_key(node, "operators", "Kraus family");
  if (!dim_node.is_number_integer()) {
    throw InputError("io: Kraus family dim must be an integer");
  }
  if (!conv.is_string()) {
    throw InputError("io: Kraus family convention must be a string");
  }
  const std::string name = conv.get<std::string>();
  KrausConvention convention;
  if (name == "heisenberg") {
    convention = KrausConvention::heisenberg;
  } else if (name == "schrodinger") {
    convention = KrausConvention::schrodinger;
  } else {
    std::ostringstream msg;
    msg << "io: unknown Kraus convention \"" << name << "\"";
    throw InputError(msg.str());
  }
  if (!ops_node.is_array()) {
    throw InputError("io: Kraus family operators must be an array");
  }
  std::vector<ComplexMatrix> ops;
  ops.reserve(ops_node.size());
  for (const json& op : ops_node) ops.push_back(matrix_from_node(op));
  return KrausFamily(dim_node.get<int>(), convention, std::move(ops));
}

json parse(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& err) {
    std::ostringstream msg;
    msg << "io: " << what << " is not valid JSON: " << err.what();
    throw InputError(msg.str());
  }
}

json expectation_to_node(const ExpectationResult& result) {
  json node{{"value", complex_to_node(result.value)}, {"method", result.method}};
  if (result.route_residual) node["route_residual"] = *result.route_residual;
  return node;
}

}  // namespace

std::string matrix_to_json(const ComplexMatrix& m) { return matrix_to_node(m).dump(); }

ComplexMatrix matrix_from_json(const std::string& text) {
  return matrix_from_node(parse(text, "matrix"));
}

std::string kraus_family_to_json(const KrausFamily& family) {
  return family_to_node(family).dump();
}

KrausFamily kraus_family_from_json(const std::string& text) {
  return family_from_node(parse(text, "Kraus family"));
}

std::string chain_to_json(const MPSChain& chain) {
  json sites = json::array();
  for (const KrausFamily& family : chain.sites) sites.push_back(family_to_node(family));
  return json{{"physical_dim", chain.physical_dim},
              {"bond_dim", chain.bond_dim},
              {"translation_invariant", chain.translation_invariant},
              {"sites", std::move(sites)}}
      .dump();
}

MPSChain chain_from_json(const std::string& text) {
  const json node = parse(text, "chain");
  if (!node.is_object()) throw InputError("io: chain must be an object");
  const json& d_node = require_key(node, "physical_dim", "chain");
  const json& bond_node = require_key(node, "bond_dim", "chain");
  const json& ti_node = require_key(node, "translation_invariant", "chain");
  const json& sites_node = require_key(node, "sites", "chain");
  if (!d_node.is_number_integer() || !bond_node.is_number_integer()) {
    throw InputError("io: chain dimensions must be integers");
  }
  if (!ti_node.is_boolean()) {
    throw InputError("io: chain translation_invariant must be a boolean");
  }
  if (!sites_node.is_array()) throw InputError("io: chain sites must be an array");
  std::vector<KrausFamily> sites;
  sites.reserve(sites_node.size());
  for (const json& family : sites_node) sites.push_back(family_from_node(family));
  return MPSChain(d_node.get<int>(), bond_node.get<int>(), ti_node.get<bool>(),
                  std::move(sites));
}

std::string observable_to_json(const LocalObservable& x) {
  return json{{"first", x.first}, {"last", x.last}, {"matrix", matrix_to_node(x.matrix)}}
      .dump();
}

LocalObservable observable_from_json(const std::string& text) {
  const json node = parse(text, "observable");
  if (!node.is_object()) throw InputError("io: observable must be an object");
  const json& first = require_key(node, "first", "observable");
  const json& last = require_key(node, "last", "observable");
  const json& matrix = require_key(node, "matrix", "observable");
  if (!first.is_number_integer() || !last.is_number_integer()) {
    throw InputError("io: observable window bounds must be integers");
  }
  return LocalObservable(first.get<int>(), last.get<int>(),
                         matrix_from_node(matrix));
}

std::string expectation_to_json(const ExpectationResult& result) {
  return expectation_to_node(result).dump();
}

std::string gauge_report_to_json(const GaugeReport& report) {
  return json{{"max_violation", report.max_violation},
              {"site_violations", report.site_violations}}
      .dump();
}

std::string consistency_report_to_json(const ConsistencyReport& report) {
  return json{{"n", report.n},
              {"max_violation", report.max_violation},
              {"violations", report.violations}}
      .dump();
}

std::string spectral_report_to_json(const SpectralReport& report) {
  json eigs = json::array();
  for (const Complex& z : report.eigenvalues) eigs.push_back(complex_to_node(z));
  json node{{"eigenvalues", std::move(eigs)},
            {"spectral_gap", report.spectral_gap},
            {"ergodic", report.ergodic},
            {"mixing", report.mixing}};
  if (report.fixed_point) {
    node["fixed_point"] = matrix_to_node(report.fixed_point->matrix);
  }
  return node.dump();
}

std::string cptp_report_to_json(const CptpReport& report) {
  return json{{"completely_positive", report.completely_positive},
              {"trace_preserving", report.trace_preserving},
              {"choi_min_eigenvalue", report.choi_min_eigenvalue},
              {"completeness_violation", report.completeness_violation},
              {"gauge_violation", report.gauge_violation}}
      .dump();
}

std::string md_report_to_json(const MDReport& report) {
  json node{{"kappa", matrix_to_node(report.kappa)},
            {"kappa_trace", report.kappa_trace},
            {"exactness", report.exactness == MDExactness::closed_form
                              ? "closed_form"
                              : "lower_bound"}};
  if (report.theta) {
    node["theta"] = *report.theta;
  } else {
    node["theta"] = nullptr;
  }
  return node.dump();
}

std::string projectivity_report_to_json(const ProjectivityReport& report) {
  return json{{"n_values", report.n_values},
              {"violations", report.violations},
              {"max_violation", report.max_violation},
              {"projective", report.projective}}
      .dump();
}

}  // namespace mpsh::io
