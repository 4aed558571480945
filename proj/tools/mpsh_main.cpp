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
// mpsh: command-line front end for the Heisenberg-picture matrix product
// state library.
//
// Exit codes:
//   0  success
//   2  structured refusal (not mixing, not projective, no certificate,
//      or a verify check failed)
//   3  bad input (CLI usage, malformed files, values out of range, caps)
//   4  numerical failure (route disagreement, degenerate chain/fixed space)

#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mpsh/channel.hpp"
#include "mpsh/io.hpp"
#include "mpsh/models.hpp"
#include "mpsh/mps.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace mpsh;

std::string utc_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

json complex_node(const Complex& z) { return json::array({z.real(), z.imag()}); }

json parsed(const std::string& text) { return json::parse(text); }

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw InputError("cannot open output file: " + out_path);
  out << text << "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open input file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct CommonOptions {
  std::string out;
  std::string format = "json";
  double tol = 0.0;  // 0 means leave the ambient default alone
  std::size_t cap = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--out", out, "Write the report to this file (default: stdout)");
    cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--tol", tol,
                    "Override the ambient tolerance (also settable via MPSH_TOL)");
    cmd->add_option("--cap", cap,
                    "Cap on dense state/observable sizes for exact evaluation");
  }

  void apply() const {
    if (tol != 0.0) set_default_tol(tol);
  }

  EvalCaps caps() const {
    EvalCaps caps;
    if (cap != 0) {
      caps.max_state_amplitudes = cap;
      caps.max_observable_entries = cap;
    }
    return caps;
  }
};

json expectation_node(const ExpectationResult& result) {
  return parsed(io::expectation_to_json(result));
}

// --------------------------------------------------------------------------
// ghz: finite-volume and limit expectations on the GHZ chain.

int run_ghz(int n_max, const CommonOptions& common) {
  const MPSChain chain = ghz_chain();
  const PauliMatrices sigma = paulis();
  const EvalCaps caps = common.caps();

  struct Entry {
    std::string name;
    LocalObservable x;
  };
  std::vector<Entry> observables;
  observables.push_back({"sz_site1", LocalObservable(1, 1, sigma.z)});
  observables.push_back({"e00_site1", LocalObservable(1, 1, matrix_unit(2, 0, 0))});
  observables.push_back({"sx_site1", LocalObservable(1, 1, sigma.x)});
  observables.push_back({"zz_sites12", LocalObservable(1, 2, kron(sigma.z, sigma.z))});

  json report;
  report["command"] = "ghz";
  report["timestamp"] = utc_timestamp();
  report["spectral"] = parsed(io::spectral_report_to_json(
      spectral_classification(transfer_channel(chain, 1))));
  report["normalization_n4"] = normalization(chain, 4);

  json entries = json::array();
  for (const Entry& entry : observables) {
    json node;
    node["name"] = entry.name;
    json finite = json::array();
    for (int n = entry.x.last; n <= n_max; ++n) {
      json row;
      row["n"] = n;
      row["expectation"] = expectation_node(finite_expectation(chain, entry.x, n, caps));
      finite.push_back(std::move(row));
    }
    node["finite"] = std::move(finite);
    node["projective_limit"] =
        expectation_node(projective_limit(chain, entry.x, 1e-8, caps));
    node["closed_form"] = complex_node(ghz_closed_form(entry.x));
    entries.push_back(std::move(node));
  }
  report["observables"] = std::move(entries);
  emit(report.dump(2), common.out);
  return 0;
}

// --------------------------------------------------------------------------
// depolarizing: spectral data, mixing certificate, expectations and limits.

int run_depolarizing(double p, int n_max, const CommonOptions& common) {
  const MPSChain chain = depolarizing_chain(p);
  const SuperOperator phi = transfer_channel(chain, 1);
  const EvalCaps caps = common.caps();

  json report;
  report["command"] = "depolarizing";
  report["timestamp"] = utc_timestamp();
  report["p"] = p;
  report["spectral"] = parsed(io::spectral_report_to_json(spectral_classification(phi)));

  const MDReport closed = md_closed_form_depolarizing(p);
  const MDReport searched = md_sphere_search(phi);
  report["md_closed_form"] = parsed(io::md_report_to_json(closed));
  report["md_sphere_search"] = parsed(io::md_report_to_json(searched));

  report["normalization"] = {
      {"n", 2},
      {"value", normalization(chain, 2)},
      {"closed_form", depolarizing_normalization_closed_form(p, 2)}};

  const LocalObservable e00(1, 1, matrix_unit(4, 0, 0));
  report["site_observable"] = "E00";
  json finite = json::array();
  for (int n = 1; n <= n_max; ++n) {
    json row;
    row["n"] = n;
    row["expectation"] = expectation_node(finite_expectation(chain, e00, n, caps));
    row["closed_form"] = complex_node(depolarizing_site_closed_form(p, e00.matrix, n));
    finite.push_back(std::move(row));
  }
  report["finite"] = std::move(finite);

  report["probe"] = parsed(io::projectivity_report_to_json(
      projectivity_probe(chain, 1, std::min(3, n_max), {}, caps)));

  // The ergodic limit refuses when the transfer channel is not mixing
  // (p = 0); that surfaces as a structured error and exit code 2.
  report["ergodic_limit"] = expectation_node(ergodic_limit(chain, e00, caps));
  report["limit_closed_form"] =
      complex_node(depolarizing_site_limit_closed_form(p, e00.matrix));

  const LocalObservable e00e00(1, 2, kron(matrix_unit(4, 0, 0), matrix_unit(4, 0, 0)));
  report["two_site_projector_limit"] =
      expectation_node(ergodic_limit(chain, e00e00, caps));
  report["two_site_projector_closed_form"] = depolarizing_two_site_projector_limit(p);

  emit(report.dump(2), common.out);
  return 0;
}

// --------------------------------------------------------------------------
// random: draw a gauge-correct chain and print it as loadable JSON.

int run_random(int d, int bond, int sites, bool translation_invariant,
               std::uint64_t seed, const CommonOptions& common) {
  const MPSChain chain =
      random_gauge_chain(d, bond, sites, translation_invariant, seed);
  emit(io::chain_to_json(chain), common.out);
  return 0;
}

// --------------------------------------------------------------------------
// verify: structural checks on a chain loaded from JSON.

int run_verify(const std::string& chain_path, std::vector<std::string> checks,
               const CommonOptions& common) {
  const MPSChain chain = io::chain_from_json(read_file(chain_path));
  if (checks.empty()) checks = {"gauge", "consistency"};
  const double threshold = 100.0 * default_tol();

  json report;
  report["command"] = "verify";
  report["timestamp"] = utc_timestamp();
  report["chain"] = chain_path;
  report["threshold"] = threshold;

  bool all_passed = true;
  json results;
  for (const std::string& check : checks) {
    json node;
    bool passed = false;
    if (check == "gauge") {
      const GaugeReport gauge = gauge_check(chain);
      passed = gauge.max_violation <= threshold;
      node["report"] = parsed(io::gauge_report_to_json(gauge));
    } else if (check == "consistency") {
      const int last_pair = chain.translation_invariant
                                ? 1
                                : static_cast<int>(chain.sites.size()) - 1;
      double max_violation = 0.0;
      json reports = json::array();
      for (int n = 1; n <= last_pair; ++n) {
        const ConsistencyReport consistency = projective_consistency_check(chain, n);
        max_violation = std::max(max_violation, consistency.max_violation);
        reports.push_back(parsed(io::consistency_report_to_json(consistency)));
      }
      passed = max_violation <= threshold;
      node["report"] = std::move(reports);
      node["max_violation"] = max_violation;
    } else if (check == "cptp") {
      // A gauge-correct heisenberg family realizes a CPTP transfer channel;
      // the certificate is complete positivity plus the gauge condition.
      double worst_gauge = 0.0;
      double worst_choi = 0.0;
      json reports = json::array();
      for (const KrausFamily& family : chain.sites) {
        const CptpReport cptp = is_cptp(family, threshold);
        worst_gauge = std::max(worst_gauge, cptp.gauge_violation);
        worst_choi = std::min(worst_choi, cptp.choi_min_eigenvalue);
        reports.push_back(parsed(io::cptp_report_to_json(cptp)));
      }
      passed = worst_gauge <= threshold && worst_choi >= -threshold;
      node["report"] = std::move(reports);
    } else if (check == "spectral") {
      const SpectralReport spectral =
          spectral_classification(transfer_channel(chain, 1));
      passed = spectral.mixing;
      node["report"] = parsed(io::spectral_report_to_json(spectral));
    } else {
      throw InputError("verify: unknown check \"" + check +
                       "\" (expected gauge, consistency, cptp, or spectral)");
    }
    node["passed"] = passed;
    all_passed = all_passed && passed;
    results[check] = std::move(node);
  }
  report["checks"] = std::move(results);
  report["passed"] = all_passed;
  emit(report.dump(2), common.out);
  return all_passed ? 0 : 2;
}

// --------------------------------------------------------------------------
// converge: total-variation decay against the Markov-Dobrushin bound.

int run_converge(double p, const std::string& chain_path, int n_max,
                 const CommonOptions& common) {
  SuperOperator phi = SuperOperator::identity_map(1);
  MDReport md;
  if (!chain_path.empty()) {
    const MPSChain chain = io::chain_from_json(read_file(chain_path));
    phi = transfer_channel(chain, 1);
    // The sphere search can return a spuriously positive certificate for a
    // non-mixing channel (a finite grid misses the degenerate direction), so
    // classify first and refuse with evidence.
    const SpectralReport spectral = spectral_classification(phi);
    if (!spectral.mixing) {
      throw NotMixingError("converge: the transfer channel is not mixing",
                           spectral);
    }
    md = md_sphere_search(phi);
  } else {
    phi = from_kraus(depolarizing_chain(p).site(1));
    md = md_closed_form_depolarizing(p);
  }
  const double theta = mixing_rate(md);
  const DensityMatrix target = fixed_point(phi);
  const int dim = static_cast<int>(target.matrix.rows());

  ComplexMatrix state = matrix_unit(dim, 0, 0);
  std::vector<double> distances;
  std::vector<double> bounds;
  for (int n = 0; n <= n_max; ++n) {
    distances.push_back(tv_norm(state - target.matrix));
    bounds.push_back(2.0 * std::exp(-theta * n));
    state = phi(state);
  }

  if (common.format == "csv") {
    std::ostringstream out;
    out.precision(17);
    out << "n,tv_distance,bound";
    for (int n = 0; n <= n_max; ++n) {
      out << "\n" << n << "," << distances[static_cast<std::size_t>(n)] << ","
          << bounds[static_cast<std::size_t>(n)];
    }
    emit(out.str(), common.out);
    return 0;
  }

  json report;
  report["command"] = "converge";
  report["timestamp"] = utc_timestamp();
  if (chain_path.empty()) {
    report["p"] = p;
  } else {
    report["chain"] = chain_path;
  }
  report["theta"] = theta;
  report["md"] = parsed(io::md_report_to_json(md));
  json rows = json::array();
  for (int n = 0; n <= n_max; ++n) {
    rows.push_back({{"n", n},
                    {"tv_distance", distances[static_cast<std::size_t>(n)]},
                    {"bound", bounds[static_cast<std::size_t>(n)]}});
  }
  report["rows"] = std::move(rows);
  emit(report.dump(2), common.out);
  return 0;
}

// --------------------------------------------------------------------------
// probe: volume-independence scan for a chain.

int run_probe(double p, bool p_given, const std::string& chain_path, int n_min,
              int n_max, const CommonOptions& common) {
  if (p_given == !chain_path.empty()) {
    throw InputError("probe: give exactly one of --p or --chain");
  }
  const MPSChain chain = p_given ? depolarizing_chain(p)
                                 : io::chain_from_json(read_file(chain_path));
  const ProjectivityReport probe =
      projectivity_probe(chain, n_min, n_max, {}, common.caps());

  json report;
  report["command"] = "probe";
  report["timestamp"] = utc_timestamp();
  if (p_given) {
    report["p"] = p;
  } else {
    report["chain"] = chain_path;
  }
  report["report"] = parsed(io::projectivity_report_to_json(probe));
  report["verdict"] = probe.projective ? "projective" : "non_projective";
  emit(report.dump(2), common.out);
  return 0;
}

json error_node(const char* kind, const std::exception& err) {
  return json{{"error", kind}, {"message", err.what()}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heisenberg-picture matrix product state toolkit"};
  app.require_subcommand(1);

  // ghz
  CLI::App* ghz = app.add_subcommand("ghz", "Study the GHZ chain");
  int ghz_n_max = 6;
  ghz->add_option("--n-max", ghz_n_max, "Largest finite volume")->check(CLI::Range(2, 12));
  CommonOptions ghz_common;
  ghz_common.attach(ghz);

  // depolarizing
  CLI::App* dep = app.add_subcommand("depolarizing", "Study the depolarizing chain");
  double dep_p = 0.3;
  int dep_n_max = 6;
  dep->add_option("--p", dep_p, "Depolarizing probability")->required();
  dep->add_option("--n-max", dep_n_max, "Largest finite volume")->check(CLI::Range(1, 12));
  CommonOptions dep_common;
  dep_common.attach(dep);

  // random
  CLI::App* random = app.add_subcommand("random", "Draw a random gauge-correct chain");
  int random_d = 2;
  int random_bond = 2;
  int random_sites = 1;
  bool random_ti = false;
  std::uint64_t random_seed = 1;
  random->add_option("--d", random_d, "Physical dimension")->check(CLI::Range(1, 16));
  random->add_option("--D", random_bond, "Bond dimension")->check(CLI::Range(1, 16));
  random->add_option("--sites", random_sites, "Number of site families")
      ->check(CLI::Range(1, 64));
  random->add_flag("--ti", random_ti, "Translation invariant (one site family)");
  random->add_option("--seed", random_seed, "PRNG seed");
  CommonOptions random_common;
  random_common.attach(random);

  // verify
  CLI::App* verify = app.add_subcommand("verify", "Run structural checks on a chain");
  std::string verify_chain;
  std::vector<std::string> verify_checks;
  verify->add_option("--chain", verify_chain, "Chain JSON file")->required();
  verify->add_option("--checks", verify_checks,
                     "Checks to run (gauge, consistency, cptp, spectral)")
      ->delimiter(',');
  CommonOptions verify_common;
  verify_common.attach(verify);

  // converge
  CLI::App* converge =
      app.add_subcommand("converge", "Total-variation decay vs. the mixing bound");
  double converge_p = 0.3;
  std::string converge_chain;
  int converge_n_max = 20;
  CLI::Option* converge_p_opt =
      converge->add_option("--p", converge_p, "Depolarizing probability");
  converge->add_option("--chain", converge_chain, "Chain JSON file")
      ->excludes(converge_p_opt);
  converge->add_option("--n-max", converge_n_max, "Number of iterations")
      ->check(CLI::Range(1, 10000));
  CommonOptions converge_common;
  converge_common.attach(converge);

  // probe
  CLI::App* probe = app.add_subcommand("probe", "Volume-independence probe");
  double probe_p = 0.0;
  std::string probe_chain;
  int probe_n_min = 1;
  int probe_n_max = 4;
  CLI::Option* probe_p_opt = probe->add_option("--p", probe_p, "Depolarizing probability");
  probe->add_option("--chain", probe_chain, "Chain JSON file")->excludes(probe_p_opt);
  probe->add_option("--n-min", probe_n_min, "Smallest volume")->check(CLI::Range(1, 16));
  probe->add_option("--n-max", probe_n_max, "Largest volume")->check(CLI::Range(1, 16));
  CommonOptions probe_common;
  probe_common.attach(probe);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& help) {
    return app.exit(help);
  } catch (const CLI::CallForAllHelp& help) {
    return app.exit(help);
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return 3;
  }

  try {
    if (app.got_subcommand(ghz)) {
      ghz_common.apply();
      return run_ghz(ghz_n_max, ghz_common);
    }
    if (app.got_subcommand(dep)) {
      dep_common.apply();
      return run_depolarizing(dep_p, dep_n_max, dep_common);
    }
    if (app.got_subcommand(random)) {
      random_common.apply();
      return run_random(random_d, random_bond, random_sites, random_ti,
                        random_seed, random_common);
    }
    if (app.got_subcommand(verify)) {
      verify_common.apply();
      return run_verify(verify_chain, verify_checks, verify_common);
    }
    if (app.got_subcommand(converge)) {
      converge_common.apply();
      return run_converge(converge_p, converge_chain, converge_n_max,
                          converge_common);
    }
    if (app.got_subcommand(probe)) {
      probe_common.apply();
      return run_probe(probe_p, probe->count("--p") > 0, probe_chain,
                       probe_n_min, probe_n_max, probe_common);
    }
    throw InputError("no subcommand selected");
  } catch (const NotMixingError& err) {
    json node = error_node("not_mixing", err);
    node["spectral"] = parsed(io::spectral_report_to_json(err.report));
    std::cerr << node.dump(2) << "\n";
    return 2;
  } catch (const NotProjectiveError& err) {
    json node = error_node("not_projective", err);
    node["consistency"] = parsed(io::consistency_report_to_json(err.report));
    std::cerr << node.dump(2) << "\n";
    return 2;
  } catch (const NoErgodicityCertificateError& err) {
    std::cerr << error_node("no_certificate", err).dump(2) << "\n";
    return 2;
  } catch (const CapExceededError& err) {
    std::cerr << error_node("cap_exceeded", err).dump(2) << "\n";
    return 3;
  } catch (const InputError& err) {
    std::cerr << error_node("input", err).dump(2) << "\n";
    return 3;
  } catch (const Error& err) {
    std::cerr << error_node("numerical", err).dump(2) << "\n";
    return 4;
  } catch (const std::exception& err) {
    std::cerr << error_node("internal", err).dump(2) << "\n";
    return 4;
  }
}
