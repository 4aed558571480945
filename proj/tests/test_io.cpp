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
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "mpsh/io.hpp"
#include "mpsh/models.hpp"
#include "mpsh/random.hpp"

using namespace mpsh;
using json = nlohmann::json;

TEST_CASE("matrix JSON roundtrip is bit-exact") {
  Prng rng(71);
  const ComplexMatrix m = rng.ginibre(3, 2);
  const ComplexMatrix back = io::matrix_from_json(io::matrix_to_json(m));
  REQUIRE(back.rows() == 3);
  REQUIRE(back.cols() == 2);
  CHECK(max_abs(ComplexMatrix(back - m)) == 0.0);
}

TEST_CASE("Kraus family JSON roundtrip preserves convention and operators") {
  const KrausFamily family = depolarizing_chain(0.3).site(1);
  const KrausFamily back = io::kraus_family_from_json(io::kraus_family_to_json(family));
  CHECK(back.dim == family.dim);
  CHECK(back.convention == family.convention);
  REQUIRE(back.operators.size() == family.operators.size());
  for (std::size_t i = 0; i < family.operators.size(); ++i) {
    CHECK(max_abs(ComplexMatrix(back.operators[i] - family.operators[i])) == 0.0);
  }
}

TEST_CASE("chain JSON roundtrip preserves the whole structure") {
  const MPSChain chain = random_gauge_chain(3, 2, 4, false, 72);
  const MPSChain back = io::chain_from_json(io::chain_to_json(chain));
  CHECK(back.physical_dim == chain.physical_dim);
  CHECK(back.bond_dim == chain.bond_dim);
  CHECK(back.translation_invariant == chain.translation_invariant);
  REQUIRE(back.sites.size() == chain.sites.size());
  for (std::size_t s = 0; s < chain.sites.size(); ++s) {
    for (std::size_t i = 0; i < chain.sites[s].operators.size(); ++i) {
      CHECK(max_abs(ComplexMatrix(back.sites[s].operators[i] -
                                  chain.sites[s].operators[i])) == 0.0);
    }
  }
}

TEST_CASE("observable JSON roundtrip") {
  Prng rng(73);
  const ComplexMatrix g = rng.ginibre(4, 4);
  const LocalObservable x(2, 3, ComplexMatrix(0.5 * (g + g.adjoint())));
  const LocalObservable back = io::observable_from_json(io::observable_to_json(x));
  CHECK(back.first == 2);
  CHECK(back.last == 3);
  CHECK(max_abs(ComplexMatrix(back.matrix - x.matrix)) == 0.0);
}

TEST_CASE("malformed input raises InputError with a useful message") {
  CHECK_THROWS_AS(io::matrix_from_json("not json at all"), InputError);
  CHECK_THROWS_AS(io::matrix_from_json("{\"rows\": 2, \"cols\": 2}"), InputError);
  CHECK_THROWS_AS(io::matrix_from_json(
                      "{\"rows\": 2, \"cols\": 2, \"data\": [[1, 0]]}"),
                  InputError);
  CHECK_THROWS_AS(io::matrix_from_json(
                      "{\"rows\": 1, \"cols\": 1, \"data\": [[1]]}"),
                  InputError);
  CHECK_THROWS_WITH_AS(
      io::kraus_family_from_json("{\"dim\": 2, \"operators\": []}"),
      doctest::Contains("convention"), InputError);
  CHECK_THROWS_AS(io::kraus_family_from_json(
                      "{\"dim\": 2, \"convention\": \"sideways\", \"operators\": []}"),
                  InputError);
}

TEST_CASE("chain parsing enforces the chain invariants") {
  const std::string family_json = io::kraus_family_to_json(ghz_chain().site(1));
  // Two site families with translation_invariant = true is inconsistent.
  const std::string bad = std::string("{\"physical_dim\": 2, \"bond_dim\": 2, ") +
                          "\"translation_invariant\": true, \"sites\": [" +
                          family_json + "," + family_json + "]}";
  CHECK_THROWS_AS(io::chain_from_json(bad), InputError);
}

TEST_CASE("report serializers emit parseable JSON with the expected keys") {
  const MPSChain chain = depolarizing_chain(0.3);

  const json gauge = json::parse(io::gauge_report_to_json(gauge_check(chain)));
  CHECK(gauge.contains("max_violation"));
  CHECK(gauge.contains("site_violations"));

  const json consistency = json::parse(
      io::consistency_report_to_json(projective_consistency_check(chain, 1)));
  CHECK(consistency.contains("n"));
  CHECK(consistency["violations"].is_array());

  const json spectral = json::parse(io::spectral_report_to_json(
      spectral_classification(transfer_channel(chain, 1))));
  CHECK(spectral["mixing"].get<bool>());
  CHECK(spectral.contains("fixed_point"));

  const json md = json::parse(io::md_report_to_json(md_closed_form_depolarizing(0.3)));
  CHECK(md["exactness"] == "closed_form");
  CHECK(md["theta"].is_number());

  const json md_zero = json::parse(io::md_report_to_json(md_closed_form_depolarizing(0.75)));
  CHECK(md_zero["theta"].is_null());

  const json probe = json::parse(io::projectivity_report_to_json(
      projectivity_probe(chain, 1, 2)));
  CHECK(!probe["projective"].get<bool>());

  const json cptp = json::parse(io::cptp_report_to_json(is_cptp(chain.site(1))));
  CHECK(cptp["completely_positive"].get<bool>());

  const json expectation = json::parse(io::expectation_to_json(
      finite_expectation(chain, LocalObservable(1, 1, matrix_unit(4, 0, 0)), 2)));
  CHECK(expectation["method"] == "brute_force+transfer");
  CHECK(expectation["value"].is_array());
}
