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
// JSON (de)serialization for chains, observables, Kraus families, and the
// report structs.  The API is string based so the JSON implementation stays
// an internal detail of the library.
//
// Schemas (all complex numbers are [re, im] pairs, matrices are row-major):
//   matrix      {"rows": r, "cols": c, "data": [[re, im], ...]}
//   family      {"dim": D, "convention": "heisenberg"|"schrodinger",
//                "operators": [matrix, ...]}
//   chain       {"physical_dim": d, "bond_dim": D,
//                "translation_invariant": bool, "sites": [family, ...]}
//   observable  {"first": f, "last": l, "matrix": matrix}
//
// Malformed input (bad JSON, missing keys, wrong shapes) raises InputError.

#pragma once

#include <string>

#include "mpsh/channel.hpp"
#include "mpsh/mps.hpp"

namespace mpsh::io {

std::string matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const std::string& text);

std::string kraus_family_to_json(const KrausFamily& family);
KrausFamily kraus_family_from_json(const std::string& text);

std::string chain_to_json(const MPSChain& chain);
MPSChain chain_from_json(const std::string& text);

std::string observable_to_json(const LocalObservable& x);
LocalObservable observable_from_json(const std::string& text);

std::string expectation_to_json(const ExpectationResult& result);
std::string gauge_report_to_json(const GaugeReport& report);
std::string consistency_report_to_json(const ConsistencyReport& report);
std::string spectral_report_to_json(const SpectralReport& report);
std::string cptp_report_to_json(const CptpReport& report);
std::string md_report_to_json(const MDReport& report);
std::string projectivity_report_to_json(const ProjectivityReport& report);

}  // namespace mpsh::io
