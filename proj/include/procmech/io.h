// Copyright 2026 The procmech Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PROCMECH_IO_H_
#define PROCMECH_IO_H_

#include <optional>
#include <string>

#include "json.hpp"
#include "procmech/asymmetric.h"
#include "procmech/auctionsim.h"
#include "procmech/entry.h"
#include "procmech/env.h"
#include "procmech/symmetric.h"

namespace procmech {

using Json = nlohmann::json;

// Parses JSON text; InvalidParameter on syntax errors.
Json ParseJson(const std::string& text);
// Reads and parses a file; InvalidParameter if it cannot be read.
Json ReadJsonFile(const std::string& path);

// Environment descriptor:
//   {"family": "constant_elasticity" | "power_elasticity" | "separable_custom",
//    "alpha", "beta", "gamma", "delta", "e_p", "e_i": number, "n": integer,
//    "g": {"name": "power" | "exp", "p": number, "r": number}}
// All keys but "family" are optional. UnknownKey on any other key,
// InvalidParameter on wrong types.
EnvironmentConfig ParseEnvironmentConfig(const Json& j);
Json EnvironmentConfigJson(const EnvironmentConfig& config);

// Mechanism descriptor for verification and simulation:
//   {"kind": "first_score" | "score_floor" | "score_ceiling" | "sole_source",
//    "theta0": number, "kickback": number, "env": {...}}
// "theta0" defaults to the family's optimal threshold; "kickback" overrides
// the implementing kickback of a score ceiling.
struct MechanismDescriptor {
  MechanismKind kind = MechanismKind::kFirstScore;
  std::optional<double> theta0;
  std::optional<double> kickback;
  std::optional<EnvironmentConfig> env;
};
MechanismDescriptor ParseMechanismDescriptor(const Json& j);

// Canonical text: sorted keys, 2-space indent, doubles as %.17g, non-finite
// numbers as null, trailing newline.
std::string CanonicalJson(const Json& j);
// %.17g, or "nan" / "inf" / "-inf".
std::string FormatDouble(double x);

Json SymmetricSolutionJson(const SymmetricSolution& sol);
Json AsymmetricSolutionJson(const AsymmetricSolution& sol);
Json VerificationJson(const VerificationReport& report);
Json SimulationJson(const SimulationReport& report);
Json EntryCurveJson(const EntryCurve& curve);
// "k,utility,is_argmax" rows.
std::string EntryCurveCsv(const EntryCurve& curve);

}  // namespace procmech

#endif  // PROCMECH_IO_H_
