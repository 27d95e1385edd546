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

#include "procmech/io.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "procmech/error.h"

namespace procmech {
namespace {

void RejectUnknownKeys(const Json& j, const std::set<std::string>& allowed,
                       const std::string& where) {
  if (!j.is_object()) {
    Fail(ErrorCode::kInvalidParameter, where + " must be a JSON object");
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) {
      Fail(ErrorCode::kUnknownKey,
           "unknown key \"" + it.key() + "\" in " + where);
    }
  }
}

std::optional<double> OptionalNumber(const Json& j, const char* key) {
  if (!j.contains(key)) return std::nullopt;
  const Json& v = j.at(key);
  if (!v.is_number()) {
    Fail(ErrorCode::kInvalidParameter,
         std::string("\"") + key + "\" must be a number");
  }
  return v.get<double>();
}

std::string RequiredString(const Json& j, const char* key,
                           const std::string& where) {
  if (!j.contains(key)) {
    Fail(ErrorCode::kMissingField,
         std::string("missing \"") + key + "\" in " + where);
  }
  if (!j.at(key).is_string()) {
    Fail(ErrorCode::kInvalidParameter,
         std::string("\"") + key + "\" must be a string");
  }
  return j.at(key).get<std::string>();
}

Family ParseFamily(const std::string& name) {
  if (name == "constant_elasticity" || name == "ConstantElasticity") {
    return Family::kConstantElasticity;
  }
  if (name == "power_elasticity" || name == "PowerElasticity") {
    return Family::kPowerElasticity;
  }
  if (name == "separable_custom" || name == "SeparableCustom") {
    return Family::kSeparableCustom;
  }
  Fail(ErrorCode::kInvalidParameter, "unknown family \"" + name + "\"");
}

MechanismKind ParseKind(const std::string& name) {
  for (MechanismKind k :
       {MechanismKind::kFirstScore, MechanismKind::kScoreFloor,
        MechanismKind::kScoreCeiling, MechanismKind::kSoleSource}) {
    if (name == MechanismKindName(k)) return k;
  }
  Fail(ErrorCode::kInvalidParameter, "unknown mechanism kind \"" + name + "\"");
}

Json Optional(const std::optional<double>& v) {
  return v ? Json(*v) : Json(nullptr);
}

void Write(const Json& j, int indent, std::string& out) {
  const std::string pad(indent + 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(it.key()).dump() + ": ";
        Write(it.value(), indent + 2, out);
      }
      out += "\n" + std::string(indent, ' ') + "}";
      return;
    }
    case Json::value_t::array: {
      bool scalar = true;
      for (const Json& v : j) scalar = scalar && v.is_primitive();
      if (scalar) {
        out += "[";
        for (size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          Write(j[i], indent, out);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        Write(j[i], indent + 2, out);
      }
      out += "\n" + std::string(indent, ' ') + "]";
      return;
    }
    case Json::value_t::number_float: {
      double x = j.get<double>();
      out += std::isfinite(x) ? FormatDouble(x) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

Json ParseJson(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    Fail(ErrorCode::kInvalidParameter, std::string("JSON syntax: ") + e.what());
  }
}

Json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kInvalidParameter, "cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseJson(buffer.str());
}

EnvironmentConfig ParseEnvironmentConfig(const Json& j) {
  RejectUnknownKeys(j, {"family", "alpha", "beta", "gamma", "delta", "e_p",
                        "e_i", "n", "g"},
                    "environment");
  EnvironmentConfig config;
  config.family = ParseFamily(RequiredString(j, "family", "environment"));
  config.alpha = OptionalNumber(j, "alpha");
  config.beta = OptionalNumber(j, "beta");
  config.gamma = OptionalNumber(j, "gamma");
  config.delta = OptionalNumber(j, "delta");
  config.e_p = OptionalNumber(j, "e_p");
  config.e_i = OptionalNumber(j, "e_i");
  if (j.contains("n")) {
    if (!j.at("n").is_number_integer()) {
      Fail(ErrorCode::kInvalidParameter, "\"n\" must be an integer");
    }
    config.n = j.at("n").get<int>();
  }
  if (j.contains("g")) {
    const Json& g = j.at("g");
    RejectUnknownKeys(g, {"name", "p", "r"}, "g");
    GShape shape;
    shape.name = RequiredString(g, "name", "g");
    if (auto p = OptionalNumber(g, "p")) shape.p = *p;
    if (auto r = OptionalNumber(g, "r")) shape.r = *r;
    config.g = shape;
  }
  return config;
}

Json EnvironmentConfigJson(const EnvironmentConfig& c) {
  Json j = Json::object();
  j["family"] = FamilyName(c.family);
  if (c.alpha) j["alpha"] = *c.alpha;
  if (c.beta) j["beta"] = *c.beta;
  if (c.gamma) j["gamma"] = *c.gamma;
  if (c.delta) j["delta"] = *c.delta;
  if (c.e_p) j["e_p"] = *c.e_p;
  if (c.e_i) j["e_i"] = *c.e_i;
  if (c.n) j["n"] = *c.n;
  if (c.g) j["g"] = {{"name", c.g->name}, {"p", c.g->p}, {"r", c.g->r}};
  return j;
}

MechanismDescriptor ParseMechanismDescriptor(const Json& j) {
  RejectUnknownKeys(j, {"kind", "theta0", "kickback", "env"}, "mechanism");
  MechanismDescriptor d;
  d.kind = ParseKind(RequiredString(j, "kind", "mechanism"));
  d.theta0 = OptionalNumber(j, "theta0");
  d.kickback = OptionalNumber(j, "kickback");
  if (d.theta0 && d.kind != MechanismKind::kScoreFloor &&
      d.kind != MechanismKind::kScoreCeiling) {
    Fail(ErrorCode::kInvalidParameter, "theta0 applies to floor/ceiling only");
  }
  if (d.kickback && d.kind != MechanismKind::kScoreCeiling) {
    Fail(ErrorCode::kInvalidParameter, "kickback applies to a ceiling only");
  }
  if (j.contains("env")) d.env = ParseEnvironmentConfig(j.at("env"));
  return d;
}

std::string FormatDouble(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string CanonicalJson(const Json& j) {
  std::string out;
  Write(j, 0, out);
  out += "\n";
  return out;
}

Json SymmetricSolutionJson(const SymmetricSolution& sol) {
  Json j;
  j["n"] = sol.n;
  j["theta"] = sol.theta;
  j["quality"] = sol.q;
  j["scoring_rule"] = sol.s;
  j["score_bid"] = sol.score;
  j["price"] = sol.price;
  j["rent"] = sol.rent;
  j["utility"] = sol.utility;
  j["metadata"] = {{"score_anchor", sol.score_anchor},
                   {"anchor_convention", "s(q(1)) = V(q(1))"}};
  return j;
}

Json AsymmetricSolutionJson(const AsymmetricSolution& sol) {
  Json j;
  j["regime"] = RegimeKindName(sol.regime);
  j["convexity"] = ConvexityClassName(sol.convexity.cls);
  j["convexity_shape"] = ShapeKindName(sol.convexity.shape.kind);
  j["side"] = CensorSideName(sol.side);
  j["theta0"] = sol.theta0;
  j["roots"] = sol.roots;
  j["knife_edge"] = sol.knife_edge;
  j["undetermined"] = sol.undetermined;
  j["favored"] = sol.favored;
  j["utility"] = sol.utility;
  j["utilities"] = {{"symmetric", sol.utility_symmetric},
                    {"sole_sourcing", sol.utility_sole},
                    {"score_floor", Optional(sol.utility_floor_family)},
                    {"score_ceiling", Optional(sol.utility_ceiling_family)}};
  bool floor = sol.side == CensorSide::kRight;
  j["floor"] = floor ? Optional(sol.level) : Json(nullptr);
  j["bonus"] = floor ? Optional(sol.side_payment) : Json(nullptr);
  j["ceiling"] = floor ? Json(nullptr) : Optional(sol.level);
  j["kickback"] = floor ? Json(nullptr) : Optional(sol.side_payment);
  return j;
}

Json VerificationJson(const VerificationReport& r) {
  Json j;
  j["passed"] = r.passed;
  j["max_ic_violation"] = r.max_ic_violation;
  j["tolerance"] = r.tolerance;
  j["utility_scale"] = r.utility_scale;
  j["participation_ok"] = r.participation_ok;
  j["all_single_peaked"] = r.all_single_peaked;
  j["worst_type_profit"] = r.worst_type_profit;
  j["exit_entry_profit"] = Optional(r.exit_entry_profit);
  j["theta"] = r.theta;
  j["interim_profit"] = r.interim_profit;
  Json peaks = Json::array();
  for (const auto& row : r.single_peaked) {
    Json flags = Json::array();
    for (bool b : row) flags.push_back(b);
    peaks.push_back(flags);
  }
  j["single_peaked"] = peaks;
  Json witnesses = Json::array();
  for (const Witness& w : r.witnesses) {
    witnesses.push_back({{"firm", w.firm + 1},
                         {"theta", w.theta},
                         {"quality", w.quality},
                         {"score", w.score},
                         {"gain", w.gain}});
  }
  j["witnesses"] = witnesses;
  return j;
}

Json SimulationJson(const SimulationReport& r) {
  Json j;
  j["draws"] = r.draws;
  j["seed"] = r.seed;
  j["utility"] = r.utility;
  j["std_error"] = r.std_error;
  j["wins"] = r.wins;
  j["ks_statistic"] = r.ks_statistic;
  j["ks_critical_1pct"] = r.ks_critical;
  j["ks_pass"] = r.ks_pass;
  j["histogram_edges"] = r.histogram.edges;
  j["histogram_counts"] = r.histogram.counts;
  return j;
}

Json EntryCurveJson(const EntryCurve& c) {
  Json j;
  j["k"] = c.k;
  j["utility"] = c.utility;
  j["k_star"] = c.k_star;
  j["shape"] = ShapeKindName(c.shape.kind);
  j["fractional_shape"] = ShapeKindName(c.fractional_shape.kind);
  j["hypothesis_ok"] = c.hypothesis_ok;
  j["one_or_all"] = c.one_or_all;
  return j;
}

std::string EntryCurveCsv(const EntryCurve& c) {
  std::string out = "k,utility,is_argmax\n";
  for (size_t i = 0; i < c.k.size(); ++i) {
    out += std::to_string(c.k[i]) + "," + FormatDouble(c.utility[i]) + "," +
           (c.k[i] == c.k_star ? "1" : "0") + "\n";
  }
  return out;
}

}  // namespace procmech
