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

#include "procmech/cli.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "procmech/asymmetric.h"
#include "procmech/auctionsim.h"
#include "procmech/entry.h"
#include "procmech/error.h"
#include "procmech/io.h"
#include "procmech/symmetric.h"

namespace procmech::cli {
namespace {

struct Options {
  std::string env_path, mech_path, out_dir;
  int grid = 0;
  double tol = 1e-3;
  int64_t draws = 1000000;
  uint64_t seed = 0;
  int bins = 50;
  int n = 0;
  std::string gamma_range = "1.1:4:0.05";
  std::string alpha_range = "0.05:2:0.05";
  std::string param, range;
};

// Result of a command: named artifacts (first one also goes to stdout) and
// an exit status.
struct Artifacts {
  std::vector<std::pair<std::string, std::string>> files;
  int status = kExitOk;
};

std::vector<double> ParseRange(const std::string& text) {
  double start, stop, step;
  char c1, c2, tail;
  std::istringstream in(text);
  if (!(in >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':' ||
      (in >> tail)) {
    Fail(ErrorCode::kInvalidParameter, "range must be start:stop:step");
  }
  if (!(step > 0.0) || stop < start) {
    Fail(ErrorCode::kInvalidParameter, "range needs step > 0 and stop >= start");
  }
  return RangeInclusive(start, stop, step);
}

EnvironmentConfig LoadEnvConfig(const std::string& path) {
  if (path.empty()) Fail(ErrorCode::kMissingField, "--env is required");
  return ParseEnvironmentConfig(ReadJsonFile(path));
}

Environment LoadEnv(const Options& o) {
  return MakeEnvironment(LoadEnvConfig(o.env_path));
}

Artifacts SolveSym(const Options& o) {
  EnvironmentConfig config = LoadEnvConfig(o.env_path);
  Environment env = MakeEnvironment(config);
  SymmetricSolution sol = SolveSymmetric(env, o.grid > 0 ? o.grid : 512);
  Json j = SymmetricSolutionJson(sol);
  j["env"] = EnvironmentConfigJson(config);
  return {{{"solve_sym.json", CanonicalJson(j)}}};
}

Artifacts SolveAsym(const Options& o) {
  EnvironmentConfig config = LoadEnvConfig(o.env_path);
  Json j = AsymmetricSolutionJson(SolveOptimal(MakeEnvironment(config)));
  j["env"] = EnvironmentConfigJson(config);
  return {{{"solve_asym.json", CanonicalJson(j)}}};
}

Artifacts RegimeMap(const Options& o) {
  std::vector<double> gammas = ParseRange(o.gamma_range);
  std::vector<double> alphas = ParseRange(o.alpha_range);
  std::string csv = "gamma,alpha,closed_form,solver,slack,agree\n";
  for (double g : gammas) {
    for (double a : alphas) {
      EnvironmentConfig config;
      config.alpha = a;
      config.gamma = g;
      config.n = 2;
      RegimeKind closed = ClassifyRegimeCE(g, a);
      RegimeKind solved = SolveOptimal(MakeEnvironment(config)).regime;
      csv += FormatDouble(g) + "," + FormatDouble(a) + "," +
             RegimeKindName(closed) + "," + RegimeKindName(solved) + "," +
             FormatDouble(RegimeBoundarySlack(g, a)) + "," +
             (closed == solved ? "1" : "0") + "\n";
    }
  }
  return {{{"regime_map.csv", csv}}};
}

Equilibrium BuildEquilibrium(const Environment& env,
                             const MechanismDescriptor& d) {
  switch (d.kind) {
    case MechanismKind::kFirstScore:
      return SymmetricEquilibrium(env, SolveSymmetric(env));
    case MechanismKind::kScoreFloor: {
      double t0 = d.theta0.value_or(ThresholdFloor(env).theta0);
      return FloorEquilibrium(env, t0);
    }
    case MechanismKind::kScoreCeiling: {
      double t0 = d.theta0.value_or(ThresholdCeiling(env).theta0);
      return CeilingEquilibrium(env, t0, d.kickback);
    }
    case MechanismKind::kSoleSource:
      return SoleSourceEquilibrium(env);
  }
  Fail(ErrorCode::kInvalidParameter, "unknown mechanism");
}

struct Loaded {
  EnvironmentConfig config;
  MechanismDescriptor desc;
};

Loaded LoadMechanism(const Options& o) {
  if (o.mech_path.empty()) Fail(ErrorCode::kMissingField, "--mech is required");
  Loaded l;
  l.desc = ParseMechanismDescriptor(ReadJsonFile(o.mech_path));
  if (!o.env_path.empty()) {
    l.config = LoadEnvConfig(o.env_path);
  } else if (l.desc.env) {
    l.config = *l.desc.env;
  } else {
    Fail(ErrorCode::kMissingField, "environment needed (--env or \"env\")");
  }
  return l;
}

Json MechanismJson(const Equilibrium& eq, const EnvironmentConfig& config) {
  Json j;
  j["kind"] = MechanismKindName(eq.mech.kind);
  j["env"] = EnvironmentConfigJson(config);
  j["favored"] = eq.mech.favored + 1;
  j["theta0"] = eq.theta0 ? Json(*eq.theta0) : Json(nullptr);
  j["floor"] = eq.mech.floor ? Json(*eq.mech.floor) : Json(nullptr);
  j["bonus"] = eq.mech.bonus ? Json(*eq.mech.bonus) : Json(nullptr);
  j["ceiling"] = eq.mech.ceiling ? Json(*eq.mech.ceiling) : Json(nullptr);
  j["kickback"] = eq.mech.kickback ? Json(*eq.mech.kickback) : Json(nullptr);
  j["analytic_utility"] = eq.utility;
  j["off_path_rule"] =
      "no valid bid: contract to the favored firm at its bid";
  return j;
}

Artifacts Verify(const Options& o) {
  Loaded l = LoadMechanism(o);
  Environment env = MakeEnvironment(l.config);
  Equilibrium eq = BuildEquilibrium(env, l.desc);
  VerifyGrid grid;
  if (o.grid > 0) grid.types = grid.qualities = grid.scores = o.grid;
  grid.relative_tolerance = o.tol;
  VerificationReport report = VerifyBne(env, eq.mech, eq.profile, grid);
  Json j = VerificationJson(report);
  j["mechanism"] = MechanismJson(eq, l.config);
  Artifacts a{{{"verify.json", CanonicalJson(j)}}};
  if (!report.passed) a.status = kExitVerification;
  return a;
}

Artifacts SimulateCmd(const Options& o) {
  Loaded l = LoadMechanism(o);
  Environment env = MakeEnvironment(l.config);
  Equilibrium eq = BuildEquilibrium(env, l.desc);
  SimulationReport report =
      Simulate(env, eq.mech, eq.profile, o.draws, o.seed, o.bins);
  Json j = SimulationJson(report);
  j["mechanism"] = MechanismJson(eq, l.config);
  return {{{"simulate.json", CanonicalJson(j)},
           {"histogram.csv", HistogramCsv(report.histogram)}}};
}

Artifacts EntryCmd(const Options& o) {
  Environment env = LoadEnv(o);
  EntryCurve curve = OptimalEntry(env, o.n > 0 ? o.n : env.n());
  return {{{"entry.csv", EntryCurveCsv(curve)},
           {"entry.json", CanonicalJson(EntryCurveJson(curve))}}};
}

Artifacts Sweep(const Options& o) {
  static const std::vector<std::string> kParams = {"alpha", "beta", "gamma",
                                                   "n"};
  if (std::find(kParams.begin(), kParams.end(), o.param) == kParams.end()) {
    Fail(ErrorCode::kInvalidParameter, "--param must be alpha|beta|gamma|n");
  }
  EnvironmentConfig base = LoadEnvConfig(o.env_path);
  std::string csv =
      "param,value,utility_sym,regime,theta0,utility_opt\n";
  for (double v : ParseRange(o.range)) {
    EnvironmentConfig config = base;
    if (o.param == "alpha") config.alpha = v;
    if (o.param == "beta") config.beta = v;
    if (o.param == "gamma") config.gamma = v;
    if (o.param == "n") config.n = static_cast<int>(std::lround(v));
    Environment env = MakeEnvironment(config);
    std::string row = o.param + "," + FormatDouble(v) + "," +
                      FormatDouble(BuyerUtilitySym(env)) + ",";
    if (env.separable().has_value() && env.n() == 2) {
      AsymmetricSolution sol = SolveOptimal(env);
      row += std::string(RegimeKindName(sol.regime)) + "," +
             FormatDouble(sol.theta0) + "," + FormatDouble(sol.utility);
    } else {
      row += ",,";
    }
    csv += row + "\n";
  }
  return {{{"sweep.csv", csv}}};
}

void ReportError(std::ostream& err, const std::string& code,
                 const std::string& message) {
  Json j = {{"error", code}, {"message", message}};
  err << j.dump() << "\n";
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Procurement mechanism solver"};
  app.require_subcommand(1);
  Options o;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", o.out_dir, "Directory for artifacts");
  };
  std::map<std::string, std::function<Artifacts(const Options&)>> commands;

  CLI::App* sym = app.add_subcommand("solve-sym", "Optimal symmetric auction");
  sym->add_option("--env", o.env_path)->required();
  sym->add_option("--grid", o.grid, "Type knots");
  add_common(sym);
  commands["solve-sym"] = SolveSym;

  CLI::App* asym = app.add_subcommand("solve-asym", "Optimal two-firm regime");
  asym->add_option("--env", o.env_path)->required();
  add_common(asym);
  commands["solve-asym"] = SolveAsym;

  CLI::App* map = app.add_subcommand("regime-map", "CE regime grid");
  map->add_option("--gamma", o.gamma_range, "start:stop:step");
  map->add_option("--alpha", o.alpha_range, "start:stop:step");
  add_common(map);
  commands["regime-map"] = RegimeMap;

  CLI::App* ver = app.add_subcommand("verify", "Equilibrium verification");
  ver->add_option("--mech", o.mech_path)->required();
  ver->add_option("--env", o.env_path);
  ver->add_option("--grid", o.grid, "Points per verification axis");
  ver->add_option("--tol", o.tol, "Tolerance relative to utility scale");
  add_common(ver);
  commands["verify"] = Verify;

  CLI::App* sim = app.add_subcommand("simulate", "Monte Carlo simulation");
  sim->add_option("--mech", o.mech_path)->required();
  sim->add_option("--env", o.env_path);
  sim->add_option("--draws", o.draws);
  sim->add_option("--seed", o.seed);
  sim->add_option("--bins", o.bins);
  add_common(sim);
  commands["simulate"] = SimulateCmd;

  CLI::App* ent = app.add_subcommand("entry", "Restricted entry curve");
  ent->add_option("--env", o.env_path)->required();
  ent->add_option("--n", o.n, "Number of potential entrants");
  add_common(ent);
  commands["entry"] = EntryCmd;

  CLI::App* sw = app.add_subcommand("sweep", "One-parameter sweep");
  sw->add_option("--env", o.env_path)->required();
  sw->add_option("--param", o.param)->required();
  sw->add_option("--range", o.range)->required();
  add_common(sw);
  commands["sweep"] = Sweep;

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    ReportError(err, "InvalidArguments", e.what());
    return kExitValidation;
  }

  try {
    std::string name = app.get_subcommands().front()->get_name();
    Artifacts a = commands.at(name)(o);
    out << a.files.front().second;
    if (!o.out_dir.empty()) {
      std::filesystem::create_directories(o.out_dir);
      for (const auto& [file, text] : a.files) {
        std::ofstream f(std::filesystem::path(o.out_dir) / file,
                        std::ios::binary);
        f << text;
        if (!f) Fail(ErrorCode::kInvalidParameter, "cannot write " + file);
      }
    }
    return a.status;
  } catch (const Error& e) {
    ReportError(err, ErrorCodeName(e.code()), e.what());
    return IsValidationError(e.code()) ? kExitValidation : kExitNumeric;
  } catch (const std::filesystem::filesystem_error& e) {
    ReportError(err, "InvalidParameter", e.what());
    return kExitValidation;
  } catch (const std::exception& e) {
    ReportError(err, "Internal", e.what());
    return kExitNumeric;
  }
}

}  // namespace procmech::cli
