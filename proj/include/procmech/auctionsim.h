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

#ifndef PROCMECH_AUCTIONSIM_H_
#define PROCMECH_AUCTIONSIM_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "procmech/env.h"
#include "procmech/numerics.h"
#include "procmech/symmetric.h"

namespace procmech {

enum class MechanismKind { kFirstScore, kScoreFloor, kScoreCeiling, kSoleSource };
const char* MechanismKindName(MechanismKind kind);

// Scoring mechanism. Bids are (quality, price); the score is s(q) - price.
// Firm indices are 0-based; ties go to the favored firm, then to the lower
// index. Off-path cells without a valid bid (all scores below the floor, or
// all above the ceiling) award the contract to the favored firm at its bid.
struct MechanismSpec {
  MechanismKind kind = MechanismKind::kFirstScore;
  int n = 2;
  Fn1 score_rule;
  std::optional<double> floor, bonus;        // kScoreFloor
  std::optional<double> ceiling, kickback;   // kScoreCeiling
  int favored = 0;
};

// Throws InvalidParameter on missing or extra parameters.
void ValidateMechanism(const MechanismSpec& mech);

struct Bid {
  double quality = 0.0;
  double price = 0.0;
};

struct Award {
  double share = 0.0;     // 1 for the winner, 0 otherwise
  double transfer = 0.0;  // money paid to the firm (price, bonus, -kickback)
};

// Scores within 1e-12 (relative) of each other or of a level compare equal.
std::vector<Award> Resolve(const MechanismSpec& mech,
                           const std::vector<Bid>& bids);

// Type-contingent quality and score bid of one firm; the score is weakly
// decreasing in the type.
struct FirmStrategy {
  Fn1 quality;
  Fn1 score;
};

struct StrategyProfile {
  std::vector<FirmStrategy> firms;

  double Price(const MechanismSpec& mech, int firm, double theta) const;
};

// Probabilities that a score bid wins, earns the bonus and pays the kickback
// against the opponents' equilibrium score distributions.
struct DeviationOdds {
  double win = 0.0;
  double bonus = 0.0;
  double kickback = 0.0;
};

DeviationOdds OddsAtScore(const Environment& env, const MechanismSpec& mech,
                          const StrategyProfile& profile, int firm,
                          double score);

// Interim profit of `firm` with type theta that produces `quality` and bids
// `score`: (s(q) - C^P - score) P(win) + side payments - C^I.
double Profit(const Environment& env, const MechanismSpec& mech,
              const StrategyProfile& profile, int firm, double theta,
              double quality, double score);

// argmax_q (s(q) - C^P(q, theta)) z - C^I(q, theta) on [0, q_max].
double BestQuality(const Environment& env, const MechanismSpec& mech,
                   double z, double theta);

struct VerifyGrid {
  int types = 64;
  int qualities = 64;
  int scores = 64;
  double relative_tolerance = 1e-3;  // pass tolerance / utility scale
};

struct Witness {
  int firm = 0;
  double theta = 0.0;
  double quality = 0.0;
  double score = 0.0;
  double gain = 0.0;  // deviation profit minus equilibrium profit
};

struct VerificationReport {
  std::vector<double> theta;                      // type grid
  std::vector<std::vector<double>> interim_profit;  // [firm][type]
  double max_ic_violation = 0.0;
  std::vector<Witness> witnesses;  // largest gains, at most 16
  std::vector<std::vector<bool>> single_peaked;  // [firm][type]
  bool all_single_peaked = true;
  std::vector<double> worst_type_profit;  // per firm, at theta = 1
  bool participation_ok = true;
  // Largest profit of an entering deviation by a type whose equilibrium
  // play loses for sure with zero quality (exit); empty if no such type.
  std::optional<double> exit_entry_profit;
  double utility_scale = 0.0;  // max_q V - C^P(q, 0) - C^I(q, 0)
  double tolerance = 0.0;      // relative_tolerance * utility_scale
  bool passed = false;
};

// Scans, for each firm and grid type, double deviations (q', S') on the
// quality grid and on the best-quality curve, over a score grid augmented
// with the opponents' equilibrium scores and the mechanism's levels.
// Passes when the violation is within tolerance, |worst-type profit| <= 1e-6,
// all interim profits are nonnegative and every Pi_max(tau | theta) is
// single-peaked.
VerificationReport VerifyBne(const Environment& env, const MechanismSpec& mech,
                             const StrategyProfile& profile,
                             const VerifyGrid& grid = VerifyGrid());

struct Equilibrium {
  MechanismSpec mech;
  StrategyProfile profile;
  double utility = 0.0;  // analytic buyer utility
  std::optional<double> theta0;
};

// First-score auction with the optimal scoring rule. Outside the solved
// quality range the rule continues with slope V' above q(0) and with the
// endpoint slope below q(1).
Equilibrium SymmetricEquilibrium(const Environment& env,
                                 const SymmetricSolution& sol);
// Separable two-firm mechanisms at threshold theta0 < 1; firm 0 is favored.
Equilibrium FloorEquilibrium(const Environment& env, double theta0);
// `kickback` replaces the implementing kickback when given.
Equilibrium CeilingEquilibrium(const Environment& env, double theta0,
                               std::optional<double> kickback = std::nullopt);
// Take-it-or-leave-it offer to firm 0 at the quality maximizing
// V - C^P(., 1) - C^I(., 1), priced at the cost of type 1.
Equilibrium SoleSourceEquilibrium(const Environment& env);

struct ScoreHistogram {
  std::vector<double> edges;               // bins + 1 edges
  std::vector<std::vector<int64_t>> counts;  // [firm][bin]
};

struct SimulationReport {
  int64_t draws = 0;
  uint64_t seed = 0;
  double utility = 0.0;
  double std_error = 0.0;
  std::vector<int64_t> wins;  // per firm
  ScoreHistogram histogram;
  // Two-sample Kolmogorov-Smirnov test of firm 0 vs firm 1 scores.
  double ks_statistic = 0.0;
  double ks_critical = 0.0;  // 1% level
  bool ks_pass = false;
};

// Draws i.i.d. types, plays the profile and averages V(q) z - t over firms.
// Block b of 4096 draws uses mt19937_64 seeded by seed_seq{seed, b}, so the
// result is a function of (seed, draws) only. Requires draws >= 10^4.
SimulationReport Simulate(const Environment& env, const MechanismSpec& mech,
                          const StrategyProfile& profile, int64_t draws,
                          uint64_t seed, int bins = 50);

// Two-sample Kolmogorov-Smirnov statistic (inputs are sorted in place).
double KsStatistic(std::vector<double>& a, std::vector<double>& b);
// Asymptotic critical value at level `level` for sample sizes n and m.
double KsCritical(int64_t n, int64_t m, double level = 0.01);

// CSV lines "firm,bin_left,bin_right,count" with a header.
std::string HistogramCsv(const ScoreHistogram& histogram);

}  // namespace procmech

#endif  // PROCMECH_AUCTIONSIM_H_
