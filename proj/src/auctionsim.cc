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

#include "procmech/auctionsim.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <random>

#include "procmech/asymmetric.h"
#include "procmech/error.h"

namespace procmech {
namespace {

constexpr int kBlockSize = 4096;
constexpr int kMaxWitnesses = 16;
constexpr double kWorstTypeTol = 1e-6;
constexpr int kSeparableKnots = 1025;

double ScoreTol(double a, double b) {
  return 1e-12 * std::max({1.0, std::fabs(a), std::fabs(b)});
}
bool Ge(double a, double b) { return a >= b - ScoreTol(a, b); }
bool Gt(double a, double b) { return a > b + ScoreTol(a, b); }
bool Le(double a, double b) { return Ge(b, a); }
bool Eq(double a, double b) { return std::fabs(a - b) <= ScoreTol(a, b); }

// P(S(theta) satisfies pred) for a weakly decreasing score strategy and a
// predicate that is monotone (false then true) in theta.
template <typename Pred>
double UpperTailMass(const Environment& env, const Fn1& score, Pred pred) {
  if (pred(score(0.0))) return 1.0;
  if (!pred(score(1.0))) return 0.0;
  double lo = 0.0, hi = 1.0;
  for (int k = 0; k < 64 && hi - lo > 1e-16; ++k) {
    double mid = 0.5 * (lo + hi);
    if (pred(score(mid))) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 1.0 - env.Cdf(hi);
}

// P(S_j < x) and P(S_j <= x) with the comparison tolerance.
double MassBelow(const Environment& env, const Fn1& score, double x) {
  return UpperTailMass(env, score, [&](double s) { return Gt(x, s); });
}
double MassAtOrBelow(const Environment& env, const Fn1& score, double x) {
  return UpperTailMass(env, score, [&](double s) { return Ge(x, s); });
}

int Other(int firm) { return 1 - firm; }

void CheckFirm(const MechanismSpec& mech, const StrategyProfile& profile,
               int firm) {
  if (static_cast<int>(profile.firms.size()) != mech.n) {
    Fail(ErrorCode::kInvalidParameter, "profile size differs from n");
  }
  if (firm < 0 || firm >= mech.n) {
    Fail(ErrorCode::kInvalidParameter, "firm index out of range");
  }
}

// Separable symmetric outcome q(theta) = H'(1 - F) and a tabulated S*(theta).
struct SeparableTables {
  Environment env;
  TabulatedMonotone score;

  explicit SeparableTables(const Environment& e) : env(e) {
    std::vector<double> ts = ChebyshevGridTowardOne(kSeparableKnots);
    std::vector<double> ss(ts.size());
    for (size_t k = 0; k < ts.size(); ++k) ss[k] = SeparableScore(env, ts[k]);
    score = TabulatedMonotone(ts, ss);
  }
  double Quality(double t) const { return SeparableQuality(env, t); }
  double Score(double t) const { return score(t); }
};

Fn1 IdentityRule() {
  return [](double q) { return q; };
}

}  // namespace

const char* MechanismKindName(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::kFirstScore: return "first_score";
    case MechanismKind::kScoreFloor: return "score_floor";
    case MechanismKind::kScoreCeiling: return "score_ceiling";
    case MechanismKind::kSoleSource: return "sole_source";
  }
  return "unknown";
}

void ValidateMechanism(const MechanismSpec& mech) {
  auto bad = [](const char* what) {
    Fail(ErrorCode::kInvalidParameter, what);
  };
  if (!mech.score_rule) bad("mechanism needs a scoring rule");
  if (mech.n < 1) bad("mechanism needs n >= 1");
  if (mech.favored < 0 || mech.favored >= mech.n) {
    bad("favored firm index out of range");
  }
  bool floor = mech.floor.has_value() || mech.bonus.has_value();
  bool ceiling = mech.ceiling.has_value() || mech.kickback.has_value();
  switch (mech.kind) {
    case MechanismKind::kFirstScore:
    case MechanismKind::kSoleSource:
      if (floor || ceiling) bad("side parameters given to a plain mechanism");
      break;
    case MechanismKind::kScoreFloor:
      if (!mech.floor || !mech.bonus) bad("score floor needs floor and bonus");
      if (ceiling) bad("score floor takes no ceiling parameters");
      if (mech.n != 2) bad("score floor needs n = 2");
      break;
    case MechanismKind::kScoreCeiling:
      if (!mech.ceiling || !mech.kickback) {
        bad("score ceiling needs ceiling and kickback");
      }
      if (floor) bad("score ceiling takes no floor parameters");
      if (mech.n != 2) bad("score ceiling needs n = 2");
      break;
  }
}

std::vector<Award> Resolve(const MechanismSpec& mech,
                           const std::vector<Bid>& bids) {
  ValidateMechanism(mech);
  if (static_cast<int>(bids.size()) != mech.n) {
    Fail(ErrorCode::kInvalidParameter, "one bid per firm required");
  }
  const int n = mech.n, fav = mech.favored;
  std::vector<double> score(n);
  for (int i = 0; i < n; ++i) {
    score[i] = mech.score_rule(bids[i].quality) - bids[i].price;
  }
  std::vector<Award> awards(n);
  int winner = fav;
  switch (mech.kind) {
    case MechanismKind::kSoleSource:
      break;
    case MechanismKind::kFirstScore:
      for (int i = 0; i < n; ++i) {
        if (i != fav && Gt(score[i], score[winner])) winner = i;
      }
      break;
    case MechanismKind::kScoreFloor:
    case MechanismKind::kScoreCeiling: {
      int unf = Other(fav);
      double s1 = score[fav], s2 = score[unf];
      bool floor = mech.kind == MechanismKind::kScoreFloor;
      bool valid1 = floor ? Ge(s1, *mech.floor) : Le(s1, *mech.ceiling);
      bool valid2 = floor ? Ge(s2, *mech.floor) : Le(s2, *mech.ceiling);
      // With no valid bid the contract goes to the favored firm at its bid.
      if (valid2 && (!valid1 || Gt(s2, s1))) winner = unf;
      if (floor && valid1) awards[fav].transfer += *mech.bonus;
      if (!floor && winner == fav && Eq(s1, *mech.ceiling)) {
        awards[fav].transfer -= *mech.kickback;
      }
      break;
    }
  }
  awards[winner].share = 1.0;
  awards[winner].transfer += bids[winner].price;
  return awards;
}

double StrategyProfile::Price(const MechanismSpec& mech, int firm,
                              double theta) const {
  const FirmStrategy& s = firms.at(firm);
  return mech.score_rule(s.quality(theta)) - s.score(theta);
}

DeviationOdds OddsAtScore(const Environment& env, const MechanismSpec& mech,
                          const StrategyProfile& profile, int firm,
                          double score) {
  ValidateMechanism(mech);
  CheckFirm(mech, profile, firm);
  DeviationOdds odds;
  const int fav = mech.favored;
  switch (mech.kind) {
    case MechanismKind::kSoleSource:
      odds.win = firm == fav ? 1.0 : 0.0;
      return odds;
    case MechanismKind::kFirstScore: {
      double win = 1.0;
      for (int j = 0; j < mech.n && win > 0.0; ++j) {
        if (j == firm) continue;
        bool wins_tie = firm == fav || (j != fav && firm < j);
        const Fn1& sj = profile.firms[j].score;
        win *= wins_tie ? MassAtOrBelow(env, sj, score)
                        : MassBelow(env, sj, score);
      }
      odds.win = win;
      return odds;
    }
    case MechanismKind::kScoreFloor: {
      const Fn1& so = profile.firms[Other(firm)].score;
      double level = *mech.floor;
      if (firm == fav) {
        bool valid = Ge(score, level);
        odds.win = valid ? MassAtOrBelow(env, so, score)
                         : MassBelow(env, so, level);
        odds.bonus = valid ? 1.0 : 0.0;
      } else {
        odds.win = Ge(score, level) ? MassBelow(env, so, score) : 0.0;
      }
      return odds;
    }
    case MechanismKind::kScoreCeiling: {
      const Fn1& so = profile.firms[Other(firm)].score;
      double level = *mech.ceiling;
      double other_invalid = 1.0 - MassAtOrBelow(env, so, level);
      if (!Le(score, level)) {
        odds.win = firm == fav ? other_invalid : 0.0;
        return odds;
      }
      if (firm == fav) {
        odds.win = MassAtOrBelow(env, so, score) + other_invalid;
        if (Eq(score, level)) odds.kickback = odds.win;
      } else {
        odds.win = MassBelow(env, so, score) + other_invalid;
      }
      return odds;
    }
  }
  return odds;
}

namespace {

double ProfitWithOdds(const Environment& env, const MechanismSpec& mech,
                      const DeviationOdds& odds, double theta, double quality,
                      double score) {
  double margin = mech.score_rule(quality) - env.Cp(quality, theta) - score;
  double profit = margin * odds.win - env.Ci(quality, theta);
  if (mech.bonus) profit += *mech.bonus * odds.bonus;
  if (mech.kickback) profit -= *mech.kickback * odds.kickback;
  return profit;
}

}  // namespace

double Profit(const Environment& env, const MechanismSpec& mech,
              const StrategyProfile& profile, int firm, double theta,
              double quality, double score) {
  DeviationOdds odds = OddsAtScore(env, mech, profile, firm, score);
  return ProfitWithOdds(env, mech, odds, theta, quality, score);
}

double BestQuality(const Environment& env, const MechanismSpec& mech, double z,
                   double theta) {
  if (!(z >= 0.0 && z <= 1.0)) {
    Fail(ErrorCode::kDomainError, "win probability outside [0, 1]");
  }
  if (z == 0.0) return 0.0;
  auto objective = [&](double q) {
    return (mech.score_rule(q) - env.Cp(q, theta)) * z - env.Ci(q, theta);
  };
  return Maximize(objective, 0.0, env.q_max());
}

VerificationReport VerifyBne(const Environment& env, const MechanismSpec& mech,
                             const StrategyProfile& profile,
                             const VerifyGrid& grid) {
  ValidateMechanism(mech);
  CheckFirm(mech, profile, 0);
  if (grid.types < 2 || grid.qualities < 2 || grid.scores < 2) {
    Fail(ErrorCode::kInvalidParameter, "verification grids need >= 2 points");
  }
  if (!(grid.relative_tolerance > 0.0)) {
    Fail(ErrorCode::kInvalidParameter, "verification tolerance must be > 0");
  }
  const int n = mech.n;
  VerificationReport report;
  report.theta = Linspace(0.0, 1.0, grid.types);
  const std::vector<double>& ts = report.theta;
  const int nt = grid.types;

  double q_first_best = Maximize(
      [&](double q) { return env.V(q) - env.Cp(q, 0.0) - env.Ci(q, 0.0); },
      0.0, env.q_max());
  report.utility_scale = env.V(q_first_best) - env.Cp(q_first_best, 0.0) -
                         env.Ci(q_first_best, 0.0);
  report.tolerance = grid.relative_tolerance * report.utility_scale;

  // Candidate scores: a uniform grid over the equilibrium score range, every
  // equilibrium score at the grid types and the mechanism's levels.
  std::vector<std::vector<double>> eq_score(n, std::vector<double>(nt));
  std::vector<std::vector<double>> eq_quality(n, std::vector<double>(nt));
  double s_lo = std::numeric_limits<double>::infinity(), s_hi = -s_lo;
  double q_top = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < nt; ++k) {
      eq_score[i][k] = profile.firms[i].score(ts[k]);
      eq_quality[i][k] = profile.firms[i].quality(ts[k]);
      s_lo = std::min(s_lo, eq_score[i][k]);
      s_hi = std::max(s_hi, eq_score[i][k]);
      q_top = std::max(q_top, eq_quality[i][k]);
    }
  }
  double pad = 0.05 * std::max(s_hi - s_lo, 1e-6);
  std::vector<double> scores = Linspace(s_lo - pad, s_hi + pad, grid.scores);
  for (int i = 0; i < n; ++i) {
    scores.insert(scores.end(), eq_score[i].begin(), eq_score[i].end());
  }
  if (mech.floor) scores.push_back(*mech.floor);
  if (mech.ceiling) scores.push_back(*mech.ceiling);
  std::sort(scores.begin(), scores.end());
  scores.erase(std::unique(scores.begin(), scores.end()), scores.end());
  q_top = std::min(env.q_max(), 1.25 * std::max(q_top, 1e-6));
  std::vector<double> qualities = Linspace(0.0, q_top, grid.qualities);

  report.interim_profit.assign(n, std::vector<double>(nt));
  report.single_peaked.assign(n, std::vector<bool>(nt, true));
  report.worst_type_profit.assign(n, 0.0);
  std::vector<Witness> witnesses;
  double max_gain = -std::numeric_limits<double>::infinity();
  double shape_tol = 1e-8 * report.utility_scale;

  for (int i = 0; i < n; ++i) {
    std::vector<DeviationOdds> odds(scores.size());
    for (size_t m = 0; m < scores.size(); ++m) {
      odds[m] = OddsAtScore(env, mech, profile, i, scores[m]);
    }
    std::vector<DeviationOdds> eq_odds(nt);
    for (int k = 0; k < nt; ++k) {
      eq_odds[k] = OddsAtScore(env, mech, profile, i, eq_score[i][k]);
    }
    for (int k = 0; k < nt; ++k) {
      double t = ts[k];
      double pi_eq = ProfitWithOdds(env, mech, eq_odds[k], t, eq_quality[i][k],
                                    eq_score[i][k]);
      report.interim_profit[i][k] = pi_eq;
      if (pi_eq < -kWorstTypeTol) report.participation_ok = false;
      bool exiting = eq_quality[i][k] == 0.0 && eq_odds[k].win == 0.0;
      for (size_t m = 0; m < scores.size(); ++m) {
        double s = scores[m];
        double q_best = BestQuality(env, mech, odds[m].win, t);
        double best = ProfitWithOdds(env, mech, odds[m], t, q_best, s);
        double best_q = q_best;
        for (double q : qualities) {
          double p = ProfitWithOdds(env, mech, odds[m], t, q, s);
          if (p > best) {
            best = p;
            best_q = q;
          }
        }
        if (exiting && odds[m].win > 0.0) {
          report.exit_entry_profit =
              std::max(report.exit_entry_profit.value_or(-HUGE_VAL), best);
        }
        double gain = best - pi_eq;
        max_gain = std::max(max_gain, gain);
        if (gain > report.tolerance) {
          witnesses.push_back({i, t, best_q, s, gain});
        }
      }
      // Pi_max(tau | theta) along the firm's own equilibrium scores.
      std::vector<double> path(nt);
      for (int m = 0; m < nt; ++m) {
        double q = BestQuality(env, mech, eq_odds[m].win, t);
        path[m] = ProfitWithOdds(env, mech, eq_odds[m], t, q, eq_score[i][m]);
      }
      ShapeVerdict shape = nt >= 32 ? QuasiShape(path, shape_tol)
                                    : ClassifyDifferences(path, shape_tol);
      bool peaked = shape.kind != ShapeKind::kNeither &&
                    shape.kind != ShapeKind::kQuasiConvex;
      report.single_peaked[i][k] = peaked;
      if (!peaked) report.all_single_peaked = false;
    }
    report.worst_type_profit[i] = report.interim_profit[i][nt - 1];
  }
  std::sort(witnesses.begin(), witnesses.end(),
            [](const Witness& a, const Witness& b) { return a.gain > b.gain; });
  if (static_cast<int>(witnesses.size()) > kMaxWitnesses) {
    witnesses.resize(kMaxWitnesses);
  }
  report.witnesses = witnesses;
  report.max_ic_violation = std::max(0.0, max_gain);
  bool worst_ok = true;
  for (double p : report.worst_type_profit) {
    if (std::fabs(p) > kWorstTypeTol) worst_ok = false;
  }
  report.passed = report.max_ic_violation <= report.tolerance && worst_ok &&
                  report.participation_ok && report.all_single_peaked;
  return report;
}

Equilibrium SymmetricEquilibrium(const Environment& env,
                                 const SymmetricSolution& sol) {
  auto shared = std::make_shared<const SymmetricSolution>(sol);
  double q_lo = sol.score_rule.x_min(), q_hi = sol.score_rule.x_max();
  double s_lo = sol.score_rule(q_lo), s_hi = sol.score_rule(q_hi);
  double slope_lo = ScoreSlopeAt(env, q_lo);
  double v_hi = env.V(q_hi);
  Environment e = env;
  Equilibrium eq;
  eq.mech.kind = MechanismKind::kFirstScore;
  eq.mech.n = sol.n;
  eq.mech.score_rule = [=](double q) {
    if (q < q_lo) return s_lo + slope_lo * (q - q_lo);
    if (q > q_hi) return s_hi + e.V(q) - v_hi;
    return shared->Score(q);
  };
  FirmStrategy firm{[shared](double t) { return shared->Quality(t); },
                    [shared](double t) { return shared->ScoreBid(t); }};
  eq.profile.firms.assign(sol.n, firm);
  eq.utility = sol.utility;
  return eq;
}

Equilibrium FloorEquilibrium(const Environment& env, double theta0) {
  RequireSeparable(env);
  FloorParams params = FloorParameters(env, theta0);
  auto tab = std::make_shared<const SeparableTables>(env);
  double shift = SeparableRent(env, theta0);
  double level = params.level;
  double q0 = tab->Quality(theta0);
  auto entered_score = [tab, shift, level](double t) {
    double z = 1.0 - tab->env.Cdf(t);
    return std::max(tab->Score(t) + shift / z, level);
  };
  Equilibrium eq;
  eq.mech.kind = MechanismKind::kScoreFloor;
  eq.mech.score_rule = IdentityRule();
  eq.mech.floor = params.level;
  eq.mech.bonus = params.bonus;
  FirmStrategy favored{
      [tab, theta0, q0](double t) {
        return t <= theta0 ? tab->Quality(t) : q0;
      },
      [=](double t) { return t <= theta0 ? entered_score(t) : level; }};
  FirmStrategy unfavored{
      [tab, theta0](double t) { return t <= theta0 ? tab->Quality(t) : 0.0; },
      [=](double t) { return t <= theta0 ? entered_score(t) : level; }};
  eq.profile.firms = {favored, unfavored};
  eq.utility = FloorUtility(env, theta0);
  eq.theta0 = theta0;
  return eq;
}

Equilibrium CeilingEquilibrium(const Environment& env, double theta0,
                               std::optional<double> kickback) {
  RequireSeparable(env);
  CeilingParams params = CeilingParameters(env, theta0);
  auto tab = std::make_shared<const SeparableTables>(env);
  double level = params.level;
  double q_top = tab->Quality(0.0), q0 = tab->Quality(theta0);
  auto score = [tab, theta0, level](double t) {
    return t <= theta0 ? level : std::min(tab->Score(t), level);
  };
  Equilibrium eq;
  eq.mech.kind = MechanismKind::kScoreCeiling;
  eq.mech.score_rule = IdentityRule();
  eq.mech.ceiling = params.level;
  eq.mech.kickback = kickback.value_or(params.kickback);
  FirmStrategy favored{[tab, theta0, q_top](double t) {
                         return t <= theta0 ? q_top : tab->Quality(t);
                       },
                       score};
  FirmStrategy unfavored{[tab, theta0, q0](double t) {
                           return t <= theta0 ? q0 : tab->Quality(t);
                         },
                         score};
  eq.profile.firms = {favored, unfavored};
  eq.utility = CeilingUtility(env, theta0);
  eq.theta0 = theta0;
  return eq;
}

Equilibrium SoleSourceEquilibrium(const Environment& env) {
  Environment e = env;
  double q = Maximize(
      [&](double x) { return env.V(x) - env.Cp(x, 1.0) - env.Ci(x, 1.0); },
      0.0, env.q_max());
  double price = env.Cp(q, 1.0) + env.Ci(q, 1.0);
  double bid_score = env.V(q) - price;
  double idle_score = env.V(0.0);
  Equilibrium eq;
  eq.mech.kind = MechanismKind::kSoleSource;
  eq.mech.n = env.n();
  eq.mech.score_rule = [e](double x) { return e.V(x); };
  FirmStrategy chosen{[q](double) { return q; },
                      [bid_score](double) { return bid_score; }};
  FirmStrategy idle{[](double) { return 0.0; },
                    [idle_score](double) { return idle_score; }};
  eq.profile.firms.assign(env.n(), idle);
  eq.profile.firms[0] = chosen;
  eq.utility = env.V(q) - price;
  return eq;
}

double KsStatistic(std::vector<double>& a, std::vector<double>& b) {
  if (a.empty() || b.empty()) {
    Fail(ErrorCode::kInvalidParameter, "KS test needs nonempty samples");
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = a.size(), nb = b.size();
  size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::fabs(i / na - j / nb));
  }
  return d;
}

double KsCritical(int64_t n, int64_t m, double level) {
  double c = std::sqrt(-0.5 * std::log(0.5 * level));
  return c * std::sqrt(static_cast<double>(n + m) / (static_cast<double>(n) * m));
}

SimulationReport Simulate(const Environment& env, const MechanismSpec& mech,
                          const StrategyProfile& profile, int64_t draws,
                          uint64_t seed, int bins) {
  ValidateMechanism(mech);
  CheckFirm(mech, profile, 0);
  if (draws < 10000) Fail(ErrorCode::kInvalidParameter, "draws must be >= 1e4");
  if (bins < 1) Fail(ErrorCode::kInvalidParameter, "bins must be >= 1");
  const int n = mech.n;
  SimulationReport report;
  report.draws = draws;
  report.seed = seed;
  report.wins.assign(n, 0);
  std::vector<std::vector<double>> scores(n);
  for (auto& s : scores) s.reserve(draws);
  long double sum = 0.0L, sum_sq = 0.0L;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Bid> bids(n);
  std::vector<double> types(n);
  const int64_t blocks = (draws + kBlockSize - 1) / kBlockSize;
  for (int64_t b = 0; b < blocks; ++b) {
    std::seed_seq seq{static_cast<uint32_t>(seed),
                      static_cast<uint32_t>(seed >> 32),
                      static_cast<uint32_t>(b),
                      static_cast<uint32_t>(b >> 32)};
    std::mt19937_64 rng(seq);
    int64_t count = std::min<int64_t>(kBlockSize, draws - b * kBlockSize);
    for (int64_t d = 0; d < count; ++d) {
      for (int i = 0; i < n; ++i) types[i] = env.Quantile(unit(rng));
      for (int i = 0; i < n; ++i) {
        const FirmStrategy& s = profile.firms[i];
        double q = s.quality(types[i]);
        double score = s.score(types[i]);
        bids[i] = {q, mech.score_rule(q) - score};
        scores[i].push_back(score);
      }
      std::vector<Award> awards = Resolve(mech, bids);
      double u = 0.0;
      for (int i = 0; i < n; ++i) {
        u += env.V(bids[i].quality) * awards[i].share - awards[i].transfer;
        if (awards[i].share > 0.0) ++report.wins[i];
      }
      sum += u;
      sum_sq += static_cast<long double>(u) * u;
    }
  }
  long double mean = sum / draws;
  long double var = (sum_sq / draws - mean * mean) * draws / (draws - 1);
  report.utility = static_cast<double>(mean);
  report.std_error = std::sqrt(static_cast<double>(std::max(0.0L, var)) / draws);

  double lo = HUGE_VAL, hi = -HUGE_VAL;
  for (const auto& s : scores) {
    auto [mn, mx] = std::minmax_element(s.begin(), s.end());
    lo = std::min(lo, *mn);
    hi = std::max(hi, *mx);
  }
  if (!(hi > lo)) hi = lo + 1.0;
  report.histogram.edges = Linspace(lo, hi, bins + 1);
  report.histogram.counts.assign(n, std::vector<int64_t>(bins, 0));
  for (int i = 0; i < n; ++i) {
    for (double s : scores[i]) {
      int bin = static_cast<int>((s - lo) / (hi - lo) * bins);
      ++report.histogram.counts[i][std::clamp(bin, 0, bins - 1)];
    }
  }
  if (n >= 2) {
    report.ks_statistic = KsStatistic(scores[0], scores[1]);
    report.ks_critical = KsCritical(draws, draws);
    report.ks_pass = report.ks_statistic <= report.ks_critical;
  }
  return report;
}

std::string HistogramCsv(const ScoreHistogram& histogram) {
  std::string out = "firm,bin_left,bin_right,count\n";
  char line[160];
  for (size_t i = 0; i < histogram.counts.size(); ++i) {
    for (size_t b = 0; b < histogram.counts[i].size(); ++b) {
      std::snprintf(line, sizeof(line), "%zu,%.17g,%.17g,%lld\n", i + 1,
                    histogram.edges[b], histogram.edges[b + 1],
                    static_cast<long long>(histogram.counts[i][b]));
      out += line;
    }
  }
  return out;
}

}  // namespace procmech
