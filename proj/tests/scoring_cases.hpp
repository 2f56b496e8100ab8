#pragma once

#include <vector>

#include "dreamxi/dataset/rubric.hpp"
#include "dreamxi/format.hpp"

namespace dreamxi::testing {

/// Hand-computed fantasy scores under the default rubric. Each expected
/// value was worked out on paper from the point table (playing XI 4 points
/// in every row); the comment shows the sum.
struct BattingCase {
  MatchFormat format;
  int runs, balls, fours, sixes;
  bool dismissed;
  double expected;
  const char* why;
};

struct BowlingCase {
  MatchFormat format;
  int balls_bowled, runs_conceded, wickets, maidens;
  double expected;
  const char* why;
};

inline const std::vector<BattingCase>& batting_cases() {
  using F = MatchFormat;
  static const std::vector<BattingCase> cases = {
      {F::T20, 24, 25, 2, 1, true, 32, "4+24+2+2, SR 96 no band"},
      {F::T20, 0, 0, 0, 0, false, 4, "playing XI only"},
      {F::T20, 0, 1, 0, 0, true, 2, "4-2 duck"},
      {F::T20, 0, 10, 0, 0, true, -4, "4-2 duck -6 SR 0"},
      {F::T20, 4, 10, 0, 0, false, 2, "4+4-6 SR 40"},
      {F::T20, 5, 10, 0, 0, false, 5, "4+5-4 SR 50 lower edge"},
      {F::T20, 6, 10, 0, 0, false, 8, "4+6-2 SR 60 lower edge"},
      {F::T20, 7, 10, 0, 0, false, 9, "4+7-2 SR 70 closed upper edge"},
      {F::T20, 5, 9, 0, 0, false, 9, "4+5, 9 balls below band minimum"},
      {F::T20, 71, 100, 0, 0, false, 83, "4+71+8 fifty, SR 71 no band"},
      {F::T20, 59, 100, 0, 0, false, 67, "4+59+8-4 fifty and SR 59"},
      {F::T20, 50, 30, 5, 2, false, 71, "4+50+5+4+8 fifty boundary"},
      {F::T20, 49, 30, 5, 1, false, 60, "4+49+5+2 one short of fifty"},
      {F::T20, 99, 60, 8, 4, true, 127, "4+99+8+8+8"},
      {F::T20, 100, 60, 8, 4, true, 136, "4+100+8+8+16 hundred replaces fifty"},
      {F::IPL, 24, 25, 2, 1, false, 32, "IPL uses the T20 table"},
      {F::ODI, 0, 1, 0, 0, true, 1, "4-3 ODI duck"},
      {F::ODI, 10, 20, 0, 0, false, 12, "4+10-2 SR 50"},
      {F::ODI, 7, 20, 0, 0, false, 5, "4+7-6 SR 35"},
      {F::ODI, 9, 20, 0, 0, false, 9, "4+9-4 SR 45"},
      {F::ODI, 100, 120, 10, 1, true, 124, "4+100+10+2+8 ODI hundred"},
      {F::ODI, 55, 100, 3, 0, false, 64, "4+55+3+4-2 ODI fifty SR 55"},
      {F::ODI, 10, 19, 0, 0, false, 14, "4+10, 19 balls below ODI band minimum"},
  };
  return cases;
}

inline const std::vector<BowlingCase>& bowling_cases() {
  using F = MatchFormat;
  static const std::vector<BowlingCase> cases = {
      {F::T20, 24, 44, 1, 0, 27, "4+25-2 econ 11 closed upper edge"},
      {F::T20, 24, 20, 5, 0, 147, "4+125+16+2 econ 5"},
      {F::T20, 24, 19, 0, 0, 7, "4+3 econ 4.75"},
      {F::T20, 24, 28, 0, 0, 5, "4+1 econ 7 closed upper edge"},
      {F::T20, 24, 24, 0, 0, 5, "4+1 econ 6"},
      {F::T20, 24, 23, 0, 0, 6, "4+2 econ 5.75"},
      {F::T20, 24, 32, 0, 0, 4, "econ 8 no band"},
      {F::T20, 24, 40, 0, 0, 2, "4-2 econ 10"},
      {F::T20, 24, 45, 0, 0, 0, "4-4 econ 11.25"},
      {F::T20, 6, 20, 0, 0, 4, "one over, below band minimum"},
      {F::T20, 24, 30, 4, 0, 112, "4+100+8 four-wicket haul, econ 7.5 no band"},
      {F::T20, 24, 18, 0, 1, 15, "4+8+3 maiden, econ 4.5"},
      {F::T20, 12, 12, 0, 0, 5, "4+1 exactly two overs econ 6"},
      {F::T20, 11, 0, 0, 0, 4, "11 balls is under two overs"},
      {F::IPL, 24, 44, 1, 0, 27, "IPL uses the T20 table"},
      {F::ODI, 60, 20, 0, 1, 11, "4+4+3 econ 2"},
      {F::ODI, 60, 25, 0, 0, 6, "4+2 econ 2.5"},
      {F::ODI, 60, 45, 0, 0, 5, "4+1 econ 4.5"},
      {F::ODI, 60, 80, 0, 0, 3, "4-1 econ 8"},
      {F::ODI, 60, 81, 0, 0, 2, "4-2 econ 8.1"},
      {F::ODI, 60, 90, 0, 0, 2, "4-2 econ 9 closed upper edge"},
      {F::ODI, 60, 91, 0, 0, 0, "4-4 econ 9.1"},
      {F::ODI, 60, 40, 5, 0, 138, "4+125+8+1 econ 4"},
      {F::ODI, 60, 60, 4, 0, 108, "4+100+4 econ 6 no band"},
      {F::ODI, 24, 10, 0, 0, 4, "4 overs below ODI band minimum"},
  };
  return cases;
}

inline dataset::BattingPerformance batting_row(const BattingCase& c) {
  dataset::BattingPerformance r;
  r.ctx.format = c.format;
  r.runs = c.runs;
  r.balls = c.balls;
  r.fours = c.fours;
  r.sixes = c.sixes;
  if (c.dismissed) r.dismissal_kind = "caught";
  return dataset::engineer_batting(r, dataset::default_rubric());
}

inline dataset::BowlingPerformance bowling_row(const BowlingCase& c) {
  dataset::BowlingPerformance r;
  r.ctx.format = c.format;
  r.balls_bowled = c.balls_bowled;
  r.overs = c.balls_bowled / 6;
  r.runs_conceded = c.runs_conceded;
  r.wickets = c.wickets;
  r.maidens = c.maidens;
  return dataset::engineer_bowling(r, dataset::default_rubric());
}

}  // namespace dreamxi::testing
