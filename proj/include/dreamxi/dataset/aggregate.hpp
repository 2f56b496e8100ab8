#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "dreamxi/dataset/performance.hpp"
#include "dreamxi/dataset/rubric.hpp"
#include "dreamxi/ingest/types.hpp"

namespace dreamxi::dataset {

/// Innings beyond the second are super overs and are not aggregated.
inline constexpr int kRegularInnings = 2;

inline MatchContext context_for(const ingest::MatchMeta& meta, const std::string& team) {
  MatchContext ctx;
  ctx.date = meta.dates.front();
  ctx.team1 = team;
  ctx.team2 = meta.opponent_of(team);
  ctx.winner = meta.outcome_winner.value_or(kNoResult);
  ctx.venue = meta.venue.value_or(meta.city.value_or("Unknown Venue"));
  ctx.format = meta.format;
  ctx.match_id = meta.match_id;
  return ctx;
}

/// Retirements end an innings without being dismissals.
inline bool is_dismissal(const std::string& kind) {
  return kind != "retired hurt" && kind != "retired not out";
}

/// Per-batsman lines in order of first appearance. Flags and score are left
/// at zero; see engineer_batting.
inline std::vector<BattingPerformance> aggregate_batting(const ingest::MatchRecord& match) {
  std::vector<BattingPerformance> rows;
  std::map<std::string, std::size_t> slot;
  auto row_for = [&](const std::string& name, const std::string& team) {
    auto [it, fresh] = slot.try_emplace(name, rows.size());
    if (fresh) {
      BattingPerformance r;
      r.batsman = name;
      r.ctx = context_for(match.meta, team);
      rows.push_back(std::move(r));
    }
    return it->second;
  };
  for (const auto& inn : match.innings) {
    for (const auto& d : inn.deliveries) {
      if (d.innings_index > kRegularInnings) continue;
      const auto si = row_for(d.batsman, d.batting_team);
      row_for(d.non_striker, d.batting_team);
      auto& striker = rows[si];
      striker.runs += d.runs_batsman;
      if (!d.is_wide()) ++striker.balls;
      if (d.runs_batsman == 4) ++striker.fours;
      if (d.runs_batsman == 6) ++striker.sixes;
      if (d.wicket && is_dismissal(d.wicket->kind)) {
        auto& out = rows[row_for(d.wicket->player_out, d.batting_team)];
        out.dismissal_kind = d.wicket->kind;
        out.dismissed_by_bowler = d.bowler;
      }
    }
  }
  std::vector<BattingPerformance> kept;
  for (auto& r : rows) {
    if (r.balls == 0 && !r.dismissed()) continue;
    r.strike_rate = std::round(exact_strike_rate(r.runs, r.balls));
    kept.push_back(std::move(r));
  }
  return kept;
}

/// Per-bowler lines in order of first appearance.
inline std::vector<BowlingPerformance> aggregate_bowling(const ingest::MatchRecord& match) {
  std::vector<BowlingPerformance> rows;
  std::map<std::string, std::size_t> slot;
  for (const auto& inn : match.innings) {
    // (over) -> (legal balls, runs conceded) for the bowler of that over.
    std::map<std::pair<std::string, int>, std::pair<int, int>> per_over;
    for (const auto& d : inn.deliveries) {
      if (d.innings_index > kRegularInnings) continue;
      auto [it, fresh] = slot.try_emplace(d.bowler, rows.size());
      if (fresh) {
        BowlingPerformance r;
        r.bowler = d.bowler;
        r.ctx = context_for(match.meta, match.meta.opponent_of(d.batting_team));
        rows.push_back(std::move(r));
      }
      auto& r = rows[it->second];
      const int conceded =
          d.runs_batsman + (d.extras ? d.extras->wides + d.extras->noballs : 0);
      r.runs_conceded += conceded;
      if (d.is_legal()) ++r.balls_bowled;
      if (d.wicket && ingest::credited_to_bowler(d.wicket->kind)) ++r.wickets;
      auto& o = per_over[{d.bowler, d.over}];
      if (d.is_legal()) ++o.first;
      o.second += conceded;
    }
    for (const auto& [key, o] : per_over)
      if (o.first >= 6 && o.second == 0) ++rows[slot[key.first]].maidens;
  }
  for (auto& r : rows) {
    r.overs = r.balls_bowled / 6;
    r.economy_rate = std::round(exact_economy(r.runs_conceded, r.balls_bowled));
  }
  return rows;
}

inline BattingPerformance engineer_batting(BattingPerformance row, const ScoringRubric& rubric) {
  row.fifty_flag = row.runs >= 50 && row.runs < 100;
  row.hundred_flag = row.runs >= 100;
  row.duck_flag = row.runs == 0 && row.dismissed();
  row.fantasy_score = score_batting(row, rubric);
  return row;
}

inline BowlingPerformance engineer_bowling(BowlingPerformance row, const ScoringRubric& rubric) {
  row.four_wicket_flag = row.wickets == 4;
  row.five_wicket_flag = row.wickets >= 5;
  row.fantasy_score = score_bowling(row, rubric);
  return row;
}

}  // namespace dreamxi::dataset
