#pragma once

#include <string>

#include "dreamxi/format.hpp"

namespace dreamxi::dataset {

inline constexpr const char* kNotOut = "notOut";
inline constexpr const char* kNoResult = "no result";

/// Match context shared by batting and bowling rows. team1 is the player's
/// side, team2 the opposition.
struct MatchContext {
  Date date;
  std::string team1;
  std::string team2;
  std::string winner = kNoResult;
  std::string venue;
  MatchFormat format = MatchFormat::T20;
  /// Source match id; empty for rows loaded from CSV.
  std::string match_id;
  /// Disambiguates rows sharing (player, date, team2, format).
  int seq = 0;

  friend bool operator==(const MatchContext&, const MatchContext&) = default;
};

struct BattingPerformance {
  std::string batsman;
  int runs = 0;
  int balls = 0;
  int fours = 0;
  int sixes = 0;
  /// Rounded to a whole number, as displayed in scorecards.
  double strike_rate = 0;
  std::string dismissal_kind = kNotOut;
  std::string dismissed_by_bowler = kNotOut;
  MatchContext ctx;
  int fifty_flag = 0;
  int hundred_flag = 0;
  int duck_flag = 0;
  double fantasy_score = 0;

  const std::string& player() const { return batsman; }
  bool dismissed() const { return dismissal_kind != kNotOut; }

  friend bool operator==(const BattingPerformance&, const BattingPerformance&) = default;
};

struct BowlingPerformance {
  std::string bowler;
  /// Completed overs (balls_bowled / 6).
  int overs = 0;
  /// Legal deliveries. Not persisted in CSV; rows loaded from CSV carry overs * 6.
  int balls_bowled = 0;
  int runs_conceded = 0;
  int maidens = 0;
  int wickets = 0;
  double economy_rate = 0;
  MatchContext ctx;
  int four_wicket_flag = 0;
  int five_wicket_flag = 0;
  double fantasy_score = 0;

  const std::string& player() const { return bowler; }

  friend bool operator==(const BowlingPerformance&, const BowlingPerformance&) = default;
};

enum class Discipline { batting, bowling };

constexpr std::string_view to_string(Discipline d) {
  return d == Discipline::batting ? "batting" : "bowling";
}

inline Discipline parse_discipline(std::string_view s) {
  if (s == "batting") return Discipline::batting;
  if (s == "bowling") return Discipline::bowling;
  throw Error(ErrorCode::InvalidInput, "unknown discipline '" + std::string(s) + "'");
}

}  // namespace dreamxi::dataset
