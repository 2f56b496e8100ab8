#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dreamxi/error.hpp"
#include "dreamxi/format.hpp"

namespace dreamxi::ingest {

enum class TossDecision { bat, field };
enum class MarginKind { runs, wickets };

struct Margin {
  MarginKind kind = MarginKind::runs;
  int margin = 0;
  friend bool operator==(const Margin&, const Margin&) = default;
};

struct MatchMeta {
  std::string match_id;
  MatchFormat format = MatchFormat::T20;
  std::optional<std::string> city;
  std::optional<std::string> venue;
  std::vector<Date> dates;
  std::optional<std::string> gender;
  std::pair<std::string, std::string> teams;
  std::optional<std::string> toss_winner;
  std::optional<TossDecision> toss_decision;
  std::optional<std::string> outcome_winner;
  std::optional<Margin> outcome_by;
  std::optional<std::vector<std::string>> player_of_match;

  bool has_team(const std::string& name) const {
    return teams.first == name || teams.second == name;
  }
  const std::string& opponent_of(const std::string& team) const {
    return team == teams.first ? teams.second : teams.first;
  }

  friend bool operator==(const MatchMeta&, const MatchMeta&) = default;
};

/// Extras on one delivery. The named kinds are cricsheet's; anything else is
/// kept in `other` and only contributes to the extras total.
struct Extras {
  int wides = 0;
  int noballs = 0;
  int byes = 0;
  int legbyes = 0;
  int penalty = 0;
  std::map<std::string, int> other;

  int total() const {
    int t = wides + noballs + byes + legbyes + penalty;
    for (const auto& [k, v] : other) t += v;
    return t;
  }
  bool empty() const {
    return wides == 0 && noballs == 0 && byes == 0 && legbyes == 0 && penalty == 0 &&
           other.empty();
  }

  friend bool operator==(const Extras&, const Extras&) = default;
};

struct Wicket {
  std::string kind;
  std::string player_out;
  std::vector<std::string> fielders;
  friend bool operator==(const Wicket&, const Wicket&) = default;
};

struct RawDelivery {
  int innings_index = 1;
  int over = 0;
  int ball_in_over = 1;
  std::string batting_team;
  std::string batsman;
  std::string non_striker;
  std::string bowler;
  int runs_batsman = 0;
  int runs_extras = 0;
  int runs_total = 0;
  std::optional<Extras> extras;
  std::optional<Wicket> wicket;

  bool is_wide() const { return extras && extras->wides > 0; }
  bool is_noball() const { return extras && extras->noballs > 0; }
  /// Counts towards the over (not a wide or no-ball).
  bool is_legal() const { return !is_wide() && !is_noball(); }

  friend bool operator==(const RawDelivery&, const RawDelivery&) = default;
};

struct Innings {
  std::string batting_team;
  std::vector<RawDelivery> deliveries;
  friend bool operator==(const Innings&, const Innings&) = default;
};

struct MatchRecord {
  MatchMeta meta;
  std::vector<Innings> innings;
  friend bool operator==(const MatchRecord&, const MatchRecord&) = default;
};

struct CorpusEntry {
  std::string match_id;
  MatchFormat format = MatchFormat::T20;
  std::pair<std::string, std::string> teams;
  Date date;
  std::filesystem::path path;
};

struct ParseFailure {
  std::filesystem::path path;
  std::string message;
};

struct CorpusIndex {
  std::vector<CorpusEntry> entries;
  std::map<MatchFormat, std::size_t> counts_by_format;
  std::vector<ParseFailure> failures;

  std::size_t count(MatchFormat f) const {
    auto it = counts_by_format.find(f);
    return it == counts_by_format.end() ? 0 : it->second;
  }
};

/// Dismissal kinds credited to the bowler.
inline bool credited_to_bowler(const std::string& kind) {
  return kind == "bowled" || kind == "caught" || kind == "caught and bowled" || kind == "lbw" ||
         kind == "stumped" || kind == "hit wicket";
}

/// Checks every MatchMeta/RawDelivery/MatchRecord invariant. Throws
/// InvariantViolation naming the offending path.
inline void validate(const MatchRecord& m) {
  auto fail = [&](const std::string& path, const std::string& what) {
    throw Error(ErrorCode::InvariantViolation, m.meta.match_id + ": " + path + ": " + what);
  };
  const auto& meta = m.meta;
  if (meta.teams.first.empty() || meta.teams.second.empty() ||
      meta.teams.first == meta.teams.second)
    fail("info.teams", "expected exactly 2 distinct team names");
  if (meta.dates.empty()) fail("info.dates", "at least one date required");
  if (meta.outcome_winner && !meta.has_team(*meta.outcome_winner))
    fail("info.outcome.winner", "'" + *meta.outcome_winner + "' is not one of the teams");
  if (meta.outcome_by && meta.outcome_by->margin < 0) fail("info.outcome.by", "negative margin");
  for (std::size_t i = 0; i < m.innings.size(); ++i) {
    const auto& inn = m.innings[i];
    const std::string ipath = "innings[" + std::to_string(i) + "]";
    if (!meta.has_team(inn.batting_team))
      fail(ipath + ".team", "'" + inn.batting_team + "' is not one of the teams");
    for (std::size_t j = 0; j < inn.deliveries.size(); ++j) {
      const auto& d = inn.deliveries[j];
      const std::string dpath = ipath + ".deliveries[" + std::to_string(j) + "]";
      if (d.over < 0 || d.ball_in_over < 1) fail(dpath, "bad over/ball numbering");
      if (d.runs_batsman < 0 || d.runs_extras < 0) fail(dpath, "negative runs");
      if (d.runs_total != d.runs_batsman + d.runs_extras)
        fail(dpath + ".runs", "total " + std::to_string(d.runs_total) + " != batsman " +
                                  std::to_string(d.runs_batsman) + " + extras " +
                                  std::to_string(d.runs_extras));
      const int extra_sum = d.extras ? d.extras->total() : 0;
      if (extra_sum != d.runs_extras)
        fail(dpath + ".extras", "per-kind extras sum " + std::to_string(extra_sum) +
                                    " != runs.extras " + std::to_string(d.runs_extras));
      if (j > 0) {
        const auto& prev = inn.deliveries[j - 1];
        if (std::pair(d.over, d.ball_in_over) < std::pair(prev.over, prev.ball_in_over))
          fail(dpath, "deliveries out of order");
      }
    }
  }
}

}  // namespace dreamxi::ingest
