#pragma once

#include <string>

#include "dreamxi/ingest/types.hpp"

namespace dreamxi::testing {

/// Fluent construction of small hand-checkable matches.
class MatchBuilder {
 public:
  MatchBuilder(std::string id, MatchFormat f, std::string team_a, std::string team_b,
               Date date = Date(2009, 4, 18), std::string venue = "Newlands") {
    m_.meta.match_id = std::move(id);
    m_.meta.format = f;
    m_.meta.teams = {std::move(team_a), std::move(team_b)};
    m_.meta.dates = {date};
    m_.meta.venue = std::move(venue);
  }

  MatchBuilder& winner(const std::string& w) {
    m_.meta.outcome_winner = w;
    return *this;
  }

  MatchBuilder& innings(const std::string& batting_team) {
    m_.innings.push_back({batting_team, {}});
    over_ = 0;
    ball_ = 0;
    legal_ = 0;
    return *this;
  }

  /// Appends a delivery; over/ball numbering advances after 6 legal balls.
  MatchBuilder& ball(const std::string& batsman, const std::string& bowler, int runs,
                     ingest::Extras extras = {}, std::optional<ingest::Wicket> wicket = {},
                     const std::string& non_striker = "Partner") {
    auto& inn = m_.innings.back();
    ingest::RawDelivery d;
    d.innings_index = static_cast<int>(m_.innings.size());
    d.over = over_;
    d.ball_in_over = ++ball_;
    d.batting_team = inn.batting_team;
    d.batsman = batsman;
    d.non_striker = non_striker;
    d.bowler = bowler;
    d.runs_batsman = runs;
    if (!extras.empty()) d.extras = extras;
    d.runs_extras = extras.total();
    d.runs_total = runs + d.runs_extras;
    d.wicket = std::move(wicket);
    if (d.is_legal() && ++legal_ == 6) {
      ++over_;
      ball_ = 0;
      legal_ = 0;
    }
    inn.deliveries.push_back(std::move(d));
    return *this;
  }

  MatchBuilder& balls(int n, const std::string& batsman, const std::string& bowler, int runs) {
    for (int i = 0; i < n; ++i) ball(batsman, bowler, runs);
    return *this;
  }

  ingest::MatchRecord build() const {
    ingest::validate(m_);
    return m_;
  }

 private:
  ingest::MatchRecord m_;
  int over_ = 0, ball_ = 0, legal_ = 0;
};

inline ingest::Extras wides(int n) {
  ingest::Extras e;
  e.wides = n;
  return e;
}
inline ingest::Extras noballs(int n) {
  ingest::Extras e;
  e.noballs = n;
  return e;
}
inline ingest::Extras byes(int n) {
  ingest::Extras e;
  e.byes = n;
  return e;
}
inline ingest::Extras legbyes(int n) {
  ingest::Extras e;
  e.legbyes = n;
  return e;
}
inline ingest::Wicket out(const std::string& kind, const std::string& player) {
  return ingest::Wicket{kind, player, {}};
}

}  // namespace dreamxi::testing
