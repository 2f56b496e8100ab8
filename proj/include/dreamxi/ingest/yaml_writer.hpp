#pragma once

#include <yaml-cpp/yaml.h>

#include <string>

#include "dreamxi/ingest/types.hpp"

namespace dreamxi::ingest {

namespace detail {
inline const char* ordinal_innings(std::size_t i) {
  static const char* names[] = {"1st innings", "2nd innings", "3rd innings", "4th innings",
                                "5th innings", "6th innings"};
  return i < 6 ? names[i] : "nth innings";
}
}  // namespace detail

/// Writes a MatchRecord in the classic cricsheet YAML layout (keyed
/// "O.B" deliveries, "1st innings" wrappers). IPL is written as match_type
/// T20, as cricsheet does.
inline std::string to_cricsheet_yaml(const MatchRecord& m) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "meta" << YAML::Value << YAML::BeginMap << YAML::Key << "data_version"
      << YAML::Value << "0.9" << YAML::Key << "revision" << YAML::Value << 1 << YAML::EndMap;

  const auto& meta = m.meta;
  out << YAML::Key << "info" << YAML::Value << YAML::BeginMap;
  if (meta.city) out << YAML::Key << "city" << YAML::Value << *meta.city;
  out << YAML::Key << "dates" << YAML::Value << YAML::BeginSeq;
  for (const auto& d : meta.dates) out << d.iso();
  out << YAML::EndSeq;
  if (meta.gender) out << YAML::Key << "gender" << YAML::Value << *meta.gender;
  out << YAML::Key << "match_type" << YAML::Value
      << (meta.format == MatchFormat::ODI ? "ODI" : "T20");
  if (meta.outcome_winner || meta.outcome_by) {
    out << YAML::Key << "outcome" << YAML::Value << YAML::BeginMap;
    if (meta.outcome_by) {
      out << YAML::Key << "by" << YAML::Value << YAML::BeginMap << YAML::Key
          << (meta.outcome_by->kind == MarginKind::runs ? "runs" : "wickets") << YAML::Value
          << meta.outcome_by->margin << YAML::EndMap;
    }
    if (meta.outcome_winner) out << YAML::Key << "winner" << YAML::Value << *meta.outcome_winner;
    out << YAML::EndMap;
  } else {
    out << YAML::Key << "outcome" << YAML::Value << YAML::BeginMap << YAML::Key << "result"
        << YAML::Value << "no result" << YAML::EndMap;
  }
  if (meta.player_of_match) {
    out << YAML::Key << "player_of_match" << YAML::Value << YAML::BeginSeq;
    for (const auto& p : *meta.player_of_match) out << p;
    out << YAML::EndSeq;
  }
  out << YAML::Key << "teams" << YAML::Value << YAML::BeginSeq << meta.teams.first
      << meta.teams.second << YAML::EndSeq;
  if (meta.toss_winner || meta.toss_decision) {
    out << YAML::Key << "toss" << YAML::Value << YAML::BeginMap;
    if (meta.toss_decision)
      out << YAML::Key << "decision" << YAML::Value
          << (*meta.toss_decision == TossDecision::bat ? "bat" : "field");
    if (meta.toss_winner) out << YAML::Key << "winner" << YAML::Value << *meta.toss_winner;
    out << YAML::EndMap;
  }
  if (meta.venue) out << YAML::Key << "venue" << YAML::Value << *meta.venue;
  out << YAML::EndMap;

  out << YAML::Key << "innings" << YAML::Value << YAML::BeginSeq;
  for (std::size_t i = 0; i < m.innings.size(); ++i) {
    const auto& inn = m.innings[i];
    out << YAML::BeginMap << YAML::Key << detail::ordinal_innings(i) << YAML::Value
        << YAML::BeginMap;
    out << YAML::Key << "team" << YAML::Value << inn.batting_team;
    out << YAML::Key << "deliveries" << YAML::Value << YAML::BeginSeq;
    for (const auto& d : inn.deliveries) {
      out << YAML::BeginMap << YAML::Key
          << (std::to_string(d.over) + "." + std::to_string(d.ball_in_over)) << YAML::Value
          << YAML::BeginMap;
      out << YAML::Key << "batsman" << YAML::Value << d.batsman;
      out << YAML::Key << "bowler" << YAML::Value << d.bowler;
      if (d.extras) {
        out << YAML::Key << "extras" << YAML::Value << YAML::BeginMap;
        const auto& x = *d.extras;
        if (x.byes) out << YAML::Key << "byes" << YAML::Value << x.byes;
        if (x.legbyes) out << YAML::Key << "legbyes" << YAML::Value << x.legbyes;
        if (x.noballs) out << YAML::Key << "noballs" << YAML::Value << x.noballs;
        if (x.penalty) out << YAML::Key << "penalty" << YAML::Value << x.penalty;
        if (x.wides) out << YAML::Key << "wides" << YAML::Value << x.wides;
        for (const auto& [k, v] : x.other) out << YAML::Key << k << YAML::Value << v;
        out << YAML::EndMap;
      }
      out << YAML::Key << "non_striker" << YAML::Value << d.non_striker;
      out << YAML::Key << "runs" << YAML::Value << YAML::BeginMap << YAML::Key << "batsman"
          << YAML::Value << d.runs_batsman << YAML::Key << "extras" << YAML::Value
          << d.runs_extras << YAML::Key << "total" << YAML::Value << d.runs_total
          << YAML::EndMap;
      if (d.wicket) {
        out << YAML::Key << "wicket" << YAML::Value << YAML::BeginMap;
        if (!d.wicket->fielders.empty()) {
          out << YAML::Key << "fielders" << YAML::Value << YAML::BeginSeq;
          for (const auto& f : d.wicket->fielders) out << f;
          out << YAML::EndSeq;
        }
        out << YAML::Key << "kind" << YAML::Value << d.wicket->kind;
        out << YAML::Key << "player_out" << YAML::Value << d.wicket->player_out;
        out << YAML::EndMap;
      }
      out << YAML::EndMap << YAML::EndMap;
    }
    out << YAML::EndSeq << YAML::EndMap << YAML::EndMap;
  }
  out << YAML::EndSeq;
  out << YAML::EndMap;
  return std::string("---\n") + out.c_str() + "\n";
}

}  // namespace dreamxi::ingest
