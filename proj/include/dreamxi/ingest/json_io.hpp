#pragma once

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>

#include "dreamxi/ingest/types.hpp"
#include "dreamxi/util/text.hpp"

namespace dreamxi::ingest {

/// Version of the normalized-match JSON written to the ingest cache.
inline constexpr int kMatchSchemaVersion = 1;

namespace detail {

template <class T>
void put_optional(nlohmann::json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
  else j[key] = nullptr;
}

template <class T>
std::optional<T> get_optional(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

}  // namespace detail

inline nlohmann::json to_json(const MatchRecord& m) {
  using nlohmann::json;
  const auto& meta = m.meta;
  json jm;
  jm["match_id"] = meta.match_id;
  jm["format"] = std::string(to_string(meta.format));
  detail::put_optional(jm, "city", meta.city);
  detail::put_optional(jm, "venue", meta.venue);
  json dates = json::array();
  for (const auto& d : meta.dates) dates.push_back(d.iso());
  jm["dates"] = dates;
  detail::put_optional(jm, "gender", meta.gender);
  jm["teams"] = {meta.teams.first, meta.teams.second};
  detail::put_optional(jm, "toss_winner", meta.toss_winner);
  if (meta.toss_decision)
    jm["toss_decision"] = *meta.toss_decision == TossDecision::bat ? "bat" : "field";
  else
    jm["toss_decision"] = nullptr;
  detail::put_optional(jm, "outcome_winner", meta.outcome_winner);
  if (meta.outcome_by)
    jm["outcome_by"] = {{"kind", meta.outcome_by->kind == MarginKind::runs ? "runs" : "wickets"},
                        {"margin", meta.outcome_by->margin}};
  else
    jm["outcome_by"] = nullptr;
  detail::put_optional(jm, "player_of_match", meta.player_of_match);

  json innings = json::array();
  for (const auto& inn : m.innings) {
    json ds = json::array();
    for (const auto& d : inn.deliveries) {
      json jd = {{"innings_index", d.innings_index},
                 {"over", d.over},
                 {"ball_in_over", d.ball_in_over},
                 {"batting_team", d.batting_team},
                 {"batsman", d.batsman},
                 {"non_striker", d.non_striker},
                 {"bowler", d.bowler},
                 {"runs_batsman", d.runs_batsman},
                 {"runs_extras", d.runs_extras},
                 {"runs_total", d.runs_total}};
      if (d.extras) {
        json e = json::object();
        const auto& x = *d.extras;
        if (x.wides) e["wides"] = x.wides;
        if (x.noballs) e["noballs"] = x.noballs;
        if (x.byes) e["byes"] = x.byes;
        if (x.legbyes) e["legbyes"] = x.legbyes;
        if (x.penalty) e["penalty"] = x.penalty;
        for (const auto& [k, v] : x.other) e[k] = v;
        jd["extras_kind"] = e;
      } else {
        jd["extras_kind"] = nullptr;
      }
      if (d.wicket)
        jd["wicket"] = {{"kind", d.wicket->kind},
                        {"player_out", d.wicket->player_out},
                        {"fielders", d.wicket->fielders}};
      else
        jd["wicket"] = nullptr;
      ds.push_back(std::move(jd));
    }
    innings.push_back({{"batting_team", inn.batting_team}, {"deliveries", std::move(ds)}});
  }
  return {{"schema_version", kMatchSchemaVersion}, {"meta", std::move(jm)},
          {"innings", std::move(innings)}};
}

inline MatchRecord match_from_json(const nlohmann::json& j) {
  try {
    if (j.at("schema_version").get<int>() != kMatchSchemaVersion)
      throw Error(ErrorCode::SchemaMismatch,
                  "match cache schema_version " + j.at("schema_version").dump() + ", expected " +
                      std::to_string(kMatchSchemaVersion));
    MatchRecord m;
    const auto& jm = j.at("meta");
    auto& meta = m.meta;
    meta.match_id = jm.at("match_id").get<std::string>();
    meta.format = parse_format(jm.at("format").get<std::string>());
    meta.city = detail::get_optional<std::string>(jm, "city");
    meta.venue = detail::get_optional<std::string>(jm, "venue");
    for (const auto& d : jm.at("dates")) meta.dates.push_back(Date::parse(d.get<std::string>()));
    meta.gender = detail::get_optional<std::string>(jm, "gender");
    const auto& teams = jm.at("teams");
    meta.teams = {teams.at(0).get<std::string>(), teams.at(1).get<std::string>()};
    meta.toss_winner = detail::get_optional<std::string>(jm, "toss_winner");
    if (auto dec = detail::get_optional<std::string>(jm, "toss_decision"))
      meta.toss_decision = *dec == "bat" ? TossDecision::bat : TossDecision::field;
    meta.outcome_winner = detail::get_optional<std::string>(jm, "outcome_winner");
    if (jm.contains("outcome_by") && !jm.at("outcome_by").is_null()) {
      const auto& by = jm.at("outcome_by");
      meta.outcome_by = Margin{by.at("kind").get<std::string>() == "runs" ? MarginKind::runs
                                                                          : MarginKind::wickets,
                               by.at("margin").get<int>()};
    }
    meta.player_of_match = detail::get_optional<std::vector<std::string>>(jm, "player_of_match");

    for (const auto& ji : j.at("innings")) {
      Innings inn;
      inn.batting_team = ji.at("batting_team").get<std::string>();
      for (const auto& jd : ji.at("deliveries")) {
        RawDelivery d;
        d.innings_index = jd.at("innings_index").get<int>();
        d.over = jd.at("over").get<int>();
        d.ball_in_over = jd.at("ball_in_over").get<int>();
        d.batting_team = jd.at("batting_team").get<std::string>();
        d.batsman = jd.at("batsman").get<std::string>();
        d.non_striker = jd.at("non_striker").get<std::string>();
        d.bowler = jd.at("bowler").get<std::string>();
        d.runs_batsman = jd.at("runs_batsman").get<int>();
        d.runs_extras = jd.at("runs_extras").get<int>();
        d.runs_total = jd.at("runs_total").get<int>();
        if (!jd.at("extras_kind").is_null()) {
          Extras e;
          for (const auto& [k, v] : jd.at("extras_kind").items()) {
            const int amount = v.get<int>();
            if (k == "wides") e.wides = amount;
            else if (k == "noballs") e.noballs = amount;
            else if (k == "byes") e.byes = amount;
            else if (k == "legbyes") e.legbyes = amount;
            else if (k == "penalty") e.penalty = amount;
            else e.other[k] = amount;
          }
          d.extras = std::move(e);
        }
        if (!jd.at("wicket").is_null()) {
          const auto& w = jd.at("wicket");
          d.wicket = Wicket{w.at("kind").get<std::string>(), w.at("player_out").get<std::string>(),
                            w.at("fielders").get<std::vector<std::string>>()};
        }
        inn.deliveries.push_back(std::move(d));
      }
      m.innings.push_back(std::move(inn));
    }
    validate(m);
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedDocument, std::string("match cache: ") + e.what());
  }
}

/// Cache layout: <cache>/<format dir>/<match_id>.json
inline std::filesystem::path cache_path(const std::filesystem::path& cache_dir,
                                        const MatchRecord& m) {
  return cache_dir / std::string(directory_name(m.meta.format)) / (m.meta.match_id + ".json");
}

inline void write_cached_match(const std::filesystem::path& cache_dir, const MatchRecord& m) {
  util::write_file(cache_path(cache_dir, m), to_json(m).dump(1) + "\n");
}

inline MatchRecord read_cached_match(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(util::read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::MalformedDocument, path.string() + ": " + e.what());
  }
  return match_from_json(j);
}

}  // namespace dreamxi::ingest
