#pragma once

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dreamxi/ingest/types.hpp"
#include "dreamxi/util/text.hpp"

namespace dreamxi::ingest {

namespace detail {

[[noreturn]] inline void malformed(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::MalformedDocument, path + ": " + what);
}

inline std::string scalar(const YAML::Node& n, const std::string& path) {
  if (!n || !n.IsScalar()) malformed(path, "expected a scalar");
  return n.Scalar();
}

inline int integer(const YAML::Node& n, const std::string& path) {
  const std::string s = scalar(n, path);
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) malformed(path, "expected an integer, got '" + s + "'");
  return v;
}

inline std::optional<std::string> optional_scalar(const YAML::Node& parent, const char* key,
                                                  const std::string& path) {
  const YAML::Node n = parent[key];
  if (!n || n.IsNull()) return std::nullopt;
  return scalar(n, path + "." + key);
}

inline std::vector<std::string> string_list(const YAML::Node& n, const std::string& path) {
  std::vector<std::string> out;
  if (n.IsScalar()) {
    out.push_back(n.Scalar());
    return out;
  }
  if (!n.IsSequence()) malformed(path, "expected a list");
  for (std::size_t i = 0; i < n.size(); ++i) {
    const YAML::Node item = n[i];
    const std::string ipath = path + "[" + std::to_string(i) + "]";
    // Newer files write fielders as {name: X}.
    if (item.IsMap() && item["name"])
      out.push_back(scalar(item["name"], ipath + ".name"));
    else
      out.push_back(scalar(item, ipath));
  }
  return out;
}

/// "O.B" -> (over, ball). Ball numbers may exceed 6 when extras are bowled.
inline std::pair<int, int> decode_ball_key(const std::string& key, const std::string& path) {
  const auto dot = key.find('.');
  if (dot == std::string::npos || dot == 0 || dot + 1 == key.size())
    malformed(path, "ball key '" + key + "' is not of the form over.ball");
  int over = 0, ball = 0;
  auto parse = [&](std::string_view s, int& out) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc{} || p != s.data() + s.size())
      malformed(path, "ball key '" + key + "' is not of the form over.ball");
  };
  parse(std::string_view(key).substr(0, dot), over);
  parse(std::string_view(key).substr(dot + 1), ball);
  return {over, ball};
}

inline Extras parse_extras(const YAML::Node& n, const std::string& path) {
  if (!n.IsMap()) malformed(path, "expected a map of extras");
  Extras e;
  for (const auto& kv : n) {
    const std::string kind = scalar(kv.first, path);
    const int amount = integer(kv.second, path + "." + kind);
    if (amount < 0) malformed(path + "." + kind, "negative extras");
    if (kind == "wides") e.wides += amount;
    else if (kind == "noballs") e.noballs += amount;
    else if (kind == "byes") e.byes += amount;
    else if (kind == "legbyes") e.legbyes += amount;
    else if (kind == "penalty") e.penalty += amount;
    else e.other[kind] += amount;
  }
  return e;
}

inline Wicket parse_wicket(const YAML::Node& n, const std::string& path) {
  if (!n.IsMap()) malformed(path, "expected a wicket map");
  Wicket w;
  w.kind = scalar(n["kind"], path + ".kind");
  w.player_out = scalar(n["player_out"], path + ".player_out");
  if (n["fielders"]) w.fielders = string_list(n["fielders"], path + ".fielders");
  return w;
}

inline const char* first_present(const YAML::Node& n, const char* a, const char* b) {
  return n[a] ? a : b;
}

inline RawDelivery parse_delivery(const YAML::Node& n, const std::string& path) {
  if (!n.IsMap()) malformed(path, "expected a delivery map");
  RawDelivery d;
  const char* bat_key = first_present(n, "batsman", "batter");
  d.batsman = scalar(n[bat_key], path + "." + bat_key);
  d.non_striker = scalar(n["non_striker"], path + ".non_striker");
  d.bowler = scalar(n["bowler"], path + ".bowler");
  const YAML::Node runs = n["runs"];
  if (!runs || !runs.IsMap()) malformed(path + ".runs", "missing runs map");
  const char* rb_key = first_present(runs, "batsman", "batter");
  d.runs_batsman = integer(runs[rb_key], path + ".runs." + rb_key);
  d.runs_extras = integer(runs["extras"], path + ".runs.extras");
  d.runs_total = integer(runs["total"], path + ".runs.total");
  if (n["extras"]) {
    Extras e = parse_extras(n["extras"], path + ".extras");
    if (!e.empty()) d.extras = std::move(e);
  }
  if (n["wicket"]) {
    d.wicket = parse_wicket(n["wicket"], path + ".wicket");
  } else if (n["wickets"]) {
    const YAML::Node ws = n["wickets"];
    if (!ws.IsSequence()) malformed(path + ".wickets", "expected a list");
    // One dismissal per delivery is modelled; a second (vanishingly rare) is dropped.
    if (ws.size() > 0) d.wicket = parse_wicket(ws[0], path + ".wickets[0]");
  }
  return d;
}

/// Old layout: deliveries is a list of single-key maps {"O.B": delivery}.
inline void parse_keyed_deliveries(const YAML::Node& seq, const std::string& path,
                                   Innings& inn) {
  if (!seq.IsSequence()) malformed(path, "expected a list of deliveries");
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const YAML::Node item = seq[i];
    const std::string ipath = path + "[" + std::to_string(i) + "]";
    if (!item.IsMap() || item.size() != 1) malformed(ipath, "expected a single {over.ball: ...} entry");
    const auto kv = *item.begin();
    const std::string key = scalar(kv.first, ipath);
    auto [over, ball] = decode_ball_key(key, ipath);
    RawDelivery d = parse_delivery(kv.second, ipath + "." + key);
    d.over = over;
    d.ball_in_over = ball;
    inn.deliveries.push_back(std::move(d));
  }
}

/// Newer layout: overs is a list of {over: N, deliveries: [delivery, ...]}.
inline void parse_over_list(const YAML::Node& seq, const std::string& path, Innings& inn) {
  if (!seq.IsSequence()) malformed(path, "expected a list of overs");
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const YAML::Node over = seq[i];
    const std::string opath = path + "[" + std::to_string(i) + "]";
    const int over_no = integer(over["over"], opath + ".over");
    const YAML::Node balls = over["deliveries"];
    if (!balls || !balls.IsSequence()) malformed(opath + ".deliveries", "expected a list");
    for (std::size_t b = 0; b < balls.size(); ++b) {
      RawDelivery d = parse_delivery(balls[b], opath + ".deliveries[" + std::to_string(b) + "]");
      d.over = over_no;
      d.ball_in_over = static_cast<int>(b) + 1;
      inn.deliveries.push_back(std::move(d));
    }
  }
}

inline Innings parse_innings(const YAML::Node& item, const std::string& path) {
  if (!item.IsMap()) malformed(path, "expected an innings map");
  YAML::Node body = item;
  std::string bpath = path;
  // Old layout wraps the body in a single "1st innings"-style key.
  if (item.size() == 1 && !item["team"]) {
    const auto kv = *item.begin();
    bpath = path + "." + scalar(kv.first, path);
    body = kv.second;
    if (!body.IsMap()) malformed(bpath, "expected an innings map");
  }
  Innings inn;
  inn.batting_team = scalar(body["team"], bpath + ".team");
  if (body["deliveries"]) {
    parse_keyed_deliveries(body["deliveries"], bpath + ".deliveries", inn);
  } else if (body["overs"]) {
    parse_over_list(body["overs"], bpath + ".overs", inn);
  } else {
    throw Error(ErrorCode::MissingSection, bpath + ": innings has no deliveries");
  }
  return inn;
}

inline MatchMeta parse_info(const YAML::Node& info, std::optional<MatchFormat> format_hint) {
  const std::string path = "info";
  if (!info.IsMap()) malformed(path, "expected a map");
  MatchMeta meta;
  meta.city = optional_scalar(info, "city", path);
  meta.venue = optional_scalar(info, "venue", path);
  meta.gender = optional_scalar(info, "gender", path);

  if (const auto type = optional_scalar(info, "match_type", path)) {
    try {
      meta.format = parse_format(*type);
    } catch (const Error&) {
      malformed("info.match_type", "unsupported match type '" + *type + "'");
    }
  } else if (format_hint) {
    meta.format = *format_hint;
  } else {
    throw Error(ErrorCode::MissingSection, "info.match_type: missing and no format hint given");
  }
  // cricsheet labels IPL fixtures as T20; the hint (directory or flag) disambiguates.
  if (format_hint == MatchFormat::IPL) meta.format = MatchFormat::IPL;

  const YAML::Node dates = info["dates"];
  if (!dates) throw Error(ErrorCode::MissingSection, "info.dates: missing");
  for (const auto& s : string_list(dates, "info.dates")) {
    try {
      meta.dates.push_back(Date::parse(s));
    } catch (const Error&) {
      malformed("info.dates", "bad date '" + s + "'");
    }
  }

  const YAML::Node teams = info["teams"];
  if (!teams) throw Error(ErrorCode::MissingSection, "info.teams: missing");
  const auto names = string_list(teams, "info.teams");
  if (names.size() != 2)
    throw Error(ErrorCode::InvariantViolation, "info.teams: expected exactly 2 teams");
  meta.teams = {names[0], names[1]};

  if (const YAML::Node toss = info["toss"]; toss && toss.IsMap()) {
    meta.toss_winner = optional_scalar(toss, "winner", "info.toss");
    if (const auto dec = optional_scalar(toss, "decision", "info.toss")) {
      if (*dec == "bat") meta.toss_decision = TossDecision::bat;
      else if (*dec == "field") meta.toss_decision = TossDecision::field;
      else malformed("info.toss.decision", "unknown decision '" + *dec + "'");
    }
  }

  if (const YAML::Node outcome = info["outcome"]; outcome && outcome.IsMap()) {
    meta.outcome_winner = optional_scalar(outcome, "winner", "info.outcome");
    if (const YAML::Node by = outcome["by"]; by && by.IsMap()) {
      // Some hand-edited files nest the winner under `by`.
      if (!meta.outcome_winner) meta.outcome_winner = optional_scalar(by, "winner", "info.outcome.by");
      if (by["runs"]) meta.outcome_by = Margin{MarginKind::runs, integer(by["runs"], "info.outcome.by.runs")};
      else if (by["wickets"])
        meta.outcome_by = Margin{MarginKind::wickets, integer(by["wickets"], "info.outcome.by.wickets")};
    }
  }

  if (const YAML::Node pom = info["player_of_match"]; pom && !pom.IsNull())
    meta.player_of_match = string_list(pom, "info.player_of_match");
  return meta;
}

}  // namespace detail

/// Parses one cricsheet YAML match document. `match_id` is conventionally
/// the source filename stem.
inline MatchRecord parse_match_file(std::string_view bytes,
                                    std::optional<MatchFormat> format_hint = std::nullopt,
                                    std::string match_id = {}) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(bytes));
  } catch (const YAML::Exception& e) {
    throw Error(ErrorCode::MalformedDocument, "<document>: " + std::string(e.what()));
  }
  if (!root.IsMap()) detail::malformed("<document>", "top level is not a map");

  MatchRecord m;
  try {
    const YAML::Node info = root["info"];
    if (!info) throw Error(ErrorCode::MissingSection, "info: missing");
    m.meta = detail::parse_info(info, format_hint);
    m.meta.match_id = std::move(match_id);

    const YAML::Node innings = root["innings"];
    if (!innings || innings.IsNull() || (innings.IsSequence() && innings.size() == 0))
      throw Error(ErrorCode::MissingSection, "innings: missing or empty");
    if (!innings.IsSequence()) detail::malformed("innings", "expected a list");
    for (std::size_t i = 0; i < innings.size(); ++i) {
      Innings inn = detail::parse_innings(innings[i], "innings[" + std::to_string(i) + "]");
      for (auto& d : inn.deliveries) {
        d.innings_index = static_cast<int>(i) + 1;
        d.batting_team = inn.batting_team;
      }
      m.innings.push_back(std::move(inn));
    }
  } catch (const YAML::Exception& e) {
    throw Error(ErrorCode::MalformedDocument, std::string(e.what()));
  }
  validate(m);
  return m;
}

inline MatchRecord parse_match_path(const std::filesystem::path& path,
                                    std::optional<MatchFormat> format_hint = std::nullopt) {
  return parse_match_file(util::read_file(path), format_hint, path.stem().string());
}

/// All innings' deliveries in (innings, over, ball) order.
inline std::vector<RawDelivery> flatten_deliveries(const MatchRecord& match) {
  std::size_t n = 0;
  for (const auto& inn : match.innings) n += inn.deliveries.size();
  std::vector<RawDelivery> out;
  out.reserve(n);
  for (const auto& inn : match.innings)
    out.insert(out.end(), inn.deliveries.begin(), inn.deliveries.end());
  return out;
}

}  // namespace dreamxi::ingest
