#pragma once

#include <array>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "dreamxi/error.hpp"
#include "dreamxi/optimizer/cards.hpp"
#include "dreamxi/optimizer/lineup.hpp"
#include "dreamxi/predictor/project.hpp"
#include "dreamxi/service/insights.hpp"

namespace dreamxi::service {

using nlohmann::json;

inline json to_json(const predictor::RelaxationTrace& t) {
  json steps = json::array();
  for (const auto& s : t.steps) {
    json names = json::array();
    for (auto c : s.constraints) names.push_back(std::string(to_string(c)));
    steps.push_back({{"constraints", names}, {"rows_matched", s.rows_matched}});
  }
  return {{"steps", steps}, {"n", t.n}};
}

inline json to_json(const predictor::PlayerProjection& p) {
  auto points = [](const auto& d) { return d ? json(d->points) : json(nullptr); };
  auto trace = [](const auto& d) { return d ? to_json(d->trace) : json(nullptr); };
  return {{"player", p.player},
          {"batting_points", points(p.batting)},
          {"bowling_points", points(p.bowling)},
          {"total_points", p.total_points()},
          {"n_rows_used", p.n_rows_used()},
          {"trace", {{"batting", trace(p.batting)}, {"bowling", trace(p.bowling)}}}};
}

inline json to_json(const optimizer::Recommendation& r, const std::array<std::string, 2>& teams) {
  json selected = json::array();
  for (const auto& c : r.selected)
    selected.push_back({{"player", c.player},
                        {"team", teams[static_cast<std::size_t>(c.team_index)]},
                        {"team_index", c.team_index},
                        {"credit", c.credit},
                        {"points", c.projected_points},
                        {"locked", c.locked}});
  return {{"method", std::string(to_string(r.method))},
          {"selected", selected},
          {"captain", r.captain},
          {"vice_captain", r.vice_captain},
          {"total_credits", r.total_credits},
          {"total_points", r.total_points},
          {"expected_points", r.expected_points}};
}

inline json to_json(const FiveNumber& f) {
  return {{"min", f.min}, {"q1", f.q1}, {"median", f.median}, {"q3", f.q3}, {"max", f.max}};
}

inline json to_json(const InsightSeries& s) {
  json points = json::array();
  for (const auto& p : s.points) points.push_back({{"label", p.label}, {"value", p.value}});
  json j = {{"kind", std::string(to_string(s.kind))}, {"scope", s.scope}, {"subject", s.subject}, {"points", points}};
  j["discipline"] = s.discipline ? json(std::string(to_string(*s.discipline))) : json(nullptr);
  j["summary"] = s.summary ? to_json(*s.summary) : json(nullptr);
  j["value"] = s.value ? json(*s.value) : json(nullptr);
  return j;
}

inline json to_json(const std::vector<InsightSeries>& v) {
  json out = json::array();
  for (const auto& s : v) out.push_back(to_json(s));
  return out;
}

/// HTTP status for an error code; the CLI maps the same codes to exit status.
inline int http_status(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidInput:
    case ErrorCode::InvalidConfig:
    case ErrorCode::MalformedDocument:
    case ErrorCode::SchemaMismatch:
    case ErrorCode::WidthMismatch:
    case ErrorCode::EmptySquad:
    case ErrorCode::UnknownLabel:
      return 400;
    case ErrorCode::UnknownPlayer:
    case ErrorCode::UnknownTeam:
      return 404;
    case ErrorCode::Infeasible:
    case ErrorCode::TooFewPlayers:
    case ErrorCode::TooLarge:
    case ErrorCode::ColdStart:
    case ErrorCode::EmptyHistory:
      return 422;
    case ErrorCode::ArtifactsMissing:
    case ErrorCode::ArtifactMismatch:
      return 503;
    default:
      return 500;
  }
}

/// Response body shared by the HTTP service and the CLI.
struct Response {
  int status = 200;
  std::string body;
};

inline Response ok(const json& data) { return {200, json{{"ok", true}, {"data", data}}.dump() + "\n"}; }

inline Response fail(ErrorCode code, const std::string& message) {
  return {http_status(code),
          json{{"ok", false}, {"error", {{"code", std::string(to_string(code))}, {"message", message}}}}.dump() + "\n"};
}

// ---- request parsing ---------------------------------------------------------

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::InvalidInput, std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::string string_field(const json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_string()) throw Error(ErrorCode::InvalidInput, std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

inline std::optional<double> number_field(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  if (!j.at(key).is_number()) throw Error(ErrorCode::InvalidInput, std::string("field '") + key + "' must be a number");
  return j.at(key).get<double>();
}

inline bool bool_field(const json& j, const char* key, bool fallback = false) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  if (!j.at(key).is_boolean()) throw Error(ErrorCode::InvalidInput, std::string("field '") + key + "' must be a boolean");
  return j.at(key).get<bool>();
}

inline std::vector<std::string> string_list(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return {};
  const auto& v = j.at(key);
  if (!v.is_array()) throw Error(ErrorCode::InvalidInput, std::string("field '") + key + "' must be a list");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string()) throw Error(ErrorCode::InvalidInput, std::string("field '") + key + "' must hold strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

inline json parse_body(const std::string& body) {
  try {
    auto j = json::parse(body);
    if (!j.is_object()) throw Error(ErrorCode::InvalidInput, "request body must be a JSON object");
    return j;
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidInput, std::string("request body is not valid JSON: ") + e.what());
  }
}

inline predictor::PredictionQuery query_from_json(const json& j) {
  predictor::PredictionQuery q;
  q.player = string_field(j, "player");
  q.format = parse_format(string_field(j, "format"));
  q.team1 = string_field(j, "team1");
  q.team2 = string_field(j, "team2");
  q.venue = string_field(j, "venue");
  q.validate();
  return q;
}

inline json to_json(const predictor::PredictionQuery& q) {
  return {{"player", q.player},
          {"format", std::string(to_string(q.format))},
          {"team1", q.team1},
          {"team2", q.team2},
          {"venue", q.venue}};
}

/// A card as it appears in a recommend request; blank fields are omitted.
inline json to_json(const optimizer::CardSpec& c) {
  json j = {{"player", c.player}, {"team", c.team}};
  if (c.credit) j["credit"] = *c.credit;
  if (c.points) j["points"] = *c.points;
  if (c.locked) j["locked"] = true;
  if (c.excluded) j["excluded"] = true;
  return j;
}

/// k_min as a positive integer or "unlimited".
inline void apply_k_min(const json& j, predictor::RelaxOptions& opt) {
  if (!j.contains("k_min") || j.at("k_min").is_null()) return;
  const auto& v = j.at("k_min");
  if (v.is_string() && v.get<std::string>() == "unlimited") {
    opt.k_min = std::nullopt;
  } else if (v.is_number_integer() && v.get<long long>() >= 1) {
    opt.k_min = v.get<std::size_t>();
  } else {
    throw Error(ErrorCode::InvalidInput, "k_min must be a positive integer or \"unlimited\"");
  }
}

}  // namespace dreamxi::service
