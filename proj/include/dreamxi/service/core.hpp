#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>

#include "dreamxi/dataset/store.hpp"
#include "dreamxi/learner/model.hpp"
#include "dreamxi/optimizer/cards.hpp"
#include "dreamxi/optimizer/credits.hpp"
#include "dreamxi/optimizer/solvers.hpp"
#include "dreamxi/predictor/project.hpp"
#include "dreamxi/service/config.hpp"
#include "dreamxi/service/insights.hpp"
#include "dreamxi/service/json.hpp"

namespace dreamxi::service {

/// Per-match score history of a player: batting and bowling rows of the same
/// match are added together, oldest first.
inline std::vector<double> player_history(const dataset::PerformanceStore& store, const std::string& player) {
  std::map<std::tuple<Date, int, std::string, MatchFormat, std::string>, double> per_match;
  for (auto i : store.batting.by_player(player)) {
    const auto& c = store.batting[i].ctx;
    per_match[{c.date, c.seq, c.team2, c.format, c.venue}] += store.batting[i].fantasy_score;
  }
  for (auto i : store.bowling.by_player(player)) {
    const auto& c = store.bowling[i].ctx;
    per_match[{c.date, c.seq, c.team2, c.format, c.venue}] += store.bowling[i].fantasy_score;
  }
  std::vector<double> out;
  for (const auto& [k, v] : per_match) out.push_back(v);
  return out;
}

inline optimizer::CreditScale league_credit_scale(const dataset::PerformanceStore& store, std::size_t window) {
  std::set<std::string> players;
  for (const auto& p : store.batting.players()) players.insert(p);
  for (const auto& p : store.bowling.players()) players.insert(p);
  optimizer::CreditScale scale;
  scale.window = window;
  bool first = true;
  for (const auto& p : players) {
    const double avg = optimizer::trailing_average(player_history(store, p), window);
    if (first || avg < scale.lowest_average) scale.lowest_average = avg;
    if (first || avg > scale.highest_average) scale.highest_average = avg;
    first = false;
  }
  return scale;
}

/// Tables and models loaded together; immutable once built.
struct Artifacts {
  dataset::PerformanceStore store;
  std::string fingerprint;
  learner::Model batting;
  learner::Model bowling;
  optimizer::CreditScale credit_scale;

  predictor::Models models() const { return {&batting, &bowling}; }
};

inline std::shared_ptr<const Artifacts> load_artifacts(const AppConfig& cfg) {
  auto a = std::make_shared<Artifacts>();
  auto tables = dataset::load_tables(cfg.tables_dir());
  a->store = std::move(tables.store);
  a->fingerprint = std::move(tables.fingerprint);
  a->batting = learner::load_model(cfg.model_path(dataset::Discipline::batting));
  a->bowling = learner::load_model(cfg.model_path(dataset::Discipline::bowling));
  for (const auto* m : {&a->batting, &a->bowling})
    if (m->info.tables_fingerprint != a->fingerprint)
      throw Error(ErrorCode::ArtifactMismatch, std::string(to_string(m->discipline)) +
                                                   " model was trained on tables " + m->info.tables_fingerprint +
                                                   ", current tables are " + a->fingerprint);
  a->credit_scale = league_credit_scale(a->store, cfg.credit_window);
  return a;
}

/// Loads artifacts on first use and keeps them for the life of the process.
class ArtifactCache {
 public:
  explicit ArtifactCache(AppConfig cfg) : cfg_(std::move(cfg)) {}

  const AppConfig& config() const { return cfg_; }

  std::shared_ptr<const Artifacts> get() {
    std::lock_guard lock(mu_);
    if (!current_) current_ = load_artifacts(cfg_);
    return current_;
  }

 private:
  AppConfig cfg_;
  std::mutex mu_;
  std::shared_ptr<const Artifacts> current_;
};

/// Request handling shared by the CLI and the HTTP server.
class Core {
 public:
  explicit Core(ArtifactCache& cache) : cache_(cache) {}

  Response health() {
    return guarded([&] {
      const auto a = cache_.get();
      return json{{"status", "ok"},
                  {"tables_fingerprint", a->fingerprint},
                  {"batting_rows", a->store.batting.size()},
                  {"bowling_rows", a->store.bowling.size()}};
    });
  }

  Response teams() {
    return guarded([&] { return json(cache_.get()->store.teams()); });
  }

  Response players(const std::string& team) {
    return guarded([&] {
      const auto a = cache_.get();
      if (team.empty()) throw Error(ErrorCode::InvalidInput, "query parameter 'team' is required");
      const auto teams = a->store.teams();
      if (!std::binary_search(teams.begin(), teams.end(), team))
        throw Error(ErrorCode::UnknownTeam, "unknown team '" + team + "'");
      return json(a->store.players_of(team));
    });
  }

  Response player_insights(const std::string& name) {
    return guarded([&] { return to_json(service::player_insights(cache_.get()->store, name, cfg().insight_window)); });
  }

  Response team_insights(const std::string& name) {
    return guarded([&] { return to_json(service::team_insights(cache_.get()->store, name)); });
  }

  Response project(const std::string& body) {
    return guarded([&] {
      const auto req = parse_body(body);
      const auto q = query_from_json(req);
      auto opt = cfg().relax;
      apply_k_min(req, opt);
      const auto a = cache_.get();
      return to_json(predictor::project(a->store, a->models(), q, opt));
    });
  }

  Response recommend(const std::string& body) {
    return guarded([&] { return recommend_json(parse_body(body)); });
  }

 private:
  const AppConfig& cfg() const { return cache_.config(); }

  template <class Fn>
  static Response guarded(Fn&& fn) {
    try {
      return ok(fn());
    } catch (const Error& e) {
      return fail(e.code(), e.detail());
    } catch (const std::exception& e) {
      return fail(ErrorCode::InvalidInput, e.what());
    }
  }

  struct CardEntry {
    optimizer::CardSpec spec;
    std::string credit_source = "card";
    std::string points_source = "card";
  };

  static std::vector<std::string> default_squad(const dataset::PerformanceStore& store, const std::string& team,
                                                MatchFormat f) {
    std::set<std::string> s;
    for (auto i : store.batting.by_team(team))
      if (store.batting[i].ctx.format == f) s.insert(store.batting[i].batsman);
    for (auto i : store.bowling.by_team(team))
      if (store.bowling[i].ctx.format == f) s.insert(store.bowling[i].bowler);
    if (s.empty())
      throw Error(ErrorCode::UnknownTeam, "no " + std::string(to_string(f)) + " players on record for '" + team + "'");
    return {s.begin(), s.end()};
  }

  json recommend_json(const json& req) {
    auto rc = cfg().roster;
    if (req.contains("constraints") && !req.at("constraints").is_null()) {
      const auto& c = req.at("constraints");
      if (auto v = number_field(c, "budget")) rc.budget = *v;
      if (auto v = number_field(c, "roster_size")) rc.roster_size = static_cast<int>(*v);
      if (auto v = number_field(c, "max_per_team")) rc.max_per_team = static_cast<int>(*v);
    }
    try {
      rc.validate();
    } catch (const Error& e) {
      throw Error(ErrorCode::InvalidInput, e.detail());
    }
    const auto method = req.contains("method") ? optimizer::parse_method(string_field(req, "method")) : cfg().method;
    const bool estimate = bool_field(req, "estimate_credits");

    std::vector<CardEntry> entries;
    std::map<std::string, std::size_t> by_name;
    if (req.contains("cards") && !req.at("cards").is_null()) {
      if (!req.at("cards").is_array()) throw Error(ErrorCode::InvalidInput, "field 'cards' must be a list");
      for (const auto& c : req.at("cards")) {
        CardEntry e;
        e.spec.player = string_field(c, "player");
        if (c.contains("team") && !c.at("team").is_null()) e.spec.team = string_field(c, "team");
        e.spec.credit = number_field(c, "credit");
        e.spec.points = number_field(c, "points");
        e.spec.locked = bool_field(c, "locked");
        e.spec.excluded = bool_field(c, "excluded");
        if (!by_name.emplace(e.spec.player, entries.size()).second)
          throw Error(ErrorCode::InvalidInput, "duplicate card for '" + e.spec.player + "'");
        entries.push_back(std::move(e));
      }
    }

    std::array<std::string, 2> teams;
    json cold = json::array();
    std::shared_ptr<const Artifacts> a;
    if (req.contains("fixture") && !req.at("fixture").is_null()) {
      const auto& fj = req.at("fixture");
      predictor::Fixture fx{string_field(fj, "team1"), string_field(fj, "team2"), parse_format(string_field(fj, "format")),
                            string_field(fj, "venue")};
      if (fx.team1 == fx.team2) throw Error(ErrorCode::InvalidInput, "fixture teams must differ");
      teams = {fx.team1, fx.team2};
      a = cache_.get();
      std::array<std::vector<std::string>, 2> squads;
      if (req.contains("squads") && !req.at("squads").is_null()) {
        const auto& sq = req.at("squads");
        if (!sq.is_array() || sq.size() != 2) throw Error(ErrorCode::InvalidInput, "'squads' must hold two lists");
        for (std::size_t t = 0; t < 2; ++t) squads[t] = string_list(json{{"s", sq[t]}}, "s");
      } else {
        for (std::size_t t = 0; t < 2; ++t) squads[t] = default_squad(a->store, teams[t], fx.format);
      }
      for (auto& e : entries) {
        if (e.spec.team.empty()) throw Error(ErrorCode::InvalidInput, "card '" + e.spec.player + "' needs a team");
        if (e.spec.team != teams[0] && e.spec.team != teams[1])
          throw Error(ErrorCode::InvalidInput, "card '" + e.spec.player + "' team is not in the fixture");
        auto& squad = squads[e.spec.team == teams[0] ? 0 : 1];
        if (std::find(squad.begin(), squad.end(), e.spec.player) == squad.end()) squad.push_back(e.spec.player);
      }
      // Project only players whose points are not supplied.
      std::array<std::vector<std::string>, 2> to_project;
      for (std::size_t t = 0; t < 2; ++t)
        for (const auto& p : squads[t]) {
          auto it = by_name.find(p);
          if (it == by_name.end()) {
            CardEntry e;
            e.spec.player = p;
            e.spec.team = teams[t];
            by_name.emplace(p, entries.size());
            entries.push_back(std::move(e));
            it = by_name.find(p);
          }
          if (!entries[it->second].spec.points) to_project[t].push_back(p);
        }
      std::set<std::string> dropped;
      if (!to_project[0].empty() || !to_project[1].empty()) {
        std::map<std::string, double> projected;
        for (std::size_t t = 0; t < 2; ++t)
          for (const auto& p : to_project[t]) {
            predictor::PredictionQuery q{p, fx.format, teams[t], teams[1 - t], fx.venue};
            try {
              projected[p] = predictor::project(a->store, a->models(), q, relax_for(req)).total_points();
            } catch (const Error& e) {
              if (e.code() != ErrorCode::ColdStart) throw;
              cold.push_back({{"player", p}, {"team", teams[t]}, {"message", e.detail()}});
              dropped.insert(p);
            }
          }
        for (auto& e : entries)
          if (auto it = projected.find(e.spec.player); it != projected.end()) {
            e.spec.points = it->second;
            e.points_source = "projected";
          }
      }
      std::erase_if(entries, [&](const CardEntry& e) { return dropped.count(e.spec.player) > 0; });
    } else {
      if (entries.empty()) throw Error(ErrorCode::InvalidInput, "provide 'cards', a 'fixture', or both");
      std::size_t n_teams = 0;
      for (const auto& e : entries) {
        if (e.spec.team.empty()) throw Error(ErrorCode::InvalidInput, "card '" + e.spec.player + "' needs a team");
        if (e.spec.team == teams[0] || (n_teams == 2 && e.spec.team == teams[1])) continue;
        if (n_teams == 2) throw Error(ErrorCode::InvalidInput, "cards name more than two teams");
        teams[n_teams++] = e.spec.team;
      }
      if (n_teams < 2) throw Error(ErrorCode::InvalidInput, "cards must come from two teams");
      for (const auto& e : entries)
        if (!e.spec.points)
          throw Error(ErrorCode::InvalidInput, "card '" + e.spec.player + "' has no points and no fixture was given");
    }

    for (auto& e : entries) {
      if (e.spec.credit) continue;
      if (!estimate)
        throw Error(ErrorCode::InvalidInput,
                    "no credit for '" + e.spec.player + "'; supply credits or set estimate_credits");
      if (!a) a = cache_.get();
      const auto history = player_history(a->store, e.spec.player);
      if (history.empty()) throw Error(ErrorCode::EmptyHistory, "no history to price '" + e.spec.player + "'");
      e.spec.credit = optimizer::estimate_credits(history, a->credit_scale);
      e.credit_source = "estimated";
    }

    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < entries.size(); ++i) index[entries[i].spec.player] = i;
    auto mark = [&](const char* key, bool optimizer::CardSpec::*flag) {
      for (const auto& name : string_list(req, key)) {
        auto it = index.find(name);
        if (it == index.end()) throw Error(ErrorCode::InvalidInput, std::string(key) + " names unknown player '" + name + "'");
        entries[it->second].spec.*flag = true;
      }
    };
    mark("lock", &optimizer::CardSpec::locked);
    mark("exclude", &optimizer::CardSpec::excluded);

    std::vector<optimizer::PlayerCard> cards;
    json card_json = json::array();
    for (const auto& e : entries) {
      const auto& s = e.spec;
      cards.push_back({s.player, s.team == teams[0] ? 0 : 1, *s.credit, *s.points, s.locked, s.excluded});
      card_json.push_back({{"player", s.player},
                           {"team", s.team},
                           {"credit", *s.credit},
                           {"points", *s.points},
                           {"locked", s.locked},
                           {"excluded", s.excluded},
                           {"credit_source", e.credit_source},
                           {"points_source", e.points_source}});
    }
    const auto rec = optimizer::recommend(cards, rc, method);
    return {{"recommendation", to_json(rec, teams)},
            {"cards", card_json},
            {"cold_starts", cold},
            {"constraints", {{"budget", rc.budget}, {"roster_size", rc.roster_size}, {"max_per_team", rc.max_per_team}}}};
  }

  predictor::RelaxOptions relax_for(const json& req) const {
    auto opt = cfg().relax;
    apply_k_min(req, opt);
    return opt;
  }

  ArtifactCache& cache_;
};

}  // namespace dreamxi::service
