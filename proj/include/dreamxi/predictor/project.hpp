#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dreamxi/learner/model.hpp"
#include "dreamxi/predictor/relax.hpp"
#include "dreamxi/util/parallel.hpp"

namespace dreamxi::predictor {

struct Models {
  const learner::Model* batting = nullptr;
  const learner::Model* bowling = nullptr;

  void validate() const {
    if (!batting || !bowling) throw Error(ErrorCode::ArtifactsMissing, "both discipline models are required");
    if (batting->discipline != dataset::Discipline::batting ||
        bowling->discipline != dataset::Discipline::bowling)
      throw Error(ErrorCode::ArtifactMismatch, "models are swapped or of the wrong discipline");
  }
};

struct DisciplineProjection {
  double points = 0;
  std::size_t n_rows = 0;
  RelaxationTrace trace;
};

struct PlayerProjection {
  std::string player;
  std::optional<DisciplineProjection> batting;
  std::optional<DisciplineProjection> bowling;

  double total_points() const {
    return (batting ? batting->points : 0.0) + (bowling ? bowling->points : 0.0);
  }
  std::size_t n_rows_used() const {
    return (batting ? batting->n_rows : 0) + (bowling ? bowling->n_rows : 0);
  }
};

/// Mean model prediction over the player's relaxed history in one
/// discipline; nullopt when the player has no rows there.
template <class Row>
std::optional<DisciplineProjection> project_discipline(const dataset::Table<Row>& table,
                                                       const learner::Model& model,
                                                       const PredictionQuery& q, const RelaxOptions& opt) {
  if (table.by_player(q.player).empty()) return std::nullopt;
  auto fetched = fetch_rows(table, q, opt);
  double sum = 0;
  for (std::size_t i : fetched.rows) sum += model.predict(table[i]);
  DisciplineProjection p;
  p.n_rows = fetched.rows.size();
  p.points = sum / static_cast<double>(p.n_rows);
  p.trace = std::move(fetched.trace);
  return p;
}

inline PlayerProjection project(const dataset::PerformanceStore& store, const Models& models,
                                const PredictionQuery& q, const RelaxOptions& opt = {}) {
  q.validate();
  models.validate();
  PlayerProjection p;
  p.player = q.player;
  p.batting = project_discipline(store.batting, *models.batting, q, opt);
  p.bowling = project_discipline(store.bowling, *models.bowling, q, opt);
  if (!p.batting && !p.bowling)
    throw Error(ErrorCode::ColdStart, "no batting or bowling history for player '" + q.player + "'");
  return p;
}

struct Fixture {
  std::string team1;
  std::string team2;
  MatchFormat format = MatchFormat::T20;
  std::string venue;
};

struct ColdStartReport {
  std::string player;
  int team_index = 0;
  std::string message;
};

struct SquadProjection {
  PlayerProjection projection;
  int team_index = 0;
};

struct FixtureProjection {
  std::vector<SquadProjection> players;
  std::vector<ColdStartReport> cold_starts;
};

/// Projects both squads against the fixture. Players without history are
/// listed in cold_starts; order follows the input squads.
inline FixtureProjection project_fixture(const dataset::PerformanceStore& store, const Models& models,
                                         const Fixture& fixture,
                                         const std::array<std::vector<std::string>, 2>& squads,
                                         const RelaxOptions& opt = {}, unsigned threads = 0) {
  if (squads[0].empty() || squads[1].empty()) throw Error(ErrorCode::EmptySquad, "both squads need players");
  models.validate();
  struct Job {
    PredictionQuery q;
    int team;
  };
  std::vector<Job> jobs;
  for (int t = 0; t < 2; ++t)
    for (const auto& name : squads[static_cast<std::size_t>(t)])
      jobs.push_back({{name, fixture.format, t == 0 ? fixture.team1 : fixture.team2,
                       t == 0 ? fixture.team2 : fixture.team1, fixture.venue},
                      t});
  std::vector<std::optional<PlayerProjection>> results(jobs.size());
  std::vector<std::string> errors(jobs.size());
  util::parallel_for(
      jobs.size(),
      [&](std::size_t i) {
        try {
          results[i] = project(store, models, jobs[i].q, opt);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::ColdStart) throw;
          errors[i] = e.detail();
        }
      },
      threads);
  FixtureProjection out;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (results[i]) out.players.push_back({std::move(*results[i]), jobs[i].team});
    else out.cold_starts.push_back({jobs[i].q.player, jobs[i].team, errors[i]});
  }
  return out;
}

}  // namespace dreamxi::predictor
