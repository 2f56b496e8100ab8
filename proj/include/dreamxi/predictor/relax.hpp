#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dreamxi/dataset/store.hpp"
#include "dreamxi/error.hpp"

namespace dreamxi::predictor {

/// A projection request: `team1` is the player's side, `team2` the opposition.
struct PredictionQuery {
  std::string player;
  MatchFormat format = MatchFormat::T20;
  std::string team1;
  std::string team2;
  std::string venue;

  void validate() const {
    if (player.empty() || team1.empty() || team2.empty() || venue.empty())
      throw Error(ErrorCode::InvalidInput, "query fields player, team1, team2 and venue must be nonempty");
    if (team1 == team2) throw Error(ErrorCode::InvalidInput, "team1 and team2 must differ");
  }

  friend bool operator==(const PredictionQuery&, const PredictionQuery&) = default;
};

enum class Constraint { player, format, team1, team2, venue };

constexpr std::string_view to_string(Constraint c) {
  switch (c) {
    case Constraint::player: return "player";
    case Constraint::format: return "format";
    case Constraint::team1: return "team1";
    case Constraint::team2: return "team2";
    case Constraint::venue: return "venue";
  }
  return "?";
}

inline Constraint parse_constraint(std::string_view s) {
  for (auto c : {Constraint::player, Constraint::format, Constraint::team1, Constraint::team2, Constraint::venue})
    if (to_string(c) == s) return c;
  throw Error(ErrorCode::InvalidConfig, "unknown constraint '" + std::string(s) + "'");
}

/// Order in which constraints are dropped. The player is never dropped.
using RelaxationOrder = std::array<Constraint, 4>;
inline constexpr RelaxationOrder kDefaultRelaxation = {Constraint::venue, Constraint::team2, Constraint::team1,
                                                       Constraint::format};

inline void validate_order(const RelaxationOrder& order) {
  auto sorted = order;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != RelaxationOrder{Constraint::format, Constraint::team1, Constraint::team2, Constraint::venue})
    throw Error(ErrorCode::InvalidConfig,
                "relaxation order must list format, team1, team2 and venue exactly once each");
}

struct RelaxOptions {
  /// Stop once this many rows are matched; nullopt relaxes to the player alone.
  std::optional<std::size_t> k_min = 5;
  RelaxationOrder order = kDefaultRelaxation;
};

struct RelaxationStep {
  std::vector<Constraint> constraints;
  /// Distinct rows matched by this step and every earlier one.
  std::size_t rows_matched = 0;
};

struct RelaxationTrace {
  std::vector<RelaxationStep> steps;
  std::size_t n = 0;
};

template <class Row>
bool satisfies(const Row& r, const PredictionQuery& q, Constraint c) {
  switch (c) {
    case Constraint::player: return r.player() == q.player;
    case Constraint::format: return r.ctx.format == q.format;
    case Constraint::team1: return r.ctx.team1 == q.team1;
    case Constraint::team2: return r.ctx.team2 == q.team2;
    case Constraint::venue: return r.ctx.venue == q.venue;
  }
  return false;
}

template <class Row>
struct FetchResult {
  /// Table indexes, ordered by row key.
  std::vector<std::size_t> rows;
  RelaxationTrace trace;
};

/// Matches the player's rows against the full constraint set, then drops
/// constraints in `order` until at least k_min distinct rows are matched.
template <class Row>
FetchResult<Row> fetch_rows(const dataset::Table<Row>& table, const PredictionQuery& q,
                            const RelaxOptions& opt = {}) {
  validate_order(opt.order);
  if (opt.k_min && *opt.k_min == 0) throw Error(ErrorCode::InvalidConfig, "k_min must be >= 1");
  const auto& candidates = table.by_player(q.player);
  std::vector<Constraint> active = {Constraint::player, Constraint::format, Constraint::team1,
                                    Constraint::team2, Constraint::venue};
  std::map<dataset::RowKey, std::size_t> matched;
  FetchResult<Row> out;
  for (std::size_t dropped = 0;; ++dropped) {
    for (std::size_t i : candidates) {
      const Row& r = table[i];
      if (std::all_of(active.begin(), active.end(), [&](Constraint c) { return satisfies(r, q, c); }))
        matched.try_emplace(dataset::row_key(r), i);
    }
    out.trace.steps.push_back({active, matched.size()});
    if (opt.k_min && matched.size() >= *opt.k_min) break;
    if (dropped == opt.order.size()) break;
    std::erase(active, opt.order[dropped]);
  }
  out.trace.n = matched.size();
  if (matched.empty())
    throw Error(ErrorCode::ColdStart, "no history for player '" + q.player + "'");
  for (const auto& [key, i] : matched) out.rows.push_back(i);
  return out;
}

}  // namespace dreamxi::predictor
