#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "dreamxi/error.hpp"
#include "dreamxi/util/text.hpp"

namespace dreamxi::optimizer {

struct PlayerCard {
  std::string player;
  int team_index = 0;
  double credit = 8.0;
  double projected_points = 0;
  bool locked = false;
  bool excluded = false;

  friend bool operator==(const PlayerCard&, const PlayerCard&) = default;
};

struct RosterConstraints {
  int roster_size = 11;
  double budget = 100;
  int max_per_team = 7;

  void validate() const {
    if (roster_size < 2) throw Error(ErrorCode::InvalidConfig, "roster_size must be >= 2");
    if (!(budget > 0) || !std::isfinite(budget)) throw Error(ErrorCode::InvalidConfig, "budget must be > 0");
    if (max_per_team < 1 || 2 * max_per_team < roster_size)
      throw Error(ErrorCode::InvalidConfig, "max_per_team cannot fill the roster from two teams");
  }
  /// Budget in half-credit units, rounded down.
  std::int64_t budget_units() const { return static_cast<std::int64_t>(std::floor(budget * 2 + 1e-9)); }
};

enum class Method { exact_dp, greedy, brute_force };

constexpr std::string_view to_string(Method m) {
  switch (m) {
    case Method::exact_dp: return "exact_dp";
    case Method::greedy: return "greedy";
    case Method::brute_force: return "brute_force";
  }
  return "?";
}

inline Method parse_method(std::string_view s) {
  if (s == "exact" || s == "exact_dp") return Method::exact_dp;
  if (s == "greedy") return Method::greedy;
  if (s == "brute" || s == "brute_force") return Method::brute_force;
  throw Error(ErrorCode::InvalidInput, "unknown method '" + std::string(s) + "'");
}

struct Recommendation {
  /// Sorted by player name.
  std::vector<PlayerCard> selected;
  std::string captain;
  std::string vice_captain;
  double total_credits = 0;
  /// Plain sum of projected points.
  double total_points = 0;
  /// total_points plus the captain's points and half the vice-captain's.
  double expected_points = 0;
  Method method = Method::exact_dp;
};

inline std::int64_t credit_units(const PlayerCard& c) { return std::llround(c.credit * 2); }

/// Objective in integer micro-points so every solver compares identically.
inline std::int64_t micro_points(double p) { return std::llround(p * 1e6); }

/// Checks one card; credits must sit on the half-credit grid.
inline void validate_card(const PlayerCard& c) {
  if (c.player.empty()) throw Error(ErrorCode::InvalidInput, "card without a player name");
  if (c.team_index != 0 && c.team_index != 1)
    throw Error(ErrorCode::InvalidInput, "card '" + c.player + "' has team index outside {0, 1}");
  if (!(c.credit > 0) || std::abs(c.credit * 2 - std::round(c.credit * 2)) > 1e-9)
    throw Error(ErrorCode::InvalidInput, "card '" + c.player + "' credit " + util::format_double(c.credit) +
                                             " is not a positive multiple of 0.5");
  if (!std::isfinite(c.projected_points))
    throw Error(ErrorCode::InvalidInput, "card '" + c.player + "' has non-finite points");
  if (c.locked && c.excluded)
    throw Error(ErrorCode::InvalidInput, "card '" + c.player + "' is both locked and excluded");
}

/// Validated, non-excluded cards sorted by name.
inline std::vector<PlayerCard> candidate_pool(const std::vector<PlayerCard>& cards) {
  std::set<std::string> names;
  std::vector<PlayerCard> pool;
  for (const auto& c : cards) {
    validate_card(c);
    if (!names.insert(c.player).second) throw Error(ErrorCode::InvalidInput, "duplicate card for '" + c.player + "'");
    if (!c.excluded) pool.push_back(c);
  }
  std::sort(pool.begin(), pool.end(), [](const auto& a, const auto& b) { return a.player < b.player; });
  return pool;
}

/// Cheapest way to add `slots` cards from `pool` (indexes not in `taken`)
/// given how many more each team may contribute; -1 if impossible.
inline std::int64_t min_completion_cost(const std::vector<PlayerCard>& pool, const std::vector<bool>& taken,
                                        int slots, std::array<int, 2> room) {
  if (slots <= 0) return 0;
  std::array<std::vector<std::int64_t>, 2> costs;
  for (std::size_t i = 0; i < pool.size(); ++i)
    if (!taken[i]) costs[static_cast<std::size_t>(pool[i].team_index)].push_back(credit_units(pool[i]));
  std::array<std::vector<std::int64_t>, 2> prefix;
  for (std::size_t t = 0; t < 2; ++t) {
    std::sort(costs[t].begin(), costs[t].end());
    prefix[t].assign(1, 0);
    for (auto c : costs[t]) prefix[t].push_back(prefix[t].back() + c);
  }
  std::int64_t best = -1;
  for (int k0 = 0; k0 <= slots; ++k0) {
    const int k1 = slots - k0;
    if (k0 > room[0] || k1 > room[1]) continue;
    if (static_cast<std::size_t>(k0) >= prefix[0].size() || static_cast<std::size_t>(k1) >= prefix[1].size())
      continue;
    const auto cost = prefix[0][static_cast<std::size_t>(k0)] + prefix[1][static_cast<std::size_t>(k1)];
    if (best < 0 || cost < best) best = cost;
  }
  return best;
}

/// Throws TooFewPlayers or Infeasible naming the constraint that cannot be met.
inline void check_feasible(const std::vector<PlayerCard>& pool, const RosterConstraints& rc) {
  const auto n = static_cast<int>(pool.size());
  if (n < rc.roster_size)
    throw Error(ErrorCode::TooFewPlayers, std::to_string(n) + " selectable cards for a roster of " +
                                              std::to_string(rc.roster_size));
  std::array<int, 2> per_team{}, locked_team{};
  int locked = 0;
  std::int64_t locked_cost = 0;
  std::vector<bool> taken(pool.size(), false);
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const auto t = static_cast<std::size_t>(pool[i].team_index);
    ++per_team[t];
    if (pool[i].locked) {
      ++locked;
      ++locked_team[t];
      locked_cost += credit_units(pool[i]);
      taken[i] = true;
    }
  }
  if (locked > rc.roster_size)
    throw Error(ErrorCode::Infeasible, std::to_string(locked) + " locked players exceed the roster size of " +
                                           std::to_string(rc.roster_size));
  for (std::size_t t = 0; t < 2; ++t)
    if (locked_team[t] > rc.max_per_team)
      throw Error(ErrorCode::Infeasible, "locked players exceed max_per_team for team " + std::to_string(t));
  if (std::min(per_team[0], rc.max_per_team) + std::min(per_team[1], rc.max_per_team) < rc.roster_size)
    throw Error(ErrorCode::Infeasible, "max_per_team of " + std::to_string(rc.max_per_team) +
                                           " cannot fill the roster from the available cards");
  const auto rest = min_completion_cost(pool, taken, rc.roster_size - locked,
                                        {rc.max_per_team - locked_team[0], rc.max_per_team - locked_team[1]});
  if (rest < 0 || locked_cost + rest > rc.budget_units())
    throw Error(ErrorCode::Infeasible, "cheapest valid roster costs " +
                                           util::format_double(double(locked_cost + std::max<std::int64_t>(rest, 0)) / 2) +
                                           " credits, over the budget of " + util::format_double(rc.budget));
}

/// Captain has the most points (ties to the smaller name); vice is next.
inline std::pair<std::string, std::string> choose_captain(const std::vector<PlayerCard>& selection) {
  if (selection.size() < 2) throw Error(ErrorCode::TooFewPlayers, "captaincy needs at least two players");
  std::vector<const PlayerCard*> order;
  for (const auto& c : selection) order.push_back(&c);
  std::sort(order.begin(), order.end(), [](const PlayerCard* a, const PlayerCard* b) {
    if (a->projected_points != b->projected_points) return a->projected_points > b->projected_points;
    return a->player < b->player;
  });
  return {order[0]->player, order[1]->player};
}

inline Recommendation make_recommendation(std::vector<PlayerCard> selected, Method method) {
  std::sort(selected.begin(), selected.end(), [](const auto& a, const auto& b) { return a.player < b.player; });
  Recommendation r;
  r.method = method;
  std::tie(r.captain, r.vice_captain) = choose_captain(selected);
  std::int64_t units = 0;
  for (const auto& c : selected) {
    units += credit_units(c);
    r.total_points += c.projected_points;
  }
  r.total_credits = static_cast<double>(units) / 2;
  double cap = 0, vice = 0;
  for (const auto& c : selected) {
    if (c.player == r.captain) cap = c.projected_points;
    if (c.player == r.vice_captain) vice = c.projected_points;
  }
  r.expected_points = r.total_points + cap + 0.5 * vice;
  r.selected = std::move(selected);
  return r;
}

/// Returns the first violated Recommendation invariant, or an empty string.
inline std::string violation(const Recommendation& r, const std::vector<PlayerCard>& cards,
                             const RosterConstraints& rc) {
  if (static_cast<int>(r.selected.size()) != rc.roster_size) return "roster size";
  std::array<int, 2> per_team{};
  std::int64_t units = 0;
  std::set<std::string> names;
  for (const auto& c : r.selected) {
    ++per_team[static_cast<std::size_t>(c.team_index)];
    units += credit_units(c);
    names.insert(c.player);
  }
  if (names.size() != r.selected.size()) return "duplicate player";
  if (units > rc.budget_units()) return "budget";
  if (per_team[0] > rc.max_per_team || per_team[1] > rc.max_per_team) return "max_per_team";
  if (r.captain == r.vice_captain || !names.count(r.captain) || !names.count(r.vice_captain)) return "captaincy";
  for (const auto& c : cards) {
    if (c.locked && !names.count(c.player)) return "locked card missing: " + c.player;
    if (c.excluded && names.count(c.player)) return "excluded card selected: " + c.player;
  }
  return {};
}

}  // namespace dreamxi::optimizer
