#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "dreamxi/optimizer/lineup.hpp"

namespace dreamxi::optimizer {

inline constexpr std::size_t kBruteForceLimit = 24;

/// Exact optimum by dynamic programming over (card, budget left, team-0
/// picks, team-1 picks). Cards are scanned in name order and taken whenever
/// an optimum allows it, which yields the lexicographically smallest name
/// list among optimal rosters.
inline Recommendation recommend_exact(const std::vector<PlayerCard>& cards, const RosterConstraints& rc) {
  rc.validate();
  const auto pool = candidate_pool(cards);
  check_feasible(pool, rc);
  const std::size_t n = pool.size();
  const auto R = static_cast<std::size_t>(rc.roster_size);
  const auto M = static_cast<std::size_t>(rc.max_per_team);

  // No roster can cost more than its R dearest cards.
  std::vector<std::int64_t> dear;
  for (const auto& c : pool) dear.push_back(credit_units(c));
  std::sort(dear.rbegin(), dear.rend());
  std::int64_t ceiling = 0;
  for (std::size_t i = 0; i < R; ++i) ceiling += dear[i];
  const auto B = static_cast<std::size_t>(std::min(rc.budget_units(), ceiling));

  std::vector<bool> locked_after(n + 1, false);
  for (std::size_t i = n; i-- > 0;) locked_after[i] = locked_after[i + 1] || pool[i].locked;

  constexpr std::int64_t kNone = std::numeric_limits<std::int64_t>::min() / 4;
  const std::size_t S = (B + 1) * (M + 1) * (M + 1);
  auto at = [&](std::size_t b, std::size_t t0, std::size_t t1) { return (b * (M + 1) + t0) * (M + 1) + t1; };
  std::vector<std::int64_t> f((n + 1) * S, kNone);
  auto F = [&](std::size_t i) { return f.data() + i * S; };

  for (std::size_t b = 0; b <= B; ++b)
    for (std::size_t t0 = 0; t0 <= M; ++t0)
      for (std::size_t t1 = 0; t1 <= M; ++t1)
        if (t0 + t1 == R) F(n)[at(b, t0, t1)] = 0;

  for (std::size_t i = n; i-- > 0;) {
    const auto cost = static_cast<std::size_t>(credit_units(pool[i]));
    const auto gain = micro_points(pool[i].projected_points);
    const bool team0 = pool[i].team_index == 0;
    for (std::size_t b = 0; b <= B; ++b)
      for (std::size_t t0 = 0; t0 <= M; ++t0)
        for (std::size_t t1 = 0; t1 <= M && t0 + t1 <= R; ++t1) {
          std::int64_t best = kNone;
          if (t0 + t1 == R) {
            best = locked_after[i] ? kNone : 0;
          } else {
            if (!pool[i].locked) best = F(i + 1)[at(b, t0, t1)];
            const std::size_t n0 = t0 + (team0 ? 1 : 0), n1 = t1 + (team0 ? 0 : 1);
            if (cost <= b && n0 <= M && n1 <= M) {
              const auto sub = F(i + 1)[at(b - cost, n0, n1)];
              if (sub != kNone) best = std::max(best, sub + gain);
            }
          }
          F(i)[at(b, t0, t1)] = best;
        }
  }

  if (F(0)[at(B, 0, 0)] == kNone) throw Error(ErrorCode::Infeasible, "no roster satisfies every constraint");
  std::vector<PlayerCard> chosen;
  std::size_t b = B, t0 = 0, t1 = 0;
  for (std::size_t i = 0; i < n && t0 + t1 < R; ++i) {
    const auto cost = static_cast<std::size_t>(credit_units(pool[i]));
    const bool team0 = pool[i].team_index == 0;
    const std::size_t n0 = t0 + (team0 ? 1 : 0), n1 = t1 + (team0 ? 0 : 1);
    const auto here = F(i)[at(b, t0, t1)];
    if (cost <= b && n0 <= M && n1 <= M) {
      const auto sub = F(i + 1)[at(b - cost, n0, n1)];
      if (sub != kNone && sub + micro_points(pool[i].projected_points) == here) {
        chosen.push_back(pool[i]);
        b -= cost;
        t0 = n0;
        t1 = n1;
      }
    }
  }
  return make_recommendation(std::move(chosen), Method::exact_dp);
}

/// Points-per-credit order; a card is taken only if the cheapest completion
/// of the remaining slots still fits the budget.
inline Recommendation recommend_greedy(const std::vector<PlayerCard>& cards, const RosterConstraints& rc) {
  rc.validate();
  const auto pool = candidate_pool(cards);
  check_feasible(pool, rc);
  std::vector<bool> taken(pool.size(), false);
  std::array<int, 2> count{};
  int picked = 0;
  std::int64_t left = rc.budget_units();
  auto take = [&](std::size_t i) {
    taken[i] = true;
    ++count[static_cast<std::size_t>(pool[i].team_index)];
    ++picked;
    left -= credit_units(pool[i]);
  };
  for (std::size_t i = 0; i < pool.size(); ++i)
    if (pool[i].locked) take(i);

  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < pool.size(); ++i)
    if (!taken[i]) order.push_back(i);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return pool[a].projected_points / pool[a].credit > pool[b].projected_points / pool[b].credit;
  });
  for (std::size_t i : order) {
    if (picked == rc.roster_size) break;
    const auto t = static_cast<std::size_t>(pool[i].team_index);
    if (count[t] >= rc.max_per_team || credit_units(pool[i]) > left) continue;
    taken[i] = true;
    auto room = std::array<int, 2>{rc.max_per_team - count[0], rc.max_per_team - count[1]};
    --room[t];
    const auto rest = min_completion_cost(pool, taken, rc.roster_size - picked - 1, room);
    taken[i] = false;
    if (rest >= 0 && credit_units(pool[i]) + rest <= left) take(i);
  }
  if (picked < rc.roster_size) throw Error(ErrorCode::Infeasible, "greedy could not complete the roster");
  std::vector<PlayerCard> chosen;
  for (std::size_t i = 0; i < pool.size(); ++i)
    if (taken[i]) chosen.push_back(pool[i]);
  return make_recommendation(std::move(chosen), Method::greedy);
}

/// Enumerates every feasible roster. Ties go to the roster holding the
/// alphabetically first player where the two differ.
inline Recommendation brute_force(const std::vector<PlayerCard>& cards, const RosterConstraints& rc) {
  rc.validate();
  const auto pool = candidate_pool(cards);
  if (pool.size() > kBruteForceLimit)
    throw Error(ErrorCode::TooLarge, std::to_string(pool.size()) + " cards exceed the enumeration limit of " +
                                         std::to_string(kBruteForceLimit));
  if (static_cast<int>(pool.size()) < rc.roster_size)
    throw Error(ErrorCode::TooFewPlayers, "not enough selectable cards");
  const int n = static_cast<int>(pool.size());
  const std::int64_t budget = rc.budget_units();
  std::vector<std::int64_t> cost(pool.size()), gain(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) {
    cost[i] = credit_units(pool[i]);
    gain[i] = micro_points(pool[i].projected_points);
  }
  std::uint32_t best_mask = 0;
  std::int64_t best = std::numeric_limits<std::int64_t>::min();
  bool found = false;
  auto better = [&](std::int64_t value, std::uint32_t mask) {
    if (!found || value > best) return true;
    if (value < best) return false;
    const std::uint32_t diff = mask ^ best_mask;
    return diff != 0 && (mask & (diff & -diff)) != 0;
  };
  auto dfs = [&](auto&& self, int i, std::uint32_t mask, int k, int c0, int c1, std::int64_t spent,
                 std::int64_t value) -> void {
    if (k == rc.roster_size) {
      for (int j = i; j < n; ++j)
        if (pool[static_cast<std::size_t>(j)].locked) return;
      if (better(value, mask)) {
        best = value;
        best_mask = mask;
        found = true;
      }
      return;
    }
    if (n - i < rc.roster_size - k) return;
    const auto& c = pool[static_cast<std::size_t>(i)];
    const auto u = static_cast<std::size_t>(i);
    const int d0 = c.team_index == 0, d1 = 1 - d0;
    if (spent + cost[u] <= budget && c0 + d0 <= rc.max_per_team && c1 + d1 <= rc.max_per_team)
      self(self, i + 1, mask | (1u << i), k + 1, c0 + d0, c1 + d1, spent + cost[u], value + gain[u]);
    if (!c.locked) self(self, i + 1, mask, k, c0, c1, spent, value);
  };
  dfs(dfs, 0, 0u, 0, 0, 0, 0, 0);
  if (!found) throw Error(ErrorCode::Infeasible, "no roster satisfies every constraint");
  std::vector<PlayerCard> chosen;
  for (int i = 0; i < n; ++i)
    if (best_mask & (1u << i)) chosen.push_back(pool[static_cast<std::size_t>(i)]);
  return make_recommendation(std::move(chosen), Method::brute_force);
}

inline Recommendation recommend(const std::vector<PlayerCard>& cards, const RosterConstraints& rc, Method m) {
  switch (m) {
    case Method::exact_dp: return recommend_exact(cards, rc);
    case Method::greedy: return recommend_greedy(cards, rc);
    case Method::brute_force: return brute_force(cards, rc);
  }
  throw Error(ErrorCode::InvalidInput, "unknown method");
}

}  // namespace dreamxi::optimizer
