#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "dreamxi/dataset/series.hpp"
#include "dreamxi/dataset/store.hpp"
#include "dreamxi/util/text.hpp"

namespace dreamxi::service {

enum class InsightKind {
  score_timeline,
  moving_average,
  sr_distribution,
  econ_distribution,
  dismissal_breakdown,
  win_loss,
  points_histogram,
  boundary_mix,
  venue_split,
  opponent_split,
};

constexpr std::string_view to_string(InsightKind k) {
  switch (k) {
    case InsightKind::score_timeline: return "score_timeline";
    case InsightKind::moving_average: return "moving_average";
    case InsightKind::sr_distribution: return "sr_distribution";
    case InsightKind::econ_distribution: return "econ_distribution";
    case InsightKind::dismissal_breakdown: return "dismissal_breakdown";
    case InsightKind::win_loss: return "win_loss";
    case InsightKind::points_histogram: return "points_histogram";
    case InsightKind::boundary_mix: return "boundary_mix";
    case InsightKind::venue_split: return "venue_split";
    case InsightKind::opponent_split: return "opponent_split";
  }
  return "?";
}

struct FiveNumber {
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
};

struct InsightPoint {
  std::string label;
  double value = 0;
};

struct InsightSeries {
  InsightKind kind{};
  std::string scope;  // "player" or "team"
  std::string subject;
  std::optional<dataset::Discipline> discipline;
  std::vector<InsightPoint> points;
  std::optional<FiveNumber> summary;
  /// Headline number, e.g. the win ratio.
  std::optional<double> value;
};

/// Quartiles by linear interpolation between order statistics.
inline FiveNumber five_number(std::vector<double> v) {
  if (v.empty()) throw Error(ErrorCode::EmptySeries, "five-number summary of an empty series");
  std::sort(v.begin(), v.end());
  auto q = [&](double p) {
    const double h = p * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
  };
  return {v.front(), q(0.25), q(0.5), q(0.75), v.back()};
}

namespace detail {

inline std::vector<InsightPoint> histogram(const std::vector<double>& values, double width) {
  std::map<long long, int> buckets;
  for (double v : values) ++buckets[static_cast<long long>(std::floor(v / width))];
  std::vector<InsightPoint> out;
  for (auto [b, n] : buckets)
    out.push_back({"[" + util::format_double(double(b) * width) + "," + util::format_double(double(b + 1) * width) + ")",
                   double(n)});
  return out;
}

template <class Row, class Key>
std::vector<InsightPoint> count_by(const std::vector<const Row*>& rows, Key key) {
  std::map<std::string, int> counts;
  for (const Row* r : rows) ++counts[key(*r)];
  std::vector<InsightPoint> out;
  for (const auto& [k, n] : counts) out.push_back({k, double(n)});
  return out;
}

template <class Row>
std::vector<const Row*> chronological(const dataset::Table<Row>& t, const std::vector<std::size_t>& idx) {
  std::vector<const Row*> rows;
  for (auto i : idx) rows.push_back(&t[i]);
  std::stable_sort(rows.begin(), rows.end(), [](const Row* a, const Row* b) {
    return std::tie(a->ctx.date, a->ctx.seq) < std::tie(b->ctx.date, b->ctx.seq);
  });
  return rows;
}

template <class Row>
void common_series(std::vector<InsightSeries>& out, const std::vector<const Row*>& rows, const std::string& player,
                   dataset::Discipline d, std::size_t window) {
  auto series = [&](InsightKind k) {
    InsightSeries s;
    s.kind = k;
    s.scope = "player";
    s.subject = player;
    s.discipline = d;
    return s;
  };
  std::vector<double> scores;
  for (const Row* r : rows) scores.push_back(r->fantasy_score);
  auto timeline = series(InsightKind::score_timeline);
  for (const Row* r : rows) timeline.points.push_back({r->ctx.date.iso(), r->fantasy_score});
  timeline.summary = five_number(scores);
  out.push_back(std::move(timeline));

  auto ma = series(InsightKind::moving_average);
  const auto avg = dataset::moving_average(scores, window);
  for (std::size_t i = 0; i < rows.size(); ++i) ma.points.push_back({rows[i]->ctx.date.iso(), avg[i]});
  out.push_back(std::move(ma));

  auto venues = series(InsightKind::venue_split);
  venues.points = count_by(rows, [](const Row& r) { return r.ctx.venue; });
  out.push_back(std::move(venues));
  auto opponents = series(InsightKind::opponent_split);
  opponents.points = count_by(rows, [](const Row& r) { return r.ctx.team2; });
  out.push_back(std::move(opponents));
}

}  // namespace detail

/// Batting series for batsmen, bowling series for bowlers, both for
/// all-rounders.
inline std::vector<InsightSeries> player_insights(const dataset::PerformanceStore& store, const std::string& player,
                                                  std::size_t window = 5) {
  if (!store.has_player(player)) throw Error(ErrorCode::UnknownPlayer, "unknown player '" + player + "'");
  std::vector<InsightSeries> out;
  if (const auto& idx = store.batting.by_player(player); !idx.empty()) {
    const auto rows = detail::chronological(store.batting, idx);
    detail::common_series(out, rows, player, dataset::Discipline::batting, window);
    auto series = [&](InsightKind k) {
      InsightSeries s;
      s.kind = k;
      s.scope = "player";
      s.subject = player;
      s.discipline = dataset::Discipline::batting;
      return s;
    };
    std::vector<double> srs;
    for (const auto* r : rows) srs.push_back(r->strike_rate);
    auto sr = series(InsightKind::sr_distribution);
    sr.points = detail::histogram(srs, 20);
    sr.summary = five_number(srs);
    out.push_back(std::move(sr));

    auto dis = series(InsightKind::dismissal_breakdown);
    dis.points = detail::count_by(rows, [](const dataset::BattingPerformance& r) { return r.dismissal_kind; });
    for (auto& p : dis.points) p.value /= static_cast<double>(rows.size());
    out.push_back(std::move(dis));

    int fours = 0, sixes = 0, runs = 0;
    for (const auto* r : rows) {
      fours += r->fours;
      sixes += r->sixes;
      runs += r->runs;
    }
    auto mix = series(InsightKind::boundary_mix);
    const double total = runs > 0 ? runs : 1;
    mix.points = {{"fours", 4.0 * fours / total}, {"sixes", 6.0 * sixes / total},
                  {"other", runs > 0 ? double(runs - 4 * fours - 6 * sixes) / total : 0.0}};
    out.push_back(std::move(mix));
  }
  if (const auto& idx = store.bowling.by_player(player); !idx.empty()) {
    const auto rows = detail::chronological(store.bowling, idx);
    detail::common_series(out, rows, player, dataset::Discipline::bowling, window);
    std::vector<double> econ;
    for (const auto* r : rows) econ.push_back(r->economy_rate);
    InsightSeries e;
    e.kind = InsightKind::econ_distribution;
    e.scope = "player";
    e.subject = player;
    e.discipline = dataset::Discipline::bowling;
    e.points = detail::histogram(econ, 2);
    e.summary = five_number(econ);
    out.push_back(std::move(e));
  }
  return out;
}

/// Team series are computed over the team's batting rows; a match is
/// identified by (date, opponent, format, venue).
inline std::vector<InsightSeries> team_insights(const dataset::PerformanceStore& store, const std::string& team) {
  const auto& idx = store.batting.by_team(team);
  if (idx.empty()) throw Error(ErrorCode::UnknownTeam, "unknown team '" + team + "'");
  const auto rows = detail::chronological(store.batting, idx);
  auto series = [&](InsightKind k) {
    InsightSeries s;
    s.kind = k;
    s.scope = "team";
    s.subject = team;
    return s;
  };
  std::vector<InsightSeries> out;

  std::map<std::tuple<std::string, std::string, MatchFormat, std::string>, std::string> matches;
  for (const auto* r : rows) matches[{r->ctx.date.iso(), r->ctx.team2, r->ctx.format, r->ctx.venue}] = r->ctx.winner;
  int won = 0, lost = 0, none = 0;
  for (const auto& [key, winner] : matches) {
    if (winner == team) ++won;
    else if (winner == dataset::kNoResult) ++none;
    else ++lost;
  }
  auto wl = series(InsightKind::win_loss);
  wl.points = {{"won", double(won)}, {"lost", double(lost)}, {"no_result", double(none)}};
  wl.value = double(won) / double(matches.size());
  out.push_back(std::move(wl));

  std::vector<double> scores;
  for (const auto* r : rows) scores.push_back(r->fantasy_score);
  auto hist = series(InsightKind::points_histogram);
  hist.points = detail::histogram(scores, 10);
  hist.summary = five_number(scores);
  out.push_back(std::move(hist));

  auto venues = series(InsightKind::venue_split);
  venues.points = detail::count_by(rows, [](const dataset::BattingPerformance& r) { return r.ctx.venue; });
  out.push_back(std::move(venues));
  auto opponents = series(InsightKind::opponent_split);
  opponents.points = detail::count_by(rows, [](const dataset::BattingPerformance& r) { return r.ctx.team2; });
  out.push_back(std::move(opponents));
  return out;
}

}  // namespace dreamxi::service
