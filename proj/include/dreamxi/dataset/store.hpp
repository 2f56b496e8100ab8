#pragma once

#include <algorithm>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "dreamxi/dataset/aggregate.hpp"
#include "dreamxi/ingest/corpus.hpp"
#include "dreamxi/util/csv.hpp"
#include "dreamxi/util/hash.hpp"
#include "dreamxi/util/parallel.hpp"

namespace dreamxi::dataset {

/// Identity of a row across the store: (player, date, team2, format, seq).
using RowKey = std::tuple<std::string, std::string, std::string, MatchFormat, int>;

template <class Row>
RowKey row_key(const Row& r) {
  return {r.player(), r.ctx.date.iso(), r.ctx.team2, r.ctx.format, r.ctx.seq};
}

/// Rows of one discipline plus lookup indexes. Immutable once built.
template <class Row>
class Table {
 public:
  Table() = default;
  explicit Table(std::vector<Row> rows) : rows_(std::move(rows)) { reindex(); }

  const std::vector<Row>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }
  const Row& operator[](std::size_t i) const { return rows_[i]; }

  /// Row indexes for a player, in storage order; empty if unknown.
  const std::vector<std::size_t>& by_player(const std::string& player) const {
    return lookup(by_player_, player);
  }
  const std::vector<std::size_t>& by_player_format(const std::string& player, MatchFormat f) const {
    auto it = by_player_format_.find({player, f});
    return it == by_player_format_.end() ? empty_ : it->second;
  }
  const std::vector<std::size_t>& by_team(const std::string& team) const {
    return lookup(by_team_, team);
  }
  std::vector<std::string> players() const { return keys(by_player_); }
  std::vector<std::string> teams() const { return keys(by_team_); }

 private:
  static const std::vector<std::size_t>& lookup(
      const std::map<std::string, std::vector<std::size_t>>& m, const std::string& k) {
    auto it = m.find(k);
    return it == m.end() ? empty_ : it->second;
  }
  static std::vector<std::string> keys(const std::map<std::string, std::vector<std::size_t>>& m) {
    std::vector<std::string> out;
    out.reserve(m.size());
    for (const auto& [k, v] : m) out.push_back(k);
    return out;
  }
  void reindex() {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Row& r = rows_[i];
      by_player_[r.player()].push_back(i);
      by_player_format_[{r.player(), r.ctx.format}].push_back(i);
      by_team_[r.ctx.team1].push_back(i);
    }
  }

  std::vector<Row> rows_;
  std::map<std::string, std::vector<std::size_t>> by_player_;
  std::map<std::pair<std::string, MatchFormat>, std::vector<std::size_t>> by_player_format_;
  std::map<std::string, std::vector<std::size_t>> by_team_;
  static inline const std::vector<std::size_t> empty_{};
};

struct PerformanceStore {
  Table<BattingPerformance> batting;
  Table<BowlingPerformance> bowling;

  /// Teams appearing in either table, sorted.
  std::vector<std::string> teams() const {
    std::set<std::string> s;
    for (const auto& t : batting.teams()) s.insert(t);
    for (const auto& t : bowling.teams()) s.insert(t);
    return {s.begin(), s.end()};
  }
  /// Players who appeared for `team` in either table, sorted.
  std::vector<std::string> players_of(const std::string& team) const {
    std::set<std::string> s;
    for (std::size_t i : batting.by_team(team)) s.insert(batting[i].batsman);
    for (std::size_t i : bowling.by_team(team)) s.insert(bowling[i].bowler);
    return {s.begin(), s.end()};
  }
  bool has_player(const std::string& p) const {
    return !batting.by_player(p).empty() || !bowling.by_player(p).empty();
  }
};

/// Assigns seq so that (player, date, team2, format, seq) is unique,
/// numbering duplicates in storage order.
template <class Row>
void assign_sequence_numbers(std::vector<Row>& rows) {
  std::map<std::tuple<std::string, std::string, std::string, MatchFormat>, int> seen;
  for (auto& r : rows) r.ctx.seq = seen[{r.player(), r.ctx.date.iso(), r.ctx.team2, r.ctx.format}]++;
}

struct MatchRows {
  std::vector<BattingPerformance> batting;
  std::vector<BowlingPerformance> bowling;
};

inline MatchRows engineer_match(const ingest::MatchRecord& m, const ScoringRubric& rubric) {
  MatchRows out;
  for (auto& r : aggregate_batting(m)) out.batting.push_back(engineer_batting(std::move(r), rubric));
  for (auto& r : aggregate_bowling(m)) out.bowling.push_back(engineer_bowling(std::move(r), rubric));
  return out;
}

/// Builds the two tables. Matches are processed in parallel and merged in
/// (date, match_id) order, so the result does not depend on input order.
inline PerformanceStore build_tables(const std::vector<ingest::MatchRecord>& matches,
                                     const ScoringRubric& rubric, unsigned threads = 0) {
  std::vector<std::size_t> order(matches.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ma = matches[a].meta;
    const auto& mb = matches[b].meta;
    return std::tie(ma.dates.front(), ma.match_id) < std::tie(mb.dates.front(), mb.match_id);
  });
  std::vector<MatchRows> per_match(matches.size());
  util::parallel_for(
      order.size(), [&](std::size_t i) { per_match[i] = engineer_match(matches[order[i]], rubric); },
      threads);
  std::vector<BattingPerformance> batting;
  std::vector<BowlingPerformance> bowling;
  for (auto& mr : per_match) {
    std::move(mr.batting.begin(), mr.batting.end(), std::back_inserter(batting));
    std::move(mr.bowling.begin(), mr.bowling.end(), std::back_inserter(bowling));
  }
  assign_sequence_numbers(batting);
  assign_sequence_numbers(bowling);
  return {Table<BattingPerformance>(std::move(batting)), Table<BowlingPerformance>(std::move(bowling))};
}

struct BuildResult {
  PerformanceStore store;
  std::vector<ingest::ParseFailure> failures;
};

/// Loads every indexed match and builds the tables; load failures are
/// reported alongside, never fatal.
inline BuildResult build_tables(const ingest::CorpusIndex& corpus, const ScoringRubric& rubric,
                                unsigned threads = 0) {
  if (corpus.entries.empty()) throw Error(ErrorCode::EmptyInput, "corpus has no matches");
  std::vector<std::optional<ingest::MatchRecord>> loaded(corpus.entries.size());
  std::vector<std::string> errors(corpus.entries.size());
  util::parallel_for(
      corpus.entries.size(),
      [&](std::size_t i) {
        const auto& e = corpus.entries[i];
        try {
          loaded[i] = ingest::load_match(e.path, e.format);
        } catch (const std::exception& ex) {
          errors[i] = ex.what();
        }
      },
      threads);
  BuildResult out;
  out.failures = corpus.failures;
  std::vector<ingest::MatchRecord> matches;
  for (std::size_t i = 0; i < loaded.size(); ++i) {
    if (loaded[i]) matches.push_back(std::move(*loaded[i]));
    else out.failures.push_back({corpus.entries[i].path, errors[i]});
  }
  out.store = build_tables(matches, rubric, threads);
  return out;
}

// ---- CSV persistence ------------------------------------------------------

inline constexpr const char* kBattingHeader =
    "batsman,runs,balls,4s,6s,SR,bowler,kind,player_out,date,team2,winner,venue,team1,MF,50s,100s,"
    "ducks,dr11Score";
inline constexpr const char* kBowlingHeader =
    "bowler,overs,runs,maidens,wicket,econrate,date,team2,winner,venue,team1,MF,4w,5w,dr11Score";
inline constexpr const char* kBattingFile = "batting.csv";
inline constexpr const char* kBowlingFile = "bowling.csv";

inline std::string batting_csv(const Table<BattingPerformance>& t) {
  std::string out = std::string(kBattingHeader) + "\n";
  for (const auto& r : t.rows()) {
    util::append_csv_row(
        out, {r.batsman, std::to_string(r.runs), std::to_string(r.balls), std::to_string(r.fours),
              std::to_string(r.sixes), util::format_one_decimal(r.strike_rate),
              r.dismissed_by_bowler, r.dismissal_kind, r.dismissed() ? r.batsman : kNotOut,
              r.ctx.date.iso(), r.ctx.team2, r.ctx.winner, r.ctx.venue, r.ctx.team1,
              std::string(to_string(r.ctx.format)), std::to_string(r.fifty_flag),
              std::to_string(r.hundred_flag), std::to_string(r.duck_flag),
              util::format_double(r.fantasy_score)});
  }
  return out;
}

inline std::string bowling_csv(const Table<BowlingPerformance>& t) {
  std::string out = std::string(kBowlingHeader) + "\n";
  for (const auto& r : t.rows()) {
    util::append_csv_row(
        out, {r.bowler, std::to_string(r.overs), std::to_string(r.runs_conceded),
              std::to_string(r.maidens), std::to_string(r.wickets),
              util::format_one_decimal(r.economy_rate), r.ctx.date.iso(), r.ctx.team2,
              r.ctx.winner, r.ctx.venue, r.ctx.team1, std::string(to_string(r.ctx.format)),
              std::to_string(r.four_wicket_flag), std::to_string(r.five_wicket_flag),
              util::format_double(r.fantasy_score)});
  }
  return out;
}

namespace detail {
inline std::vector<std::vector<std::string>> csv_body(const std::string& text, const char* header,
                                                      const std::string& what) {
  auto rows = util::parse_csv(text);
  if (rows.empty()) throw Error(ErrorCode::MalformedDocument, what + ": empty file");
  std::string got;
  for (std::size_t i = 0; i < rows[0].size(); ++i) got += (i ? "," : "") + rows[0][i];
  if (got != header) throw Error(ErrorCode::SchemaMismatch, what + ": unexpected header '" + got + "'");
  const std::size_t width = rows[0].size();
  rows.erase(rows.begin());
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].size() != width)
      throw Error(ErrorCode::MalformedDocument,
                  what + ": row " + std::to_string(i + 2) + " has " + std::to_string(rows[i].size()) +
                      " fields, expected " + std::to_string(width));
  return rows;
}

inline int to_int(const std::string& s, const std::string& what) {
  // Tolerates "24.0" as written by some exporters.
  const double v = util::parse_double(s, what);
  return static_cast<int>(v);
}
}  // namespace detail

inline Table<BattingPerformance> parse_batting_csv(const std::string& text) {
  std::vector<BattingPerformance> rows;
  for (const auto& f : detail::csv_body(text, kBattingHeader, kBattingFile)) {
    BattingPerformance r;
    r.batsman = f[0];
    r.runs = detail::to_int(f[1], "runs");
    r.balls = detail::to_int(f[2], "balls");
    r.fours = detail::to_int(f[3], "4s");
    r.sixes = detail::to_int(f[4], "6s");
    r.strike_rate = util::parse_double(f[5], "SR");
    r.dismissed_by_bowler = f[6];
    r.dismissal_kind = f[7];
    r.ctx.date = Date::parse(f[9]);
    r.ctx.team2 = f[10];
    r.ctx.winner = f[11];
    r.ctx.venue = f[12];
    r.ctx.team1 = f[13];
    r.ctx.format = parse_format(f[14]);
    r.fifty_flag = detail::to_int(f[15], "50s");
    r.hundred_flag = detail::to_int(f[16], "100s");
    r.duck_flag = detail::to_int(f[17], "ducks");
    r.fantasy_score = util::parse_double(f[18], "dr11Score");
    rows.push_back(std::move(r));
  }
  assign_sequence_numbers(rows);
  return Table<BattingPerformance>(std::move(rows));
}

inline Table<BowlingPerformance> parse_bowling_csv(const std::string& text) {
  std::vector<BowlingPerformance> rows;
  for (const auto& f : detail::csv_body(text, kBowlingHeader, kBowlingFile)) {
    BowlingPerformance r;
    r.bowler = f[0];
    r.overs = detail::to_int(f[1], "overs");
    r.balls_bowled = r.overs * 6;
    r.runs_conceded = detail::to_int(f[2], "runs");
    r.maidens = detail::to_int(f[3], "maidens");
    r.wickets = detail::to_int(f[4], "wicket");
    r.economy_rate = util::parse_double(f[5], "econrate");
    r.ctx.date = Date::parse(f[6]);
    r.ctx.team2 = f[7];
    r.ctx.winner = f[8];
    r.ctx.venue = f[9];
    r.ctx.team1 = f[10];
    r.ctx.format = parse_format(f[11]);
    r.four_wicket_flag = detail::to_int(f[12], "4w");
    r.five_wicket_flag = detail::to_int(f[13], "5w");
    r.fantasy_score = util::parse_double(f[14], "dr11Score");
    rows.push_back(std::move(r));
  }
  assign_sequence_numbers(rows);
  return Table<BowlingPerformance>(std::move(rows));
}

/// Fingerprint of a pair of table files; models record it so a model is
/// never paired with tables it was not trained on.
inline std::string tables_fingerprint(const std::string& batting_bytes,
                                      const std::string& bowling_bytes) {
  util::Fnv1a h;
  h.update(batting_bytes);
  h.update(std::string_view("\0", 1));
  h.update(bowling_bytes);
  return h.hex();
}

inline std::string save_tables(const PerformanceStore& store, const std::filesystem::path& dir) {
  const std::string bat = batting_csv(store.batting);
  const std::string bowl = bowling_csv(store.bowling);
  util::write_file(dir / kBattingFile, bat);
  util::write_file(dir / kBowlingFile, bowl);
  return tables_fingerprint(bat, bowl);
}

struct LoadedTables {
  PerformanceStore store;
  std::string fingerprint;
};

inline LoadedTables load_tables(const std::filesystem::path& dir) {
  for (const char* f : {kBattingFile, kBowlingFile})
    if (!std::filesystem::exists(dir / f))
      throw Error(ErrorCode::ArtifactsMissing, (dir / f).string());
  const std::string bat = util::read_file(dir / kBattingFile);
  const std::string bowl = util::read_file(dir / kBowlingFile);
  return {{parse_batting_csv(bat), parse_bowling_csv(bowl)}, tables_fingerprint(bat, bowl)};
}

}  // namespace dreamxi::dataset
