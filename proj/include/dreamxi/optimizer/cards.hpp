#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dreamxi/error.hpp"
#include "dreamxi/util/csv.hpp"
#include "dreamxi/util/text.hpp"

namespace dreamxi::optimizer {

inline constexpr const char* kCardHeader = "player,team,credit,points,locked,excluded";

/// One line of a card file. Credit and points may be left blank.
struct CardSpec {
  std::string player;
  std::string team;
  std::optional<double> credit;
  std::optional<double> points;
  bool locked = false;
  bool excluded = false;

  friend bool operator==(const CardSpec&, const CardSpec&) = default;
};

inline bool parse_flag(const std::string& s, const std::string& what) {
  if (s.empty() || s == "0" || s == "false" || s == "no") return false;
  if (s == "1" || s == "true" || s == "yes") return true;
  throw Error(ErrorCode::InvalidInput, what + ": expected a boolean, got '" + s + "'");
}

inline std::vector<CardSpec> parse_card_csv(const std::string& text) {
  const auto rows = util::parse_csv(text);
  if (rows.empty()) throw Error(ErrorCode::EmptyInput, "card file is empty");
  std::string header;
  for (std::size_t i = 0; i < rows[0].size(); ++i) header += (i ? "," : "") + rows[0][i];
  if (header != kCardHeader)
    throw Error(ErrorCode::SchemaMismatch, "card file header must be '" + std::string(kCardHeader) + "'");
  std::vector<CardSpec> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& f = rows[r];
    if (f.size() == 1 && f[0].empty()) continue;
    const std::string where = "card line " + std::to_string(r + 1);
    if (f.size() != 6) throw Error(ErrorCode::InvalidInput, where + ": expected 6 fields");
    CardSpec c;
    c.player = f[0];
    c.team = f[1];
    if (!f[2].empty()) c.credit = util::parse_double(f[2], where + " credit");
    if (!f[3].empty()) c.points = util::parse_double(f[3], where + " points");
    c.locked = parse_flag(f[4], where + " locked");
    c.excluded = parse_flag(f[5], where + " excluded");
    out.push_back(std::move(c));
  }
  return out;
}

inline std::string card_csv(const std::vector<CardSpec>& cards) {
  std::string out = std::string(kCardHeader) + "\n";
  for (const auto& c : cards)
    util::append_csv_row(out, {c.player, c.team, c.credit ? util::format_double(*c.credit) : "",
                               c.points ? util::format_double(*c.points) : "", c.locked ? "1" : "0",
                               c.excluded ? "1" : "0"});
  return out;
}

}  // namespace dreamxi::optimizer
