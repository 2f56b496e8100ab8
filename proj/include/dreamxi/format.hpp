#pragma once

#include <cctype>
#include <charconv>
#include <chrono>
#include <compare>
#include <cstdio>
#include <string>
#include <string_view>

#include "dreamxi/error.hpp"

namespace dreamxi {

enum class MatchFormat { ODI, T20, IPL };

inline constexpr MatchFormat kAllFormats[] = {MatchFormat::ODI, MatchFormat::T20,
                                              MatchFormat::IPL};

constexpr std::string_view to_string(MatchFormat f) {
  switch (f) {
    case MatchFormat::ODI: return "ODI";
    case MatchFormat::T20: return "T20";
    case MatchFormat::IPL: return "IPL";
  }
  return "?";
}

/// Lower-case directory name used for corpus layout (`odi`, `ipl`, `t20`).
constexpr std::string_view directory_name(MatchFormat f) {
  switch (f) {
    case MatchFormat::ODI: return "odi";
    case MatchFormat::T20: return "t20";
    case MatchFormat::IPL: return "ipl";
  }
  return "?";
}

/// Accepts "ODI", "T20", "IPL" in any case.
inline MatchFormat parse_format(std::string_view text) {
  std::string up(text);
  for (auto& c : up) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (up == "ODI") return MatchFormat::ODI;
  if (up == "T20" || up == "IT20") return MatchFormat::T20;
  if (up == "IPL") return MatchFormat::IPL;
  throw Error(ErrorCode::InvalidInput, "unknown match format '" + std::string(text) + "'");
}

/// True for the 20-over formats, which share a scoring table.
constexpr bool is_twenty_over(MatchFormat f) { return f != MatchFormat::ODI; }

/// Calendar date, printed and parsed as ISO-8601 (YYYY-MM-DD).
class Date {
 public:
  Date() = default;
  explicit Date(std::chrono::year_month_day ymd) : ymd_(ymd) {}
  Date(int y, unsigned m, unsigned d)
      : ymd_(std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}) {}

  static Date parse(std::string_view text) {
    int y = 0;
    unsigned m = 0, d = 0;
    auto bad = [&] {
      return Error(ErrorCode::InvalidInput, "bad ISO date '" + std::string(text) + "'");
    };
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') throw bad();
    auto num = [&](std::string_view s, auto& out) {
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
      if (ec != std::errc{} || p != s.data() + s.size()) throw bad();
    };
    num(text.substr(0, 4), y);
    num(text.substr(5, 2), m);
    num(text.substr(8, 2), d);
    Date out(y, m, d);
    if (!out.ymd_.ok()) throw bad();
    return out;
  }

  std::string iso() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd_.year()),
                  static_cast<unsigned>(ymd_.month()), static_cast<unsigned>(ymd_.day()));
    return buf;
  }

  std::chrono::year_month_day ymd() const { return ymd_; }

  friend auto operator<=>(const Date&, const Date&) = default;

 private:
  std::chrono::year_month_day ymd_{std::chrono::year{1970}, std::chrono::month{1},
                                   std::chrono::day{1}};
};

}  // namespace dreamxi
