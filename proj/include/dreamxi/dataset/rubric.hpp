#pragma once

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dreamxi/dataset/performance.hpp"
#include "dreamxi/util/text.hpp"

namespace dreamxi::dataset {

/// A points band over a rate (strike rate or economy). The band applies only
/// once the player reached `min_volume` (balls faced for strike rate, overs
/// bowled for economy). `hi` absent means unbounded above.
struct RateBand {
  double min_volume = 0;
  double lo = 0;
  std::optional<double> hi;
  bool lo_closed = true;
  bool hi_closed = false;
  double points = 0;

  bool contains(double rate) const {
    if (lo_closed ? rate < lo : rate <= lo) return false;
    if (hi && (hi_closed ? rate > *hi : rate >= *hi)) return false;
    return true;
  }

  friend bool operator==(const RateBand&, const RateBand&) = default;
};

struct BattingRules {
  double per_run = 1;
  double per_four = 1;
  double per_six = 2;
  double fifty_bonus = 8;
  double hundred_bonus = 16;
  /// Signed; a penalty is negative.
  double duck_penalty = -2;
  std::vector<RateBand> strike_rate_bands;
  friend bool operator==(const BattingRules&, const BattingRules&) = default;
};

struct BowlingRules {
  double per_wicket = 25;
  double four_wicket_bonus = 8;
  double five_wicket_bonus = 16;
  double per_maiden = 8;
  std::vector<RateBand> economy_bands;
  friend bool operator==(const BowlingRules&, const BowlingRules&) = default;
};

struct FormatRules {
  BattingRules batting;
  BowlingRules bowling;
  double playing_xi_points = 4;
  friend bool operator==(const FormatRules&, const FormatRules&) = default;
};

namespace detail {
inline bool overlaps(const RateBand& a, const RateBand& b) {
  // Two intervals are disjoint when one ends before the other starts.
  auto ends_before = [](const RateBand& x, const RateBand& y) {
    if (!x.hi) return false;
    if (*x.hi < y.lo) return true;
    if (*x.hi > y.lo) return false;
    return !(x.hi_closed && y.lo_closed);
  };
  return !ends_before(a, b) && !ends_before(b, a);
}

inline void validate_bands(const std::vector<RateBand>& bands, const std::string& where) {
  for (std::size_t i = 0; i < bands.size(); ++i) {
    const auto& b = bands[i];
    if (!std::isfinite(b.lo) || !std::isfinite(b.points) || !std::isfinite(b.min_volume) ||
        (b.hi && !std::isfinite(*b.hi)))
      throw Error(ErrorCode::InvalidConfig, where + ": non-finite band threshold");
    if (b.hi && *b.hi < b.lo) throw Error(ErrorCode::InvalidConfig, where + ": band with hi < lo");
    for (std::size_t j = 0; j < i; ++j)
      if (overlaps(b, bands[j]))
        throw Error(ErrorCode::InvalidConfig,
                    where + ": bands " + std::to_string(j) + " and " + std::to_string(i) + " overlap");
  }
}

inline RateBand band(double min_volume, double lo, std::optional<double> hi, double points,
                     bool lo_closed = true, bool hi_closed = false) {
  return RateBand{min_volume, lo, hi, lo_closed, hi_closed, points};
}
}  // namespace detail

/// Fantasy point table per match format.
struct ScoringRubric {
  std::map<MatchFormat, FormatRules> formats;

  const FormatRules& rules(MatchFormat f) const {
    auto it = formats.find(f);
    if (it == formats.end())
      throw Error(ErrorCode::InvalidConfig, "rubric has no rules for " + std::string(to_string(f)));
    return it->second;
  }

  void validate() const {
    for (const auto& [f, r] : formats) {
      const std::string name(to_string(f));
      detail::validate_bands(r.batting.strike_rate_bands, name + ".batting.strike_rate_bands");
      detail::validate_bands(r.bowling.economy_bands, name + ".bowling.economy_bands");
      for (double v : {r.batting.per_run, r.batting.per_four, r.batting.per_six,
                       r.batting.fifty_bonus, r.batting.hundred_bonus, r.batting.duck_penalty,
                       r.bowling.per_wicket, r.bowling.four_wicket_bonus,
                       r.bowling.five_wicket_bonus, r.bowling.per_maiden, r.playing_xi_points})
        if (!std::isfinite(v)) throw Error(ErrorCode::InvalidConfig, name + ": non-finite points value");
    }
  }

  friend bool operator==(const ScoringRubric&, const ScoringRubric&) = default;
};

/// The Dream-11 point table as published around 2020.
inline ScoringRubric default_rubric() {
  using detail::band;
  FormatRules t20;
  t20.batting = BattingRules{1, 1, 2, 8, 16, -2,
                             {band(10, 0, 50, -6), band(10, 50, 60, -4),
                              band(10, 60, 70, -2, true, true)}};
  t20.bowling = BowlingRules{25, 8, 16, 8,
                             {band(2, 0, 5, 3), band(2, 5, 6, 2), band(2, 6, 7, 1, true, true),
                              band(2, 10, 11, -2, true, true),
                              band(2, 11, std::nullopt, -4, false)}};
  FormatRules odi;
  odi.batting = BattingRules{1, 1, 2, 4, 8, -3,
                             {band(20, 0, 40, -6), band(20, 40, 50, -4),
                              band(20, 50, 60, -2, true, true)}};
  odi.bowling = BowlingRules{25, 4, 8, 4,
                             {band(5, 0, 2.5, 3), band(5, 2.5, 3.5, 2),
                              band(5, 3.5, 4.5, 1, true, true), band(5, 7, 8, -1, true, true),
                              band(5, 8, 9, -2, false, true),
                              band(5, 9, std::nullopt, -4, false)}};
  ScoringRubric r;
  r.formats[MatchFormat::T20] = t20;
  r.formats[MatchFormat::IPL] = t20;
  r.formats[MatchFormat::ODI] = odi;
  return r;
}

/// Points from the first matching band, or 0.
inline double band_points(const std::vector<RateBand>& bands, double volume, double rate) {
  for (const auto& b : bands)
    if (volume >= b.min_volume && b.contains(rate)) return b.points;
  return 0;
}

/// Strike rate at full precision (runs per 100 balls), 0 with no balls faced.
inline double exact_strike_rate(int runs, int balls) {
  return balls > 0 ? 100.0 * runs / balls : 0.0;
}

/// Economy at full precision (runs per 6 legal balls), 0 with no balls bowled.
inline double exact_economy(int runs, int balls) {
  return balls > 0 ? 6.0 * runs / balls : 0.0;
}

inline double score_batting(const BattingPerformance& row, const ScoringRubric& rubric) {
  const FormatRules& f = rubric.rules(row.ctx.format);
  const BattingRules& b = f.batting;
  return f.playing_xi_points + b.per_run * row.runs + b.per_four * row.fours +
         b.per_six * row.sixes + b.fifty_bonus * row.fifty_flag +
         b.hundred_bonus * row.hundred_flag + b.duck_penalty * row.duck_flag +
         band_points(b.strike_rate_bands, row.balls, exact_strike_rate(row.runs, row.balls));
}

inline double score_bowling(const BowlingPerformance& row, const ScoringRubric& rubric) {
  const FormatRules& f = rubric.rules(row.ctx.format);
  const BowlingRules& b = f.bowling;
  return f.playing_xi_points + b.per_wicket * row.wickets +
         b.four_wicket_bonus * row.four_wicket_flag + b.five_wicket_bonus * row.five_wicket_flag +
         b.per_maiden * row.maidens +
         band_points(b.economy_bands, row.balls_bowled / 6.0,
                     exact_economy(row.runs_conceded, row.balls_bowled));
}

// ---- config file (YAML) ---------------------------------------------------

namespace detail {
inline double number(const YAML::Node& n, const std::string& path, double fallback) {
  if (!n) return fallback;
  try {
    return n.as<double>();
  } catch (const YAML::Exception&) {
    throw Error(ErrorCode::InvalidConfig, path + ": expected a number");
  }
}

inline std::vector<RateBand> bands_from_yaml(const YAML::Node& n, const std::string& path,
                                             const char* volume_key,
                                             const std::vector<RateBand>& fallback) {
  if (!n) return fallback;
  if (!n.IsSequence()) throw Error(ErrorCode::InvalidConfig, path + ": expected a list of bands");
  std::vector<RateBand> out;
  for (std::size_t i = 0; i < n.size(); ++i) {
    const YAML::Node b = n[i];
    const std::string p = path + "[" + std::to_string(i) + "]";
    RateBand rb;
    rb.min_volume = number(b[volume_key], p + "." + volume_key, 0);
    rb.lo = number(b["lo"], p + ".lo", 0);
    if (b["hi"] && !b["hi"].IsNull()) rb.hi = number(b["hi"], p + ".hi", 0);
    rb.lo_closed = b["lo_closed"] ? b["lo_closed"].as<bool>() : true;
    rb.hi_closed = b["hi_closed"] ? b["hi_closed"].as<bool>() : false;
    if (!b["points"]) throw Error(ErrorCode::InvalidConfig, p + ".points: missing");
    rb.points = number(b["points"], p + ".points", 0);
    out.push_back(rb);
  }
  return out;
}

inline void bands_to_yaml(YAML::Emitter& out, const std::vector<RateBand>& bands,
                          const char* volume_key) {
  out << YAML::BeginSeq;
  for (const auto& b : bands) {
    out << YAML::Flow << YAML::BeginMap;
    out << YAML::Key << volume_key << YAML::Value << b.min_volume;
    out << YAML::Key << "lo" << YAML::Value << b.lo;
    if (b.hi) out << YAML::Key << "hi" << YAML::Value << *b.hi;
    if (!b.lo_closed) out << YAML::Key << "lo_closed" << YAML::Value << false;
    if (b.hi_closed) out << YAML::Key << "hi_closed" << YAML::Value << true;
    out << YAML::Key << "points" << YAML::Value << b.points;
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;
}
}  // namespace detail

/// Reads a rubric config. Formats or keys that are absent inherit the
/// default table, so a config may override a single value.
inline ScoringRubric rubric_from_yaml(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw Error(ErrorCode::InvalidConfig, std::string("rubric: ") + e.what());
  }
  ScoringRubric r = default_rubric();
  if (root.IsNull()) return r;
  if (!root.IsMap()) throw Error(ErrorCode::InvalidConfig, "rubric: top level must be a map");
  for (const auto& kv : root) {
    const std::string key = kv.first.as<std::string>();
    MatchFormat f;
    try {
      f = parse_format(key);
    } catch (const Error&) {
      throw Error(ErrorCode::InvalidConfig, "rubric: unknown format '" + key + "'");
    }
    FormatRules& fr = r.formats[f];
    const YAML::Node n = kv.second;
    fr.playing_xi_points = detail::number(n["playing_xi_points"], key + ".playing_xi_points",
                                          fr.playing_xi_points);
    if (const YAML::Node b = n["batting"]) {
      const std::string p = key + ".batting";
      auto& br = fr.batting;
      br.per_run = detail::number(b["per_run"], p + ".per_run", br.per_run);
      br.per_four = detail::number(b["per_four"], p + ".per_four", br.per_four);
      br.per_six = detail::number(b["per_six"], p + ".per_six", br.per_six);
      br.fifty_bonus = detail::number(b["fifty_bonus"], p + ".fifty_bonus", br.fifty_bonus);
      br.hundred_bonus = detail::number(b["hundred_bonus"], p + ".hundred_bonus", br.hundred_bonus);
      br.duck_penalty = detail::number(b["duck_penalty"], p + ".duck_penalty", br.duck_penalty);
      br.strike_rate_bands = detail::bands_from_yaml(b["strike_rate_bands"], p + ".strike_rate_bands",
                                                     "min_balls", br.strike_rate_bands);
    }
    if (const YAML::Node b = n["bowling"]) {
      const std::string p = key + ".bowling";
      auto& br = fr.bowling;
      br.per_wicket = detail::number(b["per_wicket"], p + ".per_wicket", br.per_wicket);
      br.four_wicket_bonus =
          detail::number(b["four_wicket_bonus"], p + ".four_wicket_bonus", br.four_wicket_bonus);
      br.five_wicket_bonus =
          detail::number(b["five_wicket_bonus"], p + ".five_wicket_bonus", br.five_wicket_bonus);
      br.per_maiden = detail::number(b["per_maiden"], p + ".per_maiden", br.per_maiden);
      br.economy_bands = detail::bands_from_yaml(b["economy_bands"], p + ".economy_bands",
                                                 "min_overs", br.economy_bands);
    }
  }
  r.validate();
  return r;
}

inline ScoringRubric load_rubric(const std::filesystem::path& path) {
  return rubric_from_yaml(util::read_file(path));
}

inline std::string rubric_to_yaml(const ScoringRubric& r) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  for (const auto& [f, fr] : r.formats) {
    out << YAML::Key << std::string(to_string(f)) << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "playing_xi_points" << YAML::Value << fr.playing_xi_points;
    const auto& b = fr.batting;
    out << YAML::Key << "batting" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "per_run" << YAML::Value << b.per_run;
    out << YAML::Key << "per_four" << YAML::Value << b.per_four;
    out << YAML::Key << "per_six" << YAML::Value << b.per_six;
    out << YAML::Key << "fifty_bonus" << YAML::Value << b.fifty_bonus;
    out << YAML::Key << "hundred_bonus" << YAML::Value << b.hundred_bonus;
    out << YAML::Key << "duck_penalty" << YAML::Value << b.duck_penalty;
    out << YAML::Key << "strike_rate_bands" << YAML::Value;
    detail::bands_to_yaml(out, b.strike_rate_bands, "min_balls");
    out << YAML::EndMap;
    const auto& w = fr.bowling;
    out << YAML::Key << "bowling" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "per_wicket" << YAML::Value << w.per_wicket;
    out << YAML::Key << "four_wicket_bonus" << YAML::Value << w.four_wicket_bonus;
    out << YAML::Key << "five_wicket_bonus" << YAML::Value << w.five_wicket_bonus;
    out << YAML::Key << "per_maiden" << YAML::Value << w.per_maiden;
    out << YAML::Key << "economy_bands" << YAML::Value;
    detail::bands_to_yaml(out, w.economy_bands, "min_overs");
    out << YAML::EndMap;
    out << YAML::EndMap;
  }
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace dreamxi::dataset
