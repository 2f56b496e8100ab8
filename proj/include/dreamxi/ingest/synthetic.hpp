#pragma once

#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include "dreamxi/ingest/types.hpp"
#include "dreamxi/util/rng.hpp"

namespace dreamxi::ingest {

/// Ball-by-ball simulator producing valid MatchRecords. Probabilities are
/// loosely calibrated to limited-overs cricket; the goal is realistic shape
/// (innings totals, extras, dismissal mix), not predictive fidelity.
struct SyntheticConfig {
  std::uint64_t seed = 7;
  std::size_t n_matches = 10;
  /// Formats are assigned round-robin from this list.
  std::vector<MatchFormat> formats = {MatchFormat::T20};
  std::size_t teams_per_format = 6;
  std::size_t squad_size = 14;
  std::size_t n_venues = 8;
  /// When nonzero every innings has exactly this many deliveries and
  /// chase/all-out stopping is disabled.
  int deliveries_per_innings = 0;
  Date first_date{2010, 4, 1};
};

namespace detail {

inline const std::vector<std::string>& team_names(MatchFormat f) {
  static const std::vector<std::string> international = {
      "England", "Australia", "India", "Pakistan", "South Africa", "New Zealand",
      "Sri Lanka", "West Indies", "Bangladesh", "Afghanistan", "Zimbabwe", "Ireland"};
  static const std::vector<std::string> franchise = {
      "Chennai Super Kings", "Mumbai Indians", "Delhi Daredevils", "Kings XI Punjab",
      "Rajasthan Royals", "Kolkata Knight Riders", "Royal Challengers Bangalore",
      "Sunrisers Hyderabad", "Deccan Chargers", "Pune Warriors", "Gujarat Lions",
      "Kochi Tuskers Kerala"};
  return f == MatchFormat::IPL ? franchise : international;
}

inline const std::vector<std::pair<std::string, std::string>>& venue_pool() {
  static const std::vector<std::pair<std::string, std::string>> v = {
      {"Newlands", "Cape Town"},
      {"Kingsmead", "Durban"},
      {"Eden Gardens", "Kolkata"},
      {"Wankhede Stadium", "Mumbai"},
      {"MA Chidambaram Stadium, Chepauk", "Chennai"},
      {"M Chinnaswamy Stadium", "Bangalore"},
      {"Brabourne Stadium", "Mumbai"},
      {"Sheikh Zayed Stadium", "Abu Dhabi"},
      {"The Rose Bowl", "Southampton"},
      {"Melbourne Cricket Ground", "Melbourne"},
      {"Lord's", "London"},
      {"Eden Park", "Auckland"},
      {"Sydney Cricket Ground", "Sydney"},
      {"R Premadasa Stadium", "Colombo"},
      {"Feroz Shah Kotla", "Delhi"},
      {"St George's Park", "Port Elizabeth"}};
  return v;
}

inline std::string player_name(const std::string& team, std::size_t slot) {
  static const std::array<const char*, 20> surnames = {
      "Sharma", "Smith", "Khan", "Taylor", "Perera", "Williams", "Patel", "Brown",
      "Singh", "Clarke", "Ahmed", "Fernando", "Jones", "Kumar", "Walker", "Rahman",
      "Morgan", "Reddy", "Hussain", "Marsh"};
  static const std::array<const char*, 14> initials = {"AB", "MS", "KP", "RG", "SK", "JD", "DA",
                                                       "TM", "MJ", "BA", "HH", "PJ", "SR", "CJ"};
  std::size_t h = 0;
  for (char c : team) h = h * 31 + static_cast<unsigned char>(c);
  const char* ini = initials[(slot + h) % initials.size()];
  const char* sur = surnames[(slot * 7 + h) % surnames.size()];
  // Team-specific suffix keeps names unique across the pool.
  std::string tag;
  for (char c : team)
    if (std::isupper(static_cast<unsigned char>(c))) tag += c;
  return std::string(ini) + " " + sur + "-" + tag + std::to_string(slot + 1);
}

struct SimState {
  int wickets = 0;
  int total = 0;
  int legal = 0;
  std::size_t striker = 0, non_striker = 1, next_in = 2;
};

inline Date add_days(Date d, int days) {
  using namespace std::chrono;
  return Date(year_month_day(sys_days(d.ymd()) + std::chrono::days(days)));
}

}  // namespace detail

/// Simulates one innings. `skill[i]` in [0.5, 1.5] scales batting aggression.
inline Innings simulate_innings(util::Rng& rng, int innings_index, const std::string& batting,
                                const std::vector<std::string>& batters,
                                const std::vector<double>& skill,
                                const std::vector<std::string>& bowlers, int max_overs,
                                int target, int fixed_deliveries) {
  Innings inn;
  inn.batting_team = batting;
  detail::SimState st;
  const bool fixed = fixed_deliveries > 0;
  const int max_legal = max_overs * 6;
  const int spell_cap = std::max(1, max_overs / 5);
  std::vector<int> overs_by(bowlers.size(), 0);
  std::size_t last_bowler = bowlers.size();
  int over = 0;
  auto done = [&] {
    if (fixed) return static_cast<int>(inn.deliveries.size()) >= fixed_deliveries;
    return st.wickets >= 10 || st.legal >= max_legal || (target > 0 && st.total >= target);
  };
  while (!done()) {
    // Pick the bowler for this over: least-used eligible, random among ties.
    std::vector<std::size_t> eligible;
    int least = 1 << 30;
    for (std::size_t b = 0; b < bowlers.size(); ++b) {
      if (b == last_bowler) continue;
      if (!fixed && overs_by[b] >= spell_cap) continue;
      least = std::min(least, overs_by[b]);
    }
    for (std::size_t b = 0; b < bowlers.size(); ++b)
      if (b != last_bowler && (fixed || overs_by[b] < spell_cap) && overs_by[b] <= least + 1)
        eligible.push_back(b);
    if (eligible.empty()) eligible.push_back((last_bowler + 1) % bowlers.size());
    const std::size_t bi = eligible[rng.below(eligible.size())];
    const std::string& bowler = bowlers[bi];
    ++overs_by[bi];
    last_bowler = bi;

    int ball = 0, legal_in_over = 0;
    while (legal_in_over < 6 && !done()) {
      RawDelivery d;
      d.innings_index = innings_index;
      d.over = over;
      d.ball_in_over = ++ball;
      d.batting_team = batting;
      d.batsman = batters[st.striker];
      d.non_striker = batters[st.non_striker];
      d.bowler = bowler;
      const double sk = skill[st.striker];
      const double u = rng.uniform();
      Extras ex;
      if (u < 0.03) {
        ex.wides = rng.chance(0.05) ? 5 : 1;
      } else if (u < 0.038) {
        ex.noballs = 1;
        const double r = rng.uniform();
        d.runs_batsman = r < 0.5 ? 0 : (r < 0.8 ? 1 : (r < 0.93 ? 4 : 6));
      } else {
        ++legal_in_over;
        ++st.legal;
        const bool can_fall = !(fixed && st.wickets >= 9) && st.next_in <= batters.size();
        const double wicket_p = (max_overs == 20 ? 0.05 : 0.03) / sk;
        if (can_fall && rng.chance(wicket_p)) {
          static const std::array<std::pair<const char*, double>, 6> kinds = {{
              {"caught", 0.60}, {"bowled", 0.77}, {"lbw", 0.89}, {"run out", 0.95},
              {"stumped", 0.98}, {"caught and bowled", 1.0}}};
          const double k = rng.uniform();
          std::string kind = "caught";
          for (const auto& [name, cum] : kinds)
            if (k < cum) {
              kind = name;
              break;
            }
          Wicket w;
          w.kind = kind;
          w.player_out = d.batsman;
          if (kind == "run out") {
            d.runs_batsman = rng.chance(0.5) ? 1 : 0;
            if (rng.chance(0.4)) w.player_out = d.non_striker;
          }
          if (kind == "caught" || kind == "run out" || kind == "stumped")
            w.fielders.push_back("fielder-" + std::to_string(rng.below(11) + 1));
          d.wicket = w;
        } else {
          const double r = rng.uniform();
          const double four = 0.10 * sk, six = 0.035 * sk * sk;
          if (r < 0.02) {
            (rng.chance(0.5) ? ex.byes : ex.legbyes) = rng.chance(0.7) ? 1 : 4;
          } else if (r < 0.02 + six) {
            d.runs_batsman = 6;
          } else if (r < 0.02 + six + four) {
            d.runs_batsman = 4;
          } else {
            const double s = rng.uniform();
            d.runs_batsman = s < 0.42 ? 0 : (s < 0.85 ? 1 : (s < 0.98 ? 2 : 3));
          }
        }
      }
      if (!ex.empty()) d.extras = ex;
      d.runs_extras = ex.total();
      d.runs_total = d.runs_batsman + d.runs_extras;
      st.total += d.runs_total;

      const int ran = d.runs_batsman + ex.byes + ex.legbyes + (ex.wides > 1 ? ex.wides - 1 : 0);
      if (d.wicket) {
        ++st.wickets;
        const bool striker_out = d.wicket->player_out == d.batsman;
        std::size_t& slot = striker_out ? st.striker : st.non_striker;
        if (st.next_in < batters.size()) slot = st.next_in++;
        else st.next_in = batters.size() + 1;
      }
      if (ran % 2 == 1) std::swap(st.striker, st.non_striker);
      inn.deliveries.push_back(std::move(d));
    }
    if (legal_in_over == 6) std::swap(st.striker, st.non_striker);
    ++over;
  }
  return inn;
}

/// Generates `n_matches` valid MatchRecords deterministically from the seed.
inline std::vector<MatchRecord> generate_corpus(const SyntheticConfig& cfg) {
  std::vector<MatchRecord> out;
  out.reserve(cfg.n_matches);
  const auto& venues = detail::venue_pool();
  for (std::size_t mi = 0; mi < cfg.n_matches; ++mi) {
    util::Rng rng(util::derive_seed(cfg.seed, mi));
    const MatchFormat fmt = cfg.formats[mi % cfg.formats.size()];
    const auto& pool = detail::team_names(fmt);
    const std::size_t n_teams = std::min(cfg.teams_per_format, pool.size());
    const std::size_t a = rng.below(n_teams);
    std::size_t b = rng.below(n_teams - 1);
    if (b >= a) ++b;
    const std::string& team_a = pool[a];
    const std::string& team_b = pool[b];
    const auto& venue = venues[rng.below(std::min(cfg.n_venues, venues.size()))];
    const int max_overs = fmt == MatchFormat::ODI ? 50 : 20;

    MatchRecord m;
    auto& meta = m.meta;
    meta.match_id = std::string(directory_name(fmt)) + "-" + std::to_string(100000 + mi);
    meta.format = fmt;
    meta.city = venue.second;
    meta.venue = venue.first;
    meta.dates = {detail::add_days(cfg.first_date, static_cast<int>(mi))};
    meta.gender = "male";
    meta.teams = {team_a, team_b};

    // Pick 11 of the squad; skill is a fixed per-player trait.
    auto pick_xi = [&](const std::string& team, std::vector<std::string>& names,
                       std::vector<double>& skill) {
      std::vector<std::size_t> slots(cfg.squad_size);
      for (std::size_t i = 0; i < slots.size(); ++i) slots[i] = i;
      rng.shuffle(slots);
      slots.resize(std::min<std::size_t>(11, slots.size()));
      std::sort(slots.begin(), slots.end());
      for (std::size_t s : slots) {
        names.push_back(detail::player_name(team, s));
        skill.push_back(1.4 - 0.08 * static_cast<double>(s % 12));
      }
    };
    std::vector<std::string> xi_a, xi_b;
    std::vector<double> sk_a, sk_b;
    pick_xi(team_a, xi_a, sk_a);
    pick_xi(team_b, xi_b, sk_b);
    auto bowlers_of = [](const std::vector<std::string>& xi) {
      return std::vector<std::string>(xi.end() - std::min<std::ptrdiff_t>(6, xi.size()), xi.end());
    };

    const bool a_wins_toss = rng.chance(0.5);
    const bool bat_first = rng.chance(0.5);
    meta.toss_winner = a_wins_toss ? team_a : team_b;
    meta.toss_decision = bat_first ? TossDecision::bat : TossDecision::field;
    const bool a_bats_first = a_wins_toss == bat_first;
    const auto& first = a_bats_first ? team_a : team_b;
    const auto& second = a_bats_first ? team_b : team_a;
    const auto& xi1 = a_bats_first ? xi_a : xi_b;
    const auto& sk1 = a_bats_first ? sk_a : sk_b;
    const auto& xi2 = a_bats_first ? xi_b : xi_a;
    const auto& sk2 = a_bats_first ? sk_b : sk_a;

    m.innings.push_back(simulate_innings(rng, 1, first, xi1, sk1, bowlers_of(xi2), max_overs, 0,
                                         cfg.deliveries_per_innings));
    int first_total = 0;
    for (const auto& d : m.innings[0].deliveries) first_total += d.runs_total;
    m.innings.push_back(simulate_innings(rng, 2, second, xi2, sk2, bowlers_of(xi1), max_overs,
                                         first_total + 1, cfg.deliveries_per_innings));
    int second_total = 0, second_wkts = 0;
    for (const auto& d : m.innings[1].deliveries) {
      second_total += d.runs_total;
      if (d.wicket) ++second_wkts;
    }
    if (second_total > first_total) {
      meta.outcome_winner = second;
      meta.outcome_by = Margin{MarginKind::wickets, 10 - second_wkts};
    } else if (second_total < first_total) {
      meta.outcome_winner = first;
      meta.outcome_by = Margin{MarginKind::runs, first_total - second_total};
    }
    // Best individual score takes the award.
    std::map<std::string, int> runs;
    for (const auto& inn : m.innings)
      for (const auto& d : inn.deliveries) runs[d.batsman] += d.runs_batsman;
    auto best = std::max_element(runs.begin(), runs.end(),
                                 [](const auto& x, const auto& y) { return x.second < y.second; });
    if (best != runs.end()) meta.player_of_match = std::vector<std::string>{best->first};
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace dreamxi::ingest
