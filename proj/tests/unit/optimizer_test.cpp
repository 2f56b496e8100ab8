#include <gtest/gtest.h>

#include "dreamxi/optimizer/cards.hpp"
#include "dreamxi/optimizer/credits.hpp"
#include "dreamxi/optimizer/solvers.hpp"
#include "optimizer_support.hpp"

namespace dreamxi::optimizer {
namespace {

using testing::adversarial_cards;
using testing::random_cards;

std::vector<std::string> names(const Recommendation& r) {
  std::vector<std::string> out;
  for (const auto& c : r.selected) out.push_back(c.player);
  return out;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::Io;
}

TEST(Exact, NonBindingBudgetIsTopElevenUnderCaps) {
  util::Rng rng(1);
  auto cards = random_cards(rng, 22);
  // Team 0 holds the eleven best cards, so the cap of 7 binds.
  for (std::size_t i = 0; i < cards.size(); ++i) {
    cards[i].team_index = i < 11 ? 0 : 1;
    cards[i].projected_points = 200.0 - static_cast<double>(i);
  }
  RosterConstraints rc;
  rc.budget = 1000;
  const auto r = recommend_exact(cards, rc);
  std::vector<std::string> want;
  for (std::size_t i = 0; i < 7; ++i) want.push_back(cards[i].player);
  for (std::size_t i = 11; i < 15; ++i) want.push_back(cards[i].player);
  std::sort(want.begin(), want.end());
  EXPECT_EQ(names(r), want);
  EXPECT_EQ(violation(r, cards, rc), "");
}

TEST(Exact, TenCreditsEachIsInfeasible) {
  util::Rng rng(2);
  auto cards = random_cards(rng, 22);
  for (auto& c : cards) c.credit = 10.0;
  EXPECT_EQ(code_of([&] { recommend_exact(cards, {}); }), ErrorCode::Infeasible);
  EXPECT_EQ(code_of([&] { recommend_greedy(cards, {}); }), ErrorCode::Infeasible);
  EXPECT_EQ(code_of([&] { brute_force(cards, {}); }), ErrorCode::Infeasible);
}

TEST(Exact, AgreesWithBruteForceOnSmallInstances) {
  util::Rng rng(3);
  for (int t = 0; t < 60; ++t) {
    RosterConstraints rc;
    auto cards = t % 2 ? random_cards(rng, 12 + t % 5) : adversarial_cards(rng, 12 + t % 5, rc);
    rc.roster_size = 6 + t % 3;
    rc.max_per_team = 4 + t % 2;
    rc.budget = 45 + 0.5 * static_cast<double>(rng.below(40));
    std::optional<Recommendation> a, b;
    ErrorCode ea{}, eb{};
    try {
      a = recommend_exact(cards, rc);
    } catch (const Error& e) {
      ea = e.code();
    }
    try {
      b = brute_force(cards, rc);
    } catch (const Error& e) {
      eb = e.code();
    }
    ASSERT_EQ(a.has_value(), b.has_value()) << "instance " << t;
    if (!a) {
      EXPECT_EQ(ea, eb);
      continue;
    }
    EXPECT_EQ(names(*a), names(*b)) << "instance " << t;
    EXPECT_EQ(violation(*a, cards, rc), "");
  }
}

TEST(Exact, AgreesWithBruteForceAtFullSize) {
  util::Rng rng(4);
  for (int t = 0; t < 3; ++t) {
    const auto cards = random_cards(rng, 22);
    const auto a = recommend_exact(cards, {});
    const auto b = brute_force(cards, {});
    EXPECT_EQ(names(a), names(b));
    EXPECT_EQ(a.total_points, b.total_points);
  }
}

TEST(Exact, TieBreakIsLexicographicallySmallest) {
  std::vector<PlayerCard> cards;
  for (int i = 0; i < 14; ++i) cards.push_back({"P" + std::to_string(10 + i), i % 2, 9.0, 50.0, false, false});
  RosterConstraints rc;
  const auto r = recommend_exact(cards, rc);
  EXPECT_EQ(names(r), (std::vector<std::string>{"P10", "P11", "P12", "P13", "P14", "P15", "P16", "P17", "P18",
                                                "P19", "P20"}));
  EXPECT_EQ(names(brute_force(cards, rc)), names(r));
}

TEST(Greedy, UniformCreditsMatchExact) {
  util::Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    auto cards = random_cards(rng, 22);
    for (auto& c : cards) c.credit = 9.0;
    EXPECT_EQ(names(recommend_greedy(cards, {})), names(recommend_exact(cards, {})));
  }
}

TEST(Greedy, GapInstanceFoundByExhaustiveSearch) {
  util::Rng rng(6);
  RosterConstraints rc;
  rc.roster_size = 6;
  rc.max_per_team = 4;
  rc.budget = 50;
  bool found = false;
  for (int t = 0; t < 500 && !found; ++t) {
    auto cards = random_cards(rng, 12);
    // One cheap card with an outsized ratio that crowds out better pairs.
    cards[0].credit = 7.0;
    cards[0].projected_points = 140;
    try {
      const auto g = recommend_greedy(cards, rc);
      const auto b = brute_force(cards, rc);
      EXPECT_EQ(violation(g, cards, rc), "");
      EXPECT_LE(micro_points(g.total_points), micro_points(b.total_points));
      if (g.total_points < b.total_points - 1e-6) found = true;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::Infeasible);
    }
  }
  EXPECT_TRUE(found);
}

TEST(Greedy, NeverBeatsExact) {
  util::Rng rng(7);
  for (int t = 0; t < 200; ++t) {
    RosterConstraints rc;
    const auto cards = adversarial_cards(rng, 22, rc);
    try {
      const auto e = recommend_exact(cards, rc);
      const auto g = recommend_greedy(cards, rc);
      EXPECT_LE(g.total_points, e.total_points + 1e-9);
      EXPECT_EQ(violation(g, cards, rc), "");
    } catch (const Error& e) {
      EXPECT_TRUE(e.code() == ErrorCode::Infeasible || e.code() == ErrorCode::TooFewPlayers);
      EXPECT_THROW(recommend_greedy(cards, rc), Error);
    }
  }
}

TEST(Guards, TinyBudgetAndBadInput) {
  util::Rng rng(8);
  auto cards = random_cards(rng, 22);
  RosterConstraints rc;
  rc.budget = 0.5;
  EXPECT_EQ(code_of([&] { recommend_greedy(cards, rc); }), ErrorCode::Infeasible);
  EXPECT_EQ(code_of([&] { recommend_exact(cards, rc); }), ErrorCode::Infeasible);
  auto odd = cards;
  odd[0].credit = 8.3;
  EXPECT_EQ(code_of([&] { recommend_exact(odd, {}); }), ErrorCode::InvalidInput);
  auto both = cards;
  both[0].locked = both[0].excluded = true;
  EXPECT_EQ(code_of([&] { recommend_exact(both, {}); }), ErrorCode::InvalidInput);
  auto dup = cards;
  dup[1].player = dup[0].player;
  EXPECT_EQ(code_of([&] { recommend_exact(dup, {}); }), ErrorCode::InvalidInput);
  const std::vector<PlayerCard> few(cards.begin(), cards.begin() + 10);
  EXPECT_EQ(code_of([&] { recommend_exact(few, {}); }), ErrorCode::TooFewPlayers);
  auto big = random_cards(rng, 25);
  EXPECT_EQ(code_of([&] { brute_force(big, {}); }), ErrorCode::TooLarge);
  auto locked = cards;
  for (int i = 0; i < 12; ++i) locked[static_cast<std::size_t>(i)].locked = true;
  EXPECT_EQ(code_of([&] { recommend_exact(locked, {}); }), ErrorCode::Infeasible);
  rc = {};
  rc.max_per_team = 5;
  EXPECT_EQ(code_of([&] { rc.validate(); }), ErrorCode::InvalidConfig);
}

TEST(BruteForce, ElevenCardsAreAllSelected) {
  util::Rng rng(9);
  auto cards = random_cards(rng, 11);
  for (auto& c : cards) c.credit = 8.0;
  const auto r = brute_force(cards, {});
  EXPECT_EQ(r.selected.size(), 11u);
  EXPECT_EQ(recommend_exact(cards, {}).selected, r.selected);
}

TEST(BruteForce, LockedPoorCardIsKept) {
  util::Rng rng(10);
  auto cards = random_cards(rng, 16);
  cards[3].projected_points = 0;
  cards[3].locked = true;
  cards[4].projected_points = 149.9;
  cards[4].excluded = true;
  for (auto* fn : {&brute_force, &recommend_exact, &recommend_greedy}) {
    const auto r = fn(cards, {});
    const auto n = names(r);
    EXPECT_NE(std::find(n.begin(), n.end(), cards[3].player), n.end());
    EXPECT_EQ(std::find(n.begin(), n.end(), cards[4].player), n.end());
    EXPECT_EQ(violation(r, cards, {}), "");
  }
}

TEST(Captain, DirectDefinitionAndTies) {
  std::vector<PlayerCard> sel;
  const double pts[] = {50, 40, 30, 20, 10};
  for (int i = 0; i < 5; ++i) sel.push_back({"N" + std::to_string(i), 0, 8, pts[i], false, false});
  auto r = make_recommendation(sel, Method::exact_dp);
  EXPECT_EQ(r.captain, "N0");
  EXPECT_EQ(r.vice_captain, "N1");
  EXPECT_DOUBLE_EQ(r.expected_points - r.total_points, 70.0);
  sel[3].projected_points = 50;
  EXPECT_EQ(choose_captain(sel), (std::pair<std::string, std::string>{"N0", "N3"}));
  sel[0].player = "Z0";
  EXPECT_EQ(choose_captain(sel).first, "N3");
  EXPECT_THROW(choose_captain({sel[0]}), Error);
}

TEST(Captain, ExpectedPointsFormula) {
  util::Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    const auto sel = random_cards(rng, 11);
    const auto r = make_recommendation(sel, Method::greedy);
    double sum = 0, top = -1, second = -1;
    for (const auto& c : sel) {
      sum += c.projected_points;
      if (c.projected_points > top) {
        second = top;
        top = c.projected_points;
      } else if (c.projected_points > second) {
        second = c.projected_points;
      }
    }
    EXPECT_NEAR(r.expected_points, sum + top + 0.5 * second, 1e-9);
  }
}

TEST(Properties, ScaleInvarianceAndBudgetMonotonicity) {
  util::Rng rng(12);
  for (int t = 0; t < 100; ++t) {
    RosterConstraints rc;
    auto cards = random_cards(rng, 18);
    rc.budget = 80 + 0.5 * static_cast<double>(rng.below(40));
    try {
      const auto base = recommend_exact(cards, rc);
      auto scaled = cards;
      const double k = 0.5 + rng.uniform(0, 3);
      for (auto& c : scaled) c.projected_points *= k;
      EXPECT_EQ(names(recommend_exact(scaled, rc)), names(base));
      auto richer = rc;
      richer.budget += 0.5 * static_cast<double>(1 + rng.below(20));
      EXPECT_GE(recommend_exact(cards, richer).total_points, base.total_points - 1e-9);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::Infeasible);
    }
  }
}

TEST(Credits, AnchorsAndHandMap) {
  const CreditScale scale{10, 50, 2};
  EXPECT_EQ(estimate_credits(std::vector<double>{10, 10}, scale), 7.0);
  EXPECT_EQ(estimate_credits(std::vector<double>{0, 50}, CreditScale{10, 50, 1}), 11.0);
  // avg 31: 7 + 4 * 21 / 40 = 9.1, snapped to 9.0
  EXPECT_EQ(estimate_credits(std::vector<double>{99, 30, 32}, scale), 9.0);
  // avg 35: 7 + 4 * 25 / 40 = 9.5
  EXPECT_EQ(estimate_credits(std::vector<double>{20, 30, 40}, scale), 9.5);
  EXPECT_EQ(estimate_credits(std::vector<double>{500}, scale), 11.0);
  EXPECT_EQ(code_of([&] { estimate_credits(std::vector<double>{}, scale); }), ErrorCode::EmptyHistory);
}

TEST(CardFile, ParseAndRoundTrip) {
  const std::string text =
      "player,team,credit,points,locked,excluded\n"
      "V Kohli,India,10.5,88.25,1,0\n"
      "\"Smith, S\",Australia,9,,0,true\n";
  const auto cards = parse_card_csv(text);
  ASSERT_EQ(cards.size(), 2u);
  EXPECT_EQ(cards[0].player, "V Kohli");
  EXPECT_EQ(cards[0].credit, 10.5);
  EXPECT_TRUE(cards[0].locked);
  EXPECT_EQ(cards[1].player, "Smith, S");
  EXPECT_FALSE(cards[1].points);
  EXPECT_TRUE(cards[1].excluded);
  EXPECT_EQ(parse_card_csv(card_csv(cards)), cards);
  EXPECT_EQ(code_of([] { parse_card_csv("player,team\nA,B\n"); }), ErrorCode::SchemaMismatch);
  EXPECT_EQ(code_of([] { parse_card_csv("player,team,credit,points,locked,excluded\nA,B,x,1,0,0\n"); }),
            ErrorCode::InvalidInput);
}

}  // namespace
}  // namespace dreamxi::optimizer
