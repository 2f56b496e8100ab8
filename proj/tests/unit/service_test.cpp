#include <gtest/gtest.h>

#include <thread>

#include "dreamxi/service/pipeline.hpp"
#include "dreamxi/ingest/yaml_writer.hpp"
#include "service_support.hpp"

namespace dreamxi::service {
namespace {

using dataset::BattingPerformance;
using dataset::BowlingPerformance;
using dataset::PerformanceStore;
using dataset::Table;
using testing::ArtifactDir;
using testing::envelope;
using testing::TempDir;

ErrorCode config_error(const std::string& yaml) {
  try {
    config_from_yaml(yaml);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Io;
}

TEST(Config, DefaultDocumentMatchesDefaults) {
  const auto c = config_from_yaml(default_config_yaml());
  const AppConfig d;
  EXPECT_EQ(c.data_dir, d.data_dir);
  EXPECT_EQ(c.forest.n_trees, d.forest.n_trees);
  EXPECT_EQ(c.forest.min_samples_leaf, d.forest.min_samples_leaf);
  EXPECT_EQ(c.forest.seed, d.forest.seed);
  EXPECT_EQ(c.forest.kind, d.forest.kind);
  EXPECT_DOUBLE_EQ(c.split_ratio, 0.7);
  EXPECT_EQ(c.relax.k_min, d.relax.k_min);
  EXPECT_EQ(c.relax.order, d.relax.order);
  EXPECT_DOUBLE_EQ(c.roster.budget, 100);
  EXPECT_EQ(c.roster.roster_size, 11);
  EXPECT_EQ(c.roster.max_per_team, 7);
  EXPECT_EQ(c.method, optimizer::Method::exact_dp);
  EXPECT_EQ(c.service.port, d.service.port);
  EXPECT_TRUE(c.rubric_path.empty());
}

TEST(Config, OverridesAndRelativePaths) {
  const auto c = config_from_yaml(R"(
data_dir: store
learner: {kind: rf, n_trees: 12, seed: 9}
predictor:
  k_min: unlimited
  relaxation_order: [format, venue, team1, team2]
optimizer: {budget: 90.5, method: greedy}
)",
                                  "/etc/dreamxi");
  EXPECT_EQ(c.data_dir, std::filesystem::path("/etc/dreamxi/store"));
  EXPECT_EQ(c.forest.kind, learner::ForestKind::random_forest);
  EXPECT_EQ(c.forest.n_trees, 12);
  EXPECT_FALSE(c.relax.k_min.has_value());
  EXPECT_EQ(c.relax.order[0], predictor::Constraint::format);
  EXPECT_DOUBLE_EQ(c.roster.budget, 90.5);
  EXPECT_EQ(c.method, optimizer::Method::greedy);
  EXPECT_EQ(config_from_yaml("").forest.n_trees, 100);
}

TEST(Config, RejectsBadValues) {
  for (const char* bad : {"learner: {kind: svm}", "learner: {n_trees: many}", "learner: {split_ratio: 1.5}",
                          "predictor: {k_min: 0}", "predictor: {relaxation_order: [venue, team2, team1]}",
                          "predictor: {relaxation_order: [venue, venue, team1, format]}",
                          "optimizer: {method: annealing}", "optimizer: {roster_size: 11, max_per_team: 5}",
                          "credits: {window: 0}", "[1, 2]", "a: [unclosed"})
    EXPECT_EQ(config_error(bad), ErrorCode::InvalidConfig) << bad;
  EXPECT_THROW(load_config("/nonexistent/dreamxi.yaml"), Error);
}

// ---- insights -----------------------------------------------------------------

BattingPerformance bat(std::string who, std::string team, std::string opp, std::string venue, int day, int runs,
                       std::string dismissal, std::string winner) {
  BattingPerformance r;
  r.batsman = std::move(who);
  r.ctx.team1 = std::move(team);
  r.ctx.team2 = std::move(opp);
  r.ctx.venue = std::move(venue);
  r.ctx.winner = std::move(winner);
  r.ctx.date = Date(2019, 3, day);
  r.runs = runs;
  r.balls = runs + 2;
  r.fours = runs / 10;
  r.sixes = runs / 30;
  r.strike_rate = std::round(100.0 * r.runs / r.balls);
  r.dismissal_kind = std::move(dismissal);
  return dataset::engineer_batting(r, dataset::default_rubric());
}

BowlingPerformance bowl(std::string who, std::string team, std::string opp, int day, int runs) {
  BowlingPerformance r;
  r.bowler = std::move(who);
  r.ctx.team1 = std::move(team);
  r.ctx.team2 = std::move(opp);
  r.ctx.venue = "Eden Gardens";
  r.ctx.date = Date(2019, 3, day);
  r.overs = 4;
  r.balls_bowled = 24;
  r.runs_conceded = runs;
  r.economy_rate = runs / 4.0;
  return dataset::engineer_bowling(r, dataset::default_rubric());
}

// India play five matches (won, won, lost, lost, lost); A bats in three.
PerformanceStore insight_store() {
  std::vector<BattingPerformance> b = {
      bat("A", "India", "Australia", "Eden Gardens", 3, 40, "caught", "India"),
      bat("A", "India", "England", "MCG", 1, 12, "bowled", "India"),
      bat("A", "India", "Australia", "Eden Gardens", 9, 0, dataset::kNotOut, "Australia"),
      bat("C", "India", "Australia", "Eden Gardens", 3, 55, "caught", "India"),
      bat("C", "India", "England", "MCG", 1, 7, "lbw", "India"),
      bat("C", "India", "England", "Lord's", 12, 23, "caught", "England"),
      bat("C", "India", "Australia", "SCG", 15, 31, "run out", "Australia"),
      bat("Z", "Australia", "India", "Eden Gardens", 3, 18, "caught", "India"),
  };
  std::vector<BowlingPerformance> w = {bowl("B", "Australia", "India", 3, 20), bowl("B", "Australia", "India", 9, 41)};
  return {Table<BattingPerformance>(b), Table<BowlingPerformance>(w)};
}

const InsightSeries& find(const std::vector<InsightSeries>& v, InsightKind k,
                          std::optional<dataset::Discipline> d = std::nullopt) {
  for (const auto& s : v)
    if (s.kind == k && (!d || s.discipline == d)) return s;
  throw std::runtime_error("series missing");
}

bool has(const std::vector<InsightSeries>& v, InsightKind k) {
  return std::any_of(v.begin(), v.end(), [&](const InsightSeries& s) { return s.kind == k; });
}

TEST(Insights, FiveNumberInterpolates) {
  const auto f = five_number({4, 1, 3, 2});
  EXPECT_DOUBLE_EQ(f.min, 1);
  EXPECT_DOUBLE_EQ(f.q1, 1.75);
  EXPECT_DOUBLE_EQ(f.median, 2.5);
  EXPECT_DOUBLE_EQ(f.q3, 3.25);
  EXPECT_DOUBLE_EQ(f.max, 4);
  EXPECT_DOUBLE_EQ(five_number({7}).q3, 7);
  EXPECT_THROW(five_number({}), Error);
}

TEST(Insights, PureBatsman) {
  const auto store = insight_store();
  const auto v = player_insights(store, "A", 2);
  EXPECT_FALSE(has(v, InsightKind::econ_distribution));
  const auto& tl = find(v, InsightKind::score_timeline);
  ASSERT_EQ(tl.points.size(), 3u);
  EXPECT_EQ(tl.points[0].label, "2019-03-01");
  EXPECT_EQ(tl.points[2].label, "2019-03-09");
  // Scores in date order, averaged over a window of 2.
  const double s1 = tl.points[0].value, s2 = tl.points[1].value, s3 = tl.points[2].value;
  const auto& ma = find(v, InsightKind::moving_average);
  EXPECT_DOUBLE_EQ(ma.points[0].value, s1);
  EXPECT_DOUBLE_EQ(ma.points[1].value, (s1 + s2) / 2);
  EXPECT_DOUBLE_EQ(ma.points[2].value, (s2 + s3) / 2);

  const auto& dis = find(v, InsightKind::dismissal_breakdown);
  ASSERT_EQ(dis.points.size(), 3u);
  for (const auto& p : dis.points) EXPECT_DOUBLE_EQ(p.value, 1.0 / 3);
  const auto& venues = find(v, InsightKind::venue_split);
  EXPECT_EQ(venues.points.size(), 2u);
  EXPECT_DOUBLE_EQ(venues.points[0].value, 2);  // Eden Gardens
  // 52 runs: 5 fours, 1 six.
  const auto& mix = find(v, InsightKind::boundary_mix);
  EXPECT_DOUBLE_EQ(mix.points[0].value, 20.0 / 52);
  EXPECT_DOUBLE_EQ(mix.points[1].value, 6.0 / 52);
  EXPECT_DOUBLE_EQ(mix.points[2].value, 26.0 / 52);
}

TEST(Insights, PureBowler) {
  const auto v = player_insights(insight_store(), "B");
  EXPECT_FALSE(has(v, InsightKind::sr_distribution));
  const auto& econ = find(v, InsightKind::econ_distribution);
  ASSERT_EQ(econ.points.size(), 2u);
  EXPECT_EQ(econ.points[0].label, "[4,6)");
  EXPECT_EQ(econ.points[1].label, "[10,12)");
  EXPECT_DOUBLE_EQ(econ.summary->median, (5 + 10.25) / 2);
}

TEST(Insights, UnknownSubjects) {
  const auto store = insight_store();
  try {
    player_insights(store, "Nobody");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownPlayer);
  }
  try {
    team_insights(store, "Narnia");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownTeam);
  }
}

TEST(Insights, TeamWinLoss) {
  const auto store = insight_store();
  const auto v = team_insights(store, "India");
  const auto& wl = find(v, InsightKind::win_loss);
  EXPECT_DOUBLE_EQ(*wl.value, 0.4);
  EXPECT_DOUBLE_EQ(wl.points[0].value, 2);
  EXPECT_DOUBLE_EQ(wl.points[1].value, 3);
  EXPECT_DOUBLE_EQ(wl.points[2].value, 0);
  const auto total = [](const InsightSeries& s) {
    double t = 0;
    for (const auto& p : s.points) t += p.value;
    return t;
  };
  const double rows = static_cast<double>(store.batting.by_team("India").size());
  EXPECT_DOUBLE_EQ(total(find(v, InsightKind::venue_split)), rows);
  EXPECT_DOUBLE_EQ(total(find(v, InsightKind::opponent_split)), rows);
  EXPECT_DOUBLE_EQ(total(find(v, InsightKind::points_histogram)), rows);
  EXPECT_DOUBLE_EQ(*find(team_insights(store, "Australia"), InsightKind::win_loss).value, 0.0);
}

// ---- core -----------------------------------------------------------------------

ArtifactDir& shared_artifacts() {
  static ArtifactDir dir;
  return dir;
}

TEST(Core, HealthAndListings) {
  auto& art = shared_artifacts();
  ArtifactCache cache(art.cfg);
  Core core(cache);
  const auto h = envelope(core.health());
  EXPECT_TRUE(h["ok"].get<bool>());
  EXPECT_EQ(h["data"]["batting_rows"].get<std::size_t>(), art.store.batting.size());

  const auto teams = envelope(core.teams());
  EXPECT_EQ(teams["data"].get<std::vector<std::string>>(), art.store.teams());
  const auto team = art.store.teams().front();
  EXPECT_EQ(envelope(core.players(team))["data"].get<std::vector<std::string>>(), art.store.players_of(team));

  const auto missing = core.players("Narnia");
  EXPECT_EQ(missing.status, 404);
  EXPECT_EQ(envelope(missing)["error"]["code"], "UnknownTeam");
  EXPECT_FALSE(envelope(missing)["ok"].get<bool>());
  EXPECT_EQ(core.players("").status, 400);
}

TEST(Core, ProjectMatchesLibrary) {
  auto& art = shared_artifacts();
  ArtifactCache cache(art.cfg);
  Core core(cache);
  const auto& row = art.store.batting[0];
  nlohmann::json req = {{"player", row.batsman},
                        {"format", std::string(to_string(row.ctx.format))},
                        {"team1", row.ctx.team1},
                        {"team2", row.ctx.team2},
                        {"venue", row.ctx.venue}};
  const auto r = core.project(req.dump());
  ASSERT_EQ(r.status, 200) << r.body;
  const auto a = cache.get();
  const auto direct = predictor::project(a->store, a->models(), query_from_json(req), art.cfg.relax);
  EXPECT_EQ(envelope(r)["data"], to_json(direct));
  EXPECT_EQ(r.body, ok(to_json(direct)).body);

  req["k_min"] = "unlimited";
  EXPECT_EQ(core.project(req.dump()).status, 200);
  req["k_min"] = 0;
  EXPECT_EQ(core.project(req.dump()).status, 400);
  req.erase("k_min");
  req["player"] = "Nobody At All";
  const auto cold = core.project(req.dump());
  EXPECT_EQ(cold.status, 422);
  EXPECT_EQ(envelope(cold)["error"]["code"], "ColdStart");
  EXPECT_EQ(core.project("{not json").status, 400);
  EXPECT_EQ(core.project("[]").status, 400);
  EXPECT_EQ(core.project(R"({"player": "x"})").status, 400);
}

TEST(Core, RecommendFromCards) {
  auto& art = shared_artifacts();
  ArtifactCache cache(art.cfg);
  Core core(cache);
  util::Rng rng(5);
  nlohmann::json cards = nlohmann::json::array();
  std::vector<optimizer::PlayerCard> lib;
  for (int i = 0; i < 22; ++i) {
    const double credit = 7 + 0.5 * static_cast<double>(rng.below(9));
    const double points = std::round(rng.uniform(0, 120) * 100) / 100;
    const std::string name = "Card " + std::to_string(100 + i);
    cards.push_back({{"player", name}, {"team", i % 2 ? "Blue" : "Red"}, {"credit", credit}, {"points", points}});
    lib.push_back({name, i % 2 ? 1 : 0, credit, points, false, false});
  }
  const auto r = core.recommend(nlohmann::json{{"cards", cards}}.dump());
  ASSERT_EQ(r.status, 200) << r.body;
  const auto want = optimizer::recommend(lib, art.cfg.roster, optimizer::Method::exact_dp);
  const auto got = envelope(r)["data"]["recommendation"];
  EXPECT_EQ(got, to_json(want, {"Red", "Blue"}));

  // Locking a card forces it in.
  const auto locked = envelope(core.recommend(
      nlohmann::json{{"cards", cards}, {"lock", {"Card 100"}}, {"exclude", {"Card 101"}}}.dump()))["data"];
  const auto names = locked["recommendation"]["selected"].dump();
  EXPECT_NE(names.find("Card 100"), std::string::npos);
  EXPECT_EQ(names.find("Card 101"), std::string::npos);

  EXPECT_EQ(core.recommend(nlohmann::json{{"cards", cards}, {"constraints", {{"budget", 50}}}}.dump()).status, 422);
  EXPECT_EQ(core.recommend(nlohmann::json{{"cards", cards}, {"constraints", {{"max_per_team", 3}}}}.dump()).status,
            400);
  EXPECT_EQ(core.recommend(nlohmann::json{{"cards", cards}, {"lock", {"Ghost"}}}.dump()).status, 400);
  EXPECT_EQ(core.recommend("{}").status, 400);
  auto no_credit = cards;
  no_credit[0].erase("credit");
  EXPECT_EQ(core.recommend(nlohmann::json{{"cards", no_credit}}.dump()).status, 400);
}

TEST(Core, RecommendFromFixture) {
  auto& art = shared_artifacts();
  ArtifactCache cache(art.cfg);
  Core core(cache);
  const auto& row = art.store.batting[0];
  const nlohmann::json fixture = {{"team1", row.ctx.team1},
                                  {"team2", row.ctx.team2},
                                  {"format", std::string(to_string(row.ctx.format))},
                                  {"venue", row.ctx.venue}};
  const auto r = core.recommend(nlohmann::json{{"fixture", fixture}, {"estimate_credits", true}}.dump());
  ASSERT_EQ(r.status, 200) << r.body;
  const auto data = envelope(r)["data"];
  EXPECT_EQ(data["recommendation"]["selected"].size(), 11u);
  std::vector<optimizer::PlayerCard> cards;
  for (const auto& c : data["cards"]) {
    EXPECT_EQ(c["credit_source"], "estimated");
    EXPECT_EQ(c["points_source"], "projected");
    const double credit = c["credit"].get<double>();
    EXPECT_GE(credit, optimizer::kMinCredit);
    EXPECT_LE(credit, optimizer::kMaxCredit);
    cards.push_back({c["player"], c["team"] == row.ctx.team1 ? 0 : 1, credit, c["points"], false, false});
  }
  // The response is the optimum over the cards it reports.
  const auto want = optimizer::recommend(cards, art.cfg.roster, optimizer::Method::exact_dp);
  EXPECT_EQ(data["recommendation"], to_json(want, {row.ctx.team1, row.ctx.team2}));

  // An unknown squad member is a cold start, reported and dropped.
  const nlohmann::json squads = {art.store.players_of(row.ctx.team1),
                                 art.store.players_of(row.ctx.team2)};
  auto with_ghost = squads;
  with_ghost[0].push_back("Ghost Player");
  const auto g = envelope(core.recommend(
      nlohmann::json{{"fixture", fixture}, {"squads", with_ghost}, {"estimate_credits", true}}.dump()));
  ASSERT_TRUE(g["ok"].get<bool>()) << g.dump();
  ASSERT_EQ(g["data"]["cold_starts"].size(), 1u);
  EXPECT_EQ(g["data"]["cold_starts"][0]["player"], "Ghost Player");

  EXPECT_EQ(core.recommend(nlohmann::json{{"fixture", fixture}}.dump()).status, 400);
}

TEST(Core, MissingArtifactsNamePath) {
  TempDir dir;
  AppConfig cfg;
  cfg.data_dir = dir.path();
  ArtifactCache cache(cfg);
  Core core(cache);
  const auto r = core.health();
  EXPECT_EQ(r.status, 503);
  const auto e = envelope(r);
  EXPECT_EQ(e["error"]["code"], "ArtifactsMissing");
  EXPECT_NE(e["error"]["message"].get<std::string>().find((cfg.tables_dir() / dataset::kBattingFile).string()),
            std::string::npos);
}

TEST(Core, RefusesModelsFromOtherTables) {
  ArtifactDir art(20, 3, 2);
  auto store = art.store;
  store = testing::synthetic_store(21, 3);
  dataset::save_tables(store, art.cfg.tables_dir());
  ArtifactCache cache(art.cfg);
  Core core(cache);
  const auto r = core.health();
  EXPECT_EQ(r.status, 503);
  EXPECT_EQ(envelope(r)["error"]["code"], "ArtifactMismatch");
}

TEST(Core, ConcurrentRequestsAgree) {
  auto& art = shared_artifacts();
  ArtifactCache cache(art.cfg);
  Core core(cache);
  const auto& row = art.store.bowling[3];
  const std::string body = nlohmann::json{{"player", row.bowler},
                                          {"format", std::string(to_string(row.ctx.format))},
                                          {"team1", row.ctx.team1},
                                          {"team2", row.ctx.team2},
                                          {"venue", row.ctx.venue}}
                               .dump();
  std::vector<std::string> bodies(8);
  std::vector<std::thread> threads;
  for (std::size_t i = 0; i < bodies.size(); ++i)
    threads.emplace_back([&, i] { bodies[i] = core.project(body).body + core.player_insights(row.bowler).body; });
  for (auto& t : threads) t.join();
  for (const auto& b : bodies) EXPECT_EQ(b, bodies[0]);
  EXPECT_EQ(bodies[0], core.project(body).body + core.player_insights(row.bowler).body);
}

// ---- pipeline -------------------------------------------------------------------

TEST(Pipeline, IngestBuildTrainEvaluate) {
  TempDir dir;
  ingest::SyntheticConfig sc;
  sc.n_matches = 12;
  const auto matches = ingest::generate_corpus(sc);
  for (const auto& m : matches)
    util::write_file(dir.path() / "corpus" / "t20" / (m.meta.match_id + ".yaml"), ingest::to_cricsheet_yaml(m));
  util::write_file(dir.path() / "corpus" / "t20" / "broken.yaml", "meta: [\n");

  AppConfig cfg;
  cfg.data_dir = dir.path() / "data";
  const auto ing = run_ingest(cfg, dir.path() / "corpus");
  EXPECT_EQ(ing.counts.at("matches"), 12);
  EXPECT_EQ(ing.counts.at("failures"), 1);
  EXPECT_EQ(ing.warnings.size(), 1u);
  EXPECT_LE(ing.started, ing.finished);
  EXPECT_TRUE(std::filesystem::exists(cfg.reports_dir() / "ingest.json"));

  const auto built = run_build(cfg);
  const auto direct = dataset::build_tables(matches, dataset::default_rubric());
  EXPECT_EQ(built.counts.at("batting_rows"), static_cast<long long>(direct.batting.size()));
  EXPECT_EQ(built.counts.at("failures"), 0);
  // Tables from the cache equal tables from the YAML corpus.
  const auto from_yaml = run_build(cfg, dir.path() / "corpus");
  EXPECT_EQ(from_yaml.detail["tables_fingerprint"], built.detail["tables_fingerprint"]);

  TrainRequest tr;
  tr.discipline = dataset::Discipline::bowling;
  tr.tables_dir = cfg.tables_dir();
  tr.out = cfg.model_path(tr.discipline);
  tr.forest.n_trees = 5;
  const auto trained = run_train(cfg, tr);
  const auto j = to_json(trained);
  EXPECT_EQ(j["stage"], "train");
  EXPECT_EQ(j["started"].get<std::string>().size(), 24u);
  const auto again = evaluate_model_file(tr.out, cfg.tables_dir());
  EXPECT_EQ(learner::to_json(again), j["detail"]["eval"]);

  // Tables rebuilt from a different corpus no longer match the model.
  dataset::save_tables(testing::synthetic_store(5, 99), cfg.tables_dir());
  try {
    evaluate_model_file(tr.out, cfg.tables_dir());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ArtifactMismatch);
  }
}

}  // namespace
}  // namespace dreamxi::service
