#include <gtest/gtest.h>

#include "http_support.hpp"
#include "process_support.hpp"
#include "service_support.hpp"

namespace dreamxi::service {
namespace {

using testing::ArtifactDir;
using testing::envelope;
using testing::LiveServer;
using testing::run_process;

class Http : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    art_ = new ArtifactDir(40, 11, 8);
    cache_ = new ArtifactCache(art_->cfg);
    core_ = new Core(*cache_);
    server_ = new LiveServer(*core_);
  }
  static void TearDownTestSuite() {
    delete server_;
    delete core_;
    delete cache_;
    delete art_;
  }

  static httplib::Result get(const std::string& path) { return server_->client().Get(path); }
  static httplib::Result post(const std::string& path, const std::string& body) {
    return server_->client().Post(path, body, "application/json");
  }
  static void expect_same(const httplib::Result& res, const Response& want) {
    ASSERT_TRUE(res) << "no response";
    EXPECT_EQ(res->status, want.status);
    EXPECT_EQ(res->body, want.body);
    EXPECT_EQ(res->get_header_value("Content-Type"), "application/json");
  }
  static std::vector<std::string> cli_globals() { return {"--data-dir", art_->cfg.data_dir.string()}; }
  static testing::ProcessResult cli(std::vector<std::string> args) {
    auto all = cli_globals();
    all.insert(all.end(), args.begin(), args.end());
    return run_process(DREAMXI_CLI, all);
  }

  static ArtifactDir* art_;
  static ArtifactCache* cache_;
  static Core* core_;
  static LiveServer* server_;
};

ArtifactDir* Http::art_ = nullptr;
ArtifactCache* Http::cache_ = nullptr;
Core* Http::core_ = nullptr;
LiveServer* Http::server_ = nullptr;

TEST_F(Http, ReadEndpointsMatchCore) {
  expect_same(get("/health"), core_->health());
  expect_same(get("/teams"), core_->teams());
  for (const auto& team : art_->store.teams()) {
    const auto res = get("/players?team=" + httplib::detail::encode_url(team));
    expect_same(res, core_->players(team));
    EXPECT_EQ(envelope({res->status, res->body})["data"].get<std::vector<std::string>>(),
              art_->store.players_of(team));
  }
  const auto team = art_->store.teams().back();
  expect_same(get("/insights/team/" + httplib::detail::encode_url(team)), core_->team_insights(team));
  const auto player = art_->store.bowling[0].bowler;
  expect_same(get("/insights/player/" + httplib::detail::encode_url(player)), core_->player_insights(player));
}

TEST_F(Http, ErrorsUseEnvelope) {
  expect_same(get("/players?team=Narnia"), core_->players("Narnia"));
  EXPECT_EQ(get("/players?team=Narnia")->status, 404);
  EXPECT_EQ(get("/players")->status, 400);
  EXPECT_EQ(get("/insights/player/Nobody")->status, 404);
  const auto missing = get("/no/such/route");
  EXPECT_EQ(missing->status, 404);
  EXPECT_FALSE(nlohmann::json::parse(missing->body)["ok"].get<bool>());
  EXPECT_EQ(post("/project", "{oops")->status, 400);
}

TEST_F(Http, RecommendInfeasibleBudgetIs422) {
  nlohmann::json cards = nlohmann::json::array();
  for (int i = 0; i < 22; ++i)
    cards.push_back({{"player", "P" + std::to_string(i)}, {"team", i % 2 ? "B" : "A"}, {"credit", 9}, {"points", i}});
  const auto body = nlohmann::json{{"cards", cards}, {"constraints", {{"budget", 50}}}}.dump();
  const auto res = post("/recommend", body);
  expect_same(res, core_->recommend(body));
  EXPECT_EQ(res->status, 422);
  EXPECT_EQ(nlohmann::json::parse(res->body)["error"]["code"], "Infeasible");
}

TEST_F(Http, ProjectEqualsCli) {
  for (std::size_t i : {0, 7, 31}) {
    const auto& row = art_->store.batting[i];
    const std::string fmt(to_string(row.ctx.format));
    const auto body = nlohmann::json{{"player", row.batsman},
                                     {"format", fmt},
                                     {"team1", row.ctx.team1},
                                     {"team2", row.ctx.team2},
                                     {"venue", row.ctx.venue}}
                          .dump();
    const auto res = post("/project", body);
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 200);
    const auto out = cli({"project", "--player", row.batsman, "--format", fmt, "--team1", row.ctx.team1, "--team2",
                          row.ctx.team2, "--venue", row.ctx.venue});
    EXPECT_EQ(out.exit_code, 0);
    EXPECT_EQ(out.out, res->body);
  }
  const auto cold = cli({"project", "--player", "Nobody", "--format", "T20", "--team1", "A", "--team2", "B", "--venue",
                         "V"});
  EXPECT_EQ(cold.exit_code, 4);
  EXPECT_EQ(cold.out, post("/project", R"({"player":"Nobody","format":"T20","team1":"A","team2":"B","venue":"V"})")->body);
}

TEST_F(Http, RecommendEqualsCli) {
  const auto& row = art_->store.batting[5];
  const std::string fmt(to_string(row.ctx.format));
  const nlohmann::json req = {
      {"fixture", {{"team1", row.ctx.team1}, {"team2", row.ctx.team2}, {"format", fmt}, {"venue", row.ctx.venue}}},
      {"estimate_credits", true},
      {"constraints", {{"budget", 95}}},
      {"lock", {row.batsman}}};
  const auto res = post("/recommend", req.dump());
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200) << res->body;
  const auto out = cli({"recommend", "--team1", row.ctx.team1, "--team2", row.ctx.team2, "--format", fmt, "--venue",
                        row.ctx.venue, "--estimate-credits", "--budget", "95", "--lock", row.batsman});
  EXPECT_EQ(out.exit_code, 0);
  EXPECT_EQ(out.out, res->body);
  const auto via_request = cli({"recommend", "--request", req.dump()});
  EXPECT_EQ(via_request.out, res->body);
}

TEST_F(Http, CliEvaluateReproducesTraining) {
  const auto out = cli({"evaluate", "--model", art_->cfg.model_path(dataset::Discipline::batting).string()});
  ASSERT_EQ(out.exit_code, 0);
  const auto model = learner::load_model(art_->cfg.model_path(dataset::Discipline::batting));
  const auto expected = learner::evaluate_model(model, art_->store);
  EXPECT_EQ(nlohmann::json::parse(out.out), learner::to_json(expected));
  EXPECT_EQ(cli({"evaluate", "--model", "/nonexistent.fxi"}).exit_code, 5);
}

}  // namespace
}  // namespace dreamxi::service
