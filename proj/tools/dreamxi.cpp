#include <csignal>
#include <iostream>

#include <CLI11.hpp>
#include <httplib.h>

#include "dreamxi/ingest/synthetic.hpp"
#include "dreamxi/ingest/yaml_writer.hpp"
#include "dreamxi/service/core.hpp"
#include "dreamxi/service/http.hpp"
#include "dreamxi/service/pipeline.hpp"

namespace {

using namespace dreamxi;
using service::json;

struct Globals {
  std::string data_dir;
  std::string config;
  std::optional<std::uint64_t> seed;
  bool json_output = false;
};

int exit_code(int status) {
  switch (status) {
    case 200: return 0;
    case 400: return 2;
    case 404: return 3;
    case 422: return 4;
    case 503: return 5;
    default: return 1;
  }
}

service::AppConfig resolve_config(const Globals& g) {
  auto cfg = g.config.empty() ? service::AppConfig{} : service::load_config(g.config);
  if (!g.data_dir.empty()) cfg.data_dir = g.data_dir;
  if (g.seed) cfg.forest.seed = *g.seed;
  return cfg;
}

/// Prints an envelope body and turns its status into the exit code.
int emit(const service::Response& r) {
  std::cout << r.body;
  return exit_code(r.status);
}

void print_report(const Globals& g, const service::JobReport& r) {
  if (g.json_output) std::cout << service::to_json(r).dump(2) << "\n";
  else std::cout << service::to_text(r);
}

json read_json_arg(const std::string& arg) {
  const bool inline_doc = !arg.empty() && (arg.front() == '{' || arg.front() == '[');
  return service::parse_body(inline_doc ? arg : util::read_file(arg));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dreamxi: fantasy cricket projections and roster optimisation"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--data-dir", g.data_dir, "Artifact directory (cache, tables, models, reports)");
  app.add_option("--config", g.config, "YAML config file")->check(CLI::ExistingFile);
  app.add_option("--seed", g.seed, "Seed for training and synthetic data");
  app.add_flag("--json", g.json_output, "Print stage reports as JSON");

  // ingest
  auto* ingest_cmd = app.add_subcommand("ingest", "Parse a cricsheet corpus into the JSON cache");
  std::string root, cache_out, only_format;
  ingest_cmd->add_option("--root", root, "Corpus root holding odi/, ipl/, t20/")->required();
  ingest_cmd->add_option("--out", cache_out, "Cache directory (default <data-dir>/cache)");
  ingest_cmd->add_option("--format", only_format, "Restrict to one format")->check(CLI::IsMember({"odi", "ipl", "t20"}));

  // build
  auto* build_cmd = app.add_subcommand("build", "Engineer performance tables from the cache or a corpus");
  std::string build_cache, rubric, tables_out;
  build_cmd->add_option("--cache", build_cache, "Cache or corpus directory (default <data-dir>/cache)");
  build_cmd->add_option("--rubric", rubric, "Scoring rubric overrides (YAML)")->check(CLI::ExistingFile);
  build_cmd->add_option("--out", tables_out, "Tables directory (default <data-dir>/tables)");

  // train
  auto* train_cmd = app.add_subcommand("train", "Train a regressor on the tables");
  std::string train_tables, discipline = "both", kind, model_out;
  std::optional<double> split;
  std::optional<int> n_trees, min_leaf;
  train_cmd->add_option("--tables", train_tables, "Tables directory");
  train_cmd->add_option("--discipline", discipline, "batting, bowling or both")
      ->check(CLI::IsMember({"batting", "bowling", "both"}));
  train_cmd->add_option("--kind", kind, "etr or rf")->check(CLI::IsMember({"etr", "rf", "extra_trees", "random_forest"}));
  train_cmd->add_option("--split", split, "Training fraction");
  train_cmd->add_option("--trees", n_trees, "Number of trees");
  train_cmd->add_option("--min-samples-leaf", min_leaf, "Minimum rows per leaf");
  train_cmd->add_option("--out", model_out, "Model file (single discipline only)");
  train_cmd->add_option("--seed", g.seed, "Training seed");

  // evaluate
  auto* eval_cmd = app.add_subcommand("evaluate", "Re-score a model on its held-out split");
  std::string eval_model, eval_tables;
  eval_cmd->add_option("--model", eval_model, "Model file")->required();
  eval_cmd->add_option("--tables", eval_tables, "Tables directory");

  // project
  auto* project_cmd = app.add_subcommand("project", "Project a player's fantasy score for a fixture");
  std::string p_player, p_format, p_team1, p_team2, p_venue, p_kmin, p_tables, p_bat, p_bowl;
  project_cmd->add_option("--player", p_player)->required();
  project_cmd->add_option("--format", p_format)->required();
  project_cmd->add_option("--team1", p_team1, "The player's side")->required();
  project_cmd->add_option("--team2", p_team2, "The opposition")->required();
  project_cmd->add_option("--venue", p_venue)->required();
  project_cmd->add_option("--k-min", p_kmin, "Minimum rows before relaxing stops, or 'unlimited'");
  project_cmd->add_option("--tables", p_tables, "Tables directory");
  project_cmd->add_option("--bat-model", p_bat, "Batting model file");
  project_cmd->add_option("--bowl-model", p_bowl, "Bowling model file");

  // recommend
  auto* rec_cmd = app.add_subcommand("recommend", "Pick the fantasy XI");
  std::string r_cards, r_request, r_method, r_kmin;
  std::optional<double> r_budget;
  std::optional<int> r_size, r_max;
  std::vector<std::string> r_lock, r_exclude;
  std::string f_team1, f_team2, f_format, f_venue;
  bool r_estimate = false;
  rec_cmd->add_option("--cards", r_cards, "Card CSV: " + std::string(optimizer::kCardHeader))
      ->check(CLI::ExistingFile);
  rec_cmd->add_option("--request", r_request, "Request JSON (file or inline); flags override its fields");
  rec_cmd->add_option("--budget", r_budget);
  rec_cmd->add_option("--size", r_size, "Roster size");
  rec_cmd->add_option("--max-per-team", r_max);
  rec_cmd->add_option("--method", r_method)->check(CLI::IsMember({"exact", "greedy", "brute", "brute_force"}));
  rec_cmd->add_option("--lock", r_lock, "Players that must be picked");
  rec_cmd->add_option("--exclude", r_exclude, "Players that must not be picked");
  rec_cmd->add_option("--team1", f_team1, "Fixture side one");
  rec_cmd->add_option("--team2", f_team2, "Fixture side two");
  rec_cmd->add_option("--format", f_format, "Fixture format");
  rec_cmd->add_option("--venue", f_venue, "Fixture venue");
  rec_cmd->add_flag("--estimate-credits", r_estimate, "Price cards without a credit from score history");
  rec_cmd->add_option("--k-min", r_kmin, "Projection k_min for projected cards");

  // insights
  auto* ins_cmd = app.add_subcommand("insights", "Print insight series for a player or team");
  std::string ins_scope, ins_name;
  ins_cmd->add_option("scope", ins_scope, "player or team")->required()->check(CLI::IsMember({"player", "team"}));
  ins_cmd->add_option("name", ins_name)->required();

  auto* teams_cmd = app.add_subcommand("teams", "List teams in the tables");
  auto* players_cmd = app.add_subcommand("players", "List a team's players");
  std::string pl_team;
  players_cmd->add_option("--team", pl_team)->required();

  // serve
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP JSON service");
  std::optional<std::string> host;
  std::optional<int> port;
  serve_cmd->add_option("--host", host);
  serve_cmd->add_option("--port", port);

  // synth
  auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic cricsheet corpus");
  std::string synth_out;
  std::size_t synth_matches = 100;
  std::vector<std::string> synth_formats{"t20"};
  synth_cmd->add_option("--out", synth_out, "Corpus root")->required();
  synth_cmd->add_option("--matches", synth_matches);
  synth_cmd->add_option("--formats", synth_formats)->check(CLI::IsMember({"odi", "ipl", "t20"}));

  auto* config_cmd = app.add_subcommand("config", "Print the default config file");

  CLI11_PARSE(app, argc, argv);

  try {
    auto cfg = resolve_config(g);

    if (*config_cmd) {
      std::cout << service::default_config_yaml();
      return 0;
    }

    if (*ingest_cmd) {
      if (!cache_out.empty()) cfg.cache_override = cache_out;
      ingest::ScanOptions opts;
      if (!only_format.empty()) opts.only = parse_format(only_format);
      print_report(g, service::run_ingest(cfg, root, opts));
      return 0;
    }

    if (*build_cmd) {
      if (!rubric.empty()) cfg.rubric_path = rubric;
      if (!tables_out.empty()) cfg.tables_override = tables_out;
      std::optional<std::filesystem::path> source;
      if (!build_cache.empty()) source = build_cache;
      print_report(g, service::run_build(cfg, source));
      return 0;
    }

    if (*train_cmd) {
      if (!kind.empty()) cfg.forest.kind = learner::parse_forest_kind(kind);
      if (n_trees) cfg.forest.n_trees = *n_trees;
      if (min_leaf) cfg.forest.min_samples_leaf = *min_leaf;
      if (g.seed) cfg.forest.seed = *g.seed;
      cfg.forest.validate();
      if (discipline == "both" && !model_out.empty())
        throw Error(ErrorCode::InvalidInput, "--out needs --discipline batting or bowling");
      std::vector<dataset::Discipline> ds;
      if (discipline != "bowling") ds.push_back(dataset::Discipline::batting);
      if (discipline != "batting") ds.push_back(dataset::Discipline::bowling);
      for (auto d : ds) {
        service::TrainRequest req;
        req.discipline = d;
        req.tables_dir = train_tables.empty() ? cfg.tables_dir() : std::filesystem::path(train_tables);
        req.out = model_out.empty() ? cfg.model_path(d) : std::filesystem::path(model_out);
        req.forest = cfg.forest;
        req.split_ratio = split.value_or(cfg.split_ratio);
        const auto report = service::run_train(cfg, req);
        if (g.json_output) print_report(g, report);
        else std::cout << report.detail["eval"].dump(2) << "\n";
      }
      return 0;
    }

    if (*eval_cmd) {
      const auto report =
          service::evaluate_model_file(eval_model, eval_tables.empty() ? cfg.tables_dir() : std::filesystem::path(eval_tables));
      std::cout << learner::to_json(report).dump(2) << "\n";
      return 0;
    }

    if (!p_tables.empty()) cfg.tables_override = p_tables;
    if (!p_bat.empty()) cfg.batting_model_override = p_bat;
    if (!p_bowl.empty()) cfg.bowling_model_override = p_bowl;
    service::ArtifactCache cache(cfg);
    service::Core core(cache);

    if (*project_cmd) {
      json req = {{"player", p_player}, {"format", p_format}, {"team1", p_team1}, {"team2", p_team2}, {"venue", p_venue}};
      if (!p_kmin.empty()) {
        if (p_kmin == "unlimited") req["k_min"] = p_kmin;
        else req["k_min"] = util::parse_int(p_kmin, "--k-min");
      }
      return emit(core.project(req.dump()));
    }

    if (*rec_cmd) {
      json req = r_request.empty() ? json::object() : read_json_arg(r_request);
      if (!r_cards.empty()) {
        json cards = json::array();
        for (const auto& c : optimizer::parse_card_csv(util::read_file(r_cards))) cards.push_back(service::to_json(c));
        req["cards"] = cards;
      }
      if (!f_team1.empty() || !f_team2.empty() || !f_format.empty() || !f_venue.empty())
        req["fixture"] = {{"team1", f_team1}, {"team2", f_team2}, {"format", f_format}, {"venue", f_venue}};
      if (r_budget || r_size || r_max) {
        auto& c = req["constraints"];
        if (c.is_null()) c = json::object();
        if (r_budget) c["budget"] = *r_budget;
        if (r_size) c["roster_size"] = *r_size;
        if (r_max) c["max_per_team"] = *r_max;
      }
      if (!r_method.empty()) req["method"] = r_method;
      if (!r_lock.empty()) req["lock"] = r_lock;
      if (!r_exclude.empty()) req["exclude"] = r_exclude;
      if (r_estimate) req["estimate_credits"] = true;
      if (!r_kmin.empty()) {
        if (r_kmin == "unlimited") req["k_min"] = r_kmin;
        else req["k_min"] = util::parse_int(r_kmin, "--k-min");
      }
      return emit(core.recommend(req.dump()));
    }

    if (*ins_cmd) return emit(ins_scope == "player" ? core.player_insights(ins_name) : core.team_insights(ins_name));
    if (*teams_cmd) return emit(core.teams());
    if (*players_cmd) return emit(core.players(pl_team));

    if (*serve_cmd) {
      if (host) cfg.service.host = *host;
      if (port) cfg.service.port = *port;
      // Fail fast on missing artifacts instead of on the first request.
      cache.get();
      httplib::Server server;
      if (cfg.service.threads > 0) {
        const auto n = static_cast<std::size_t>(cfg.service.threads);
        server.new_task_queue = [n] { return new httplib::ThreadPool(n); };
      }
      service::install_routes(server, core);
      static httplib::Server* running = &server;
      std::signal(SIGINT, [](int) { running->stop(); });
      std::signal(SIGTERM, [](int) { running->stop(); });
      std::cerr << "listening on " << cfg.service.host << ":" << cfg.service.port << "\n";
      if (!server.listen(cfg.service.host, cfg.service.port))
        throw Error(ErrorCode::Io, "cannot listen on " + cfg.service.host + ":" + std::to_string(cfg.service.port));
      return 0;
    }

    if (*synth_cmd) {
      ingest::SyntheticConfig sc;
      sc.n_matches = synth_matches;
      sc.seed = g.seed.value_or(sc.seed);
      sc.formats.clear();
      for (const auto& f : synth_formats) sc.formats.push_back(parse_format(f));
      const auto matches = ingest::generate_corpus(sc);
      for (const auto& m : matches)
        util::write_file(std::filesystem::path(synth_out) / std::string(directory_name(m.meta.format)) /
                             (m.meta.match_id + ".yaml"),
                         ingest::to_cricsheet_yaml(m));
      std::cout << "wrote " << matches.size() << " matches to " << synth_out << "\n";
      return 0;
    }
  } catch (const Error& e) {
    if (g.json_output) std::cout << service::fail(e.code(), e.detail()).body;
    else std::cerr << "error: " << e.what() << "\n";
    return exit_code(service::http_status(e.code()));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
