#pragma once

#include <httplib.h>

#include "dreamxi/service/core.hpp"

namespace dreamxi::service {

inline void reply(httplib::Response& res, const Response& r) {
  res.status = r.status;
  res.set_content(r.body, "application/json");
}

/// Wires the JSON endpoints onto `server`. Every handler delegates to Core.
inline void install_routes(httplib::Server& server, Core& core) {
  server.Get("/health", [&](const httplib::Request&, httplib::Response& res) { reply(res, core.health()); });
  server.Get("/teams", [&](const httplib::Request&, httplib::Response& res) { reply(res, core.teams()); });
  server.Get("/players", [&](const httplib::Request& req, httplib::Response& res) {
    reply(res, core.players(req.get_param_value("team")));
  });
  server.Get(R"(/insights/player/(.+))", [&](const httplib::Request& req, httplib::Response& res) {
    reply(res, core.player_insights(req.matches[1]));
  });
  server.Get(R"(/insights/team/(.+))", [&](const httplib::Request& req, httplib::Response& res) {
    reply(res, core.team_insights(req.matches[1]));
  });
  server.Post("/project", [&](const httplib::Request& req, httplib::Response& res) {
    reply(res, core.project(req.body));
  });
  server.Post("/recommend", [&](const httplib::Request& req, httplib::Response& res) {
    reply(res, core.recommend(req.body));
  });
  server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.status == 404 && res.body.empty()) {
      const auto r = fail(ErrorCode::InvalidInput, "no such endpoint");
      res.set_content(r.body, "application/json");
    }
  });
}

}  // namespace dreamxi::service
