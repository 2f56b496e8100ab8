#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <yaml-cpp/yaml.h>

#include "dreamxi/dataset/rubric.hpp"
#include "dreamxi/learner/forest.hpp"
#include "dreamxi/learner/model.hpp"
#include "dreamxi/optimizer/lineup.hpp"
#include "dreamxi/predictor/relax.hpp"
#include "dreamxi/util/text.hpp"

namespace dreamxi::service {

struct ServiceSettings {
  std::string host = "127.0.0.1";
  int port = 8080;
  int threads = 0;
};

struct AppConfig {
  std::filesystem::path data_dir = "data";
  /// Optional rubric overrides; empty uses the default table.
  std::filesystem::path rubric_path;
  learner::ForestConfig forest;
  double split_ratio = learner::kDefaultSplitRatio;
  predictor::RelaxOptions relax;
  optimizer::RosterConstraints roster;
  optimizer::Method method = optimizer::Method::exact_dp;
  std::size_t credit_window = 5;
  std::size_t insight_window = 5;
  ServiceSettings service;

  /// Per-artifact locations; empty ones fall back to the data_dir layout.
  std::filesystem::path cache_override;
  std::filesystem::path tables_override;
  std::filesystem::path batting_model_override;
  std::filesystem::path bowling_model_override;

  std::filesystem::path cache_dir() const { return or_default(cache_override, data_dir / "cache"); }
  std::filesystem::path tables_dir() const { return or_default(tables_override, data_dir / "tables"); }
  std::filesystem::path models_dir() const { return data_dir / "models"; }
  std::filesystem::path reports_dir() const { return data_dir / "reports"; }
  std::filesystem::path model_path(dataset::Discipline d) const {
    const auto& o = d == dataset::Discipline::batting ? batting_model_override : bowling_model_override;
    return or_default(o, models_dir() / (std::string(to_string(d)) + ".fxi"));
  }

  dataset::ScoringRubric rubric() const {
    return rubric_path.empty() ? dataset::default_rubric() : dataset::load_rubric(rubric_path);
  }

 private:
  static std::filesystem::path or_default(const std::filesystem::path& p, std::filesystem::path fallback) {
    return p.empty() ? std::move(fallback) : p;
  }
};

namespace detail {

template <class T>
void read(const YAML::Node& n, const char* key, T& out) {
  if (!n || !n[key]) return;
  try {
    out = n[key].as<T>();
  } catch (const YAML::Exception& e) {
    throw Error(ErrorCode::InvalidConfig, std::string("config key '") + key + "': " + e.what());
  }
}

inline AppConfig overlay(const YAML::Node& root, const std::filesystem::path& base) {
  AppConfig c;
  if (!root || root.IsNull()) return c;
  if (!root.IsMap()) throw Error(ErrorCode::InvalidConfig, "config must be a mapping");
  auto resolve = [&](const std::string& p) { return p.empty() || base.empty() ? std::filesystem::path(p) : base / p; };
  std::string s;
  if (root["data_dir"]) {
    detail::read(root, "data_dir", s);
    c.data_dir = resolve(s);
  }
  if (root["rubric"]) {
    s.clear();
    detail::read(root, "rubric", s);
    c.rubric_path = resolve(s);
  }
  if (const auto l = root["learner"]) {
    if (l["kind"]) c.forest.kind = learner::parse_forest_kind(l["kind"].as<std::string>());
    detail::read(l, "n_trees", c.forest.n_trees);
    detail::read(l, "min_samples_leaf", c.forest.min_samples_leaf);
    detail::read(l, "max_features", c.forest.max_features);
    detail::read(l, "seed", c.forest.seed);
    detail::read(l, "split_ratio", c.split_ratio);
  }
  if (const auto p = root["predictor"]) {
    if (p["k_min"]) {
      const auto v = p["k_min"].as<std::string>();
      if (v == "unlimited") c.relax.k_min = std::nullopt;
      else c.relax.k_min = static_cast<std::size_t>(util::parse_int(v, "predictor.k_min"));
    }
    if (p["relaxation_order"]) {
      const auto names = p["relaxation_order"].as<std::vector<std::string>>();
      if (names.size() != c.relax.order.size())
        throw Error(ErrorCode::InvalidConfig, "relaxation_order must have 4 entries");
      for (std::size_t i = 0; i < names.size(); ++i) c.relax.order[i] = predictor::parse_constraint(names[i]);
    }
  }
  if (const auto o = root["optimizer"]) {
    detail::read(o, "budget", c.roster.budget);
    detail::read(o, "roster_size", c.roster.roster_size);
    detail::read(o, "max_per_team", c.roster.max_per_team);
    if (o["method"]) c.method = optimizer::parse_method(o["method"].as<std::string>());
  }
  if (const auto cr = root["credits"]) detail::read(cr, "window", c.credit_window);
  if (const auto in = root["insights"]) detail::read(in, "window", c.insight_window);
  if (const auto sv = root["service"]) {
    detail::read(sv, "host", c.service.host);
    detail::read(sv, "port", c.service.port);
    detail::read(sv, "threads", c.service.threads);
  }
  c.forest.validate();
  predictor::validate_order(c.relax.order);
  c.roster.validate();
  if (c.relax.k_min && *c.relax.k_min == 0) throw Error(ErrorCode::InvalidConfig, "k_min must be >= 1");
  if (!(c.split_ratio > 0 && c.split_ratio < 1)) throw Error(ErrorCode::InvalidConfig, "split_ratio must lie in (0, 1)");
  if (c.credit_window == 0 || c.insight_window == 0) throw Error(ErrorCode::InvalidConfig, "windows must be >= 1");
  return c;
}

}  // namespace detail

/// Overlays a YAML document on the defaults. Relative paths resolve against
/// `base` (the config file's directory).
inline AppConfig config_from_yaml(const std::string& text, const std::filesystem::path& base = {}) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw Error(ErrorCode::InvalidConfig, std::string("config is not valid YAML: ") + e.what());
  }
  try {
    return detail::overlay(root, base);
  } catch (const YAML::Exception& e) {
    throw Error(ErrorCode::InvalidConfig, e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidConfig) throw;
    throw Error(ErrorCode::InvalidConfig, e.detail());
  }
}

inline AppConfig load_config(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw Error(ErrorCode::InvalidConfig, "config file not found: " + path.string());
  return config_from_yaml(util::read_file(path), path.parent_path());
}

inline std::string default_config_yaml() {
  return R"(# dreamxi configuration. Every key is optional.
data_dir: data
rubric: ""              # YAML rubric overrides; empty keeps the default table
learner:
  kind: extra_trees     # or random_forest
  n_trees: 100
  min_samples_leaf: 2
  max_features: 0       # 0 = ceil(sqrt(columns))
  seed: 42
  split_ratio: 0.7
predictor:
  k_min: 5              # or "unlimited"
  relaxation_order: [venue, team2, team1, format]
optimizer:
  budget: 100
  roster_size: 11
  max_per_team: 7
  method: exact         # exact, greedy or brute_force
credits:
  window: 5
insights:
  window: 5
service:
  host: 127.0.0.1
  port: 8080
  threads: 0
)";
}

}  // namespace dreamxi::service
