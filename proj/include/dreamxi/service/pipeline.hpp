#pragma once

#include <chrono>
#include <ctime>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dreamxi/dataset/store.hpp"
#include "dreamxi/ingest/corpus.hpp"
#include "dreamxi/ingest/json_io.hpp"
#include "dreamxi/learner/model.hpp"
#include "dreamxi/service/config.hpp"
#include "dreamxi/service/json.hpp"

namespace dreamxi::service {

enum class Stage { ingest, build, train, evaluate, project, recommend };

constexpr std::string_view to_string(Stage s) {
  switch (s) {
    case Stage::ingest: return "ingest";
    case Stage::build: return "build";
    case Stage::train: return "train";
    case Stage::evaluate: return "evaluate";
    case Stage::project: return "project";
    case Stage::recommend: return "recommend";
  }
  return "?";
}

struct JobReport {
  using Clock = std::chrono::system_clock;
  Stage stage{};
  Clock::time_point started;
  Clock::time_point finished;
  std::map<std::string, long long> counts;
  std::vector<std::string> warnings;
  /// Stage-specific payload, e.g. an evaluation report.
  json detail = nullptr;
};

inline std::string iso_timestamp(JobReport::Clock::time_point t) {
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(t.time_since_epoch()).count();
  const std::time_t secs = static_cast<std::time_t>(ms / 1000);
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
  char out[40];
  std::snprintf(out, sizeof out, "%s.%03lldZ", buf, static_cast<long long>(ms % 1000));
  return out;
}

inline json to_json(const JobReport& r) {
  return {{"stage", std::string(to_string(r.stage))},
          {"started", iso_timestamp(r.started)},
          {"finished", iso_timestamp(r.finished)},
          {"counts", r.counts},
          {"warnings", r.warnings},
          {"detail", r.detail}};
}

inline std::string to_text(const JobReport& r) {
  std::string out = std::string(to_string(r.stage)) + ":";
  for (const auto& [k, v] : r.counts) out += " " + k + "=" + std::to_string(v);
  out += "\n";
  for (const auto& w : r.warnings) out += "  warning: " + w + "\n";
  return out;
}

namespace detail {

template <class Fn>
JobReport timed(Stage stage, Fn&& fn) {
  JobReport r;
  r.stage = stage;
  r.started = JobReport::Clock::now();
  fn(r);
  r.finished = std::max(r.started, JobReport::Clock::now());
  return r;
}

inline void save_report(const AppConfig& cfg, const JobReport& r, const std::string& suffix = "") {
  const auto name = std::string(to_string(r.stage)) + (suffix.empty() ? "" : "-" + suffix) + ".json";
  util::write_file(cfg.reports_dir() / name, to_json(r).dump(2) + "\n");
}

}  // namespace detail

/// Parses a cricsheet corpus and writes one cached JSON file per match.
inline JobReport run_ingest(const AppConfig& cfg, const std::filesystem::path& corpus_root,
                            const ingest::ScanOptions& opts = {}) {
  auto report = detail::timed(Stage::ingest, [&](JobReport& r) {
    const auto scan = ingest::scan_and_load(corpus_root, opts);
    for (const auto& m : scan.matches) ingest::write_cached_match(cfg.cache_dir(), m);
    r.counts["matches"] = static_cast<long long>(scan.matches.size());
    r.counts["failures"] = static_cast<long long>(scan.index.failures.size());
    for (auto f : kAllFormats) r.counts[std::string(directory_name(f))] = static_cast<long long>(scan.index.count(f));
    for (const auto& f : scan.index.failures) r.warnings.push_back(f.path.string() + ": " + f.message);
    r.detail = {{"cache_dir", cfg.cache_dir().string()}};
  });
  detail::save_report(cfg, report);
  return report;
}

/// Builds the performance tables from a corpus (default: the ingest cache).
inline JobReport run_build(const AppConfig& cfg, std::optional<std::filesystem::path> source = std::nullopt) {
  auto report = detail::timed(Stage::build, [&](JobReport& r) {
    const auto root = source.value_or(cfg.cache_dir());
    const auto result = dataset::build_tables(ingest::scan_corpus(root), cfg.rubric());
    const auto fp = dataset::save_tables(result.store, cfg.tables_dir());
    r.counts["batting_rows"] = static_cast<long long>(result.store.batting.size());
    r.counts["bowling_rows"] = static_cast<long long>(result.store.bowling.size());
    r.counts["failures"] = static_cast<long long>(result.failures.size());
    for (const auto& f : result.failures) r.warnings.push_back(f.path.string() + ": " + f.message);
    r.detail = {{"tables_fingerprint", fp}, {"tables_dir", cfg.tables_dir().string()}};
  });
  detail::save_report(cfg, report);
  return report;
}

struct TrainRequest {
  dataset::Discipline discipline = dataset::Discipline::batting;
  std::filesystem::path tables_dir;
  std::filesystem::path out;
  learner::ForestConfig forest;
  double split_ratio = learner::kDefaultSplitRatio;
};

inline JobReport run_train(const AppConfig& cfg, const TrainRequest& req) {
  auto report = detail::timed(Stage::train, [&](JobReport& r) {
    const auto tables = dataset::load_tables(req.tables_dir);
    const auto out = learner::train_model(tables.store, req.discipline, req.forest, req.split_ratio, tables.fingerprint);
    learner::save_model(out.model, req.out);
    r.counts["n_train"] = static_cast<long long>(out.report.n_train);
    r.counts["n_test"] = static_cast<long long>(out.report.n_test);
    if (out.model.forest.degenerate) r.warnings.push_back("all training targets are identical");
    r.detail = {{"model", req.out.string()},
                {"discipline", std::string(to_string(req.discipline))},
                {"config", learner::to_json(req.forest)},
                {"eval", learner::to_json(out.report)}};
  });
  detail::save_report(cfg, report, std::string(to_string(req.discipline)));
  return report;
}

inline learner::EvalReport evaluate_model_file(const std::filesystem::path& model_path,
                                               const std::filesystem::path& tables_dir) {
  const auto model = learner::load_model(model_path);
  const auto tables = dataset::load_tables(tables_dir);
  if (!model.info.tables_fingerprint.empty() && model.info.tables_fingerprint != tables.fingerprint)
    throw Error(ErrorCode::ArtifactMismatch, "model was trained on tables " + model.info.tables_fingerprint +
                                                 ", " + tables_dir.string() + " holds " + tables.fingerprint);
  return learner::evaluate_model(model, tables.store);
}

}  // namespace dreamxi::service
