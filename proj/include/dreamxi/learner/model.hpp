#pragma once

#include <bit>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dreamxi/dataset/store.hpp"
#include "dreamxi/learner/codebook.hpp"
#include "dreamxi/learner/evaluate.hpp"
#include "dreamxi/learner/features.hpp"
#include "dreamxi/learner/forest.hpp"
#include "dreamxi/util/text.hpp"

namespace dreamxi::learner {

inline constexpr int kModelSchemaVersion = 1;
inline constexpr std::string_view kModelMagic = "FXI1";
inline constexpr double kDefaultSplitRatio = 0.7;

/// Where a model came from; enough to rebuild its train/test partition.
struct TrainingInfo {
  std::string tables_fingerprint;
  double split_ratio = kDefaultSplitRatio;
  std::size_t n_rows = 0;
  std::size_t n_train = 0;

  friend bool operator==(const TrainingInfo&, const TrainingInfo&) = default;
};

struct Model {
  dataset::Discipline discipline = dataset::Discipline::batting;
  Codebook codebook;
  Forest forest;
  TrainingInfo info;

  template <class Row>
  double predict(const Row& r) const {
    if (discipline_of<Row>() != discipline)
      throw Error(ErrorCode::WidthMismatch, "row discipline does not match the " +
                                                std::string(to_string(discipline)) + " model");
    return forest.predict(encode_row(r, codebook));
  }

  friend bool operator==(const Model&, const Model&) = default;
};

template <class Row>
const std::vector<Row>& discipline_rows(const dataset::PerformanceStore& store);
template <>
inline const std::vector<dataset::BattingPerformance>& discipline_rows(const dataset::PerformanceStore& s) {
  return s.batting.rows();
}
template <>
inline const std::vector<dataset::BowlingPerformance>& discipline_rows(const dataset::PerformanceStore& s) {
  return s.bowling.rows();
}

struct TrainOutcome {
  Model model;
  EvalReport report;
};

/// Fits the codebook on every row of the discipline, splits with the forest
/// seed, trains on the train side and scores the held-out side.
inline TrainOutcome train_model(const dataset::PerformanceStore& store, dataset::Discipline d,
                                const ForestConfig& cfg, double split_ratio = kDefaultSplitRatio,
                                std::string tables_fingerprint = {}, unsigned threads = 0) {
  auto run = [&](const auto& rows) {
    TrainOutcome out;
    out.model.discipline = d;
    out.model.codebook = fit_codebook(rows);
    const auto all = encode(rows, out.model.codebook);
    const auto split = train_test_split(all.rows(), split_ratio, cfg.seed);
    out.model.forest = train_forest(all.subset(split.train), cfg, threads);
    out.model.info = {std::move(tables_fingerprint), split_ratio, all.rows(), split.train.size()};
    out.report = evaluate(out.model.forest, all.subset(split.test));
    out.report.n_train = split.train.size();
    out.report.seed = cfg.seed;
    return out;
  };
  if (d == dataset::Discipline::batting) return run(store.batting.rows());
  return run(store.bowling.rows());
}

/// Re-derives the held-out partition recorded in the model and scores it.
inline EvalReport evaluate_model(const Model& model, const dataset::PerformanceStore& store) {
  auto run = [&](const auto& rows) {
    const auto all = encode(rows, model.codebook);
    if (all.rows() != model.info.n_rows)
      throw Error(ErrorCode::ArtifactMismatch, "tables hold " + std::to_string(all.rows()) +
                                                   " rows, the model was trained on " +
                                                   std::to_string(model.info.n_rows));
    const auto split = train_test_split(all.rows(), model.info.split_ratio, model.forest.config.seed);
    auto r = evaluate(model.forest, all.subset(split.test));
    r.n_train = split.train.size();
    r.seed = model.forest.config.seed;
    return r;
  };
  if (model.discipline == dataset::Discipline::batting) return run(store.batting.rows());
  return run(store.bowling.rows());
}

inline nlohmann::json to_json(const EvalReport& r) {
  nlohmann::json j;
  j["r2"] = r.r2 ? nlohmann::json(*r.r2) : nlohmann::json(nullptr);
  j["zero_variance"] = r.zero_variance;
  j["mae"] = r.mae;
  j["bucket_accuracy"] = r.bucket_accuracy;
  j["n_train"] = r.n_train;
  j["n_test"] = r.n_test;
  j["seed"] = r.seed;
  return j;
}

inline nlohmann::json to_json(const ForestConfig& c) {
  return {{"kind", std::string(to_string(c.kind))},
          {"n_trees", c.n_trees},
          {"min_samples_leaf", c.min_samples_leaf},
          {"max_features", c.max_features},
          {"seed", c.seed}};
}

inline ForestConfig forest_config_from_json(const nlohmann::json& j) {
  ForestConfig c;
  c.kind = parse_forest_kind(j.at("kind").get<std::string>());
  c.n_trees = j.at("n_trees").get<int>();
  c.min_samples_leaf = j.at("min_samples_leaf").get<int>();
  c.max_features = j.at("max_features").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  return c;
}

namespace detail {

inline void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
inline void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

class Reader {
 public:
  explicit Reader(std::string_view b) : b_(b) {}
  std::uint64_t u64() { return take(8); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(take(4)); }
  std::string_view bytes(std::size_t n) {
    need(n);
    auto s = b_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  bool done() const { return pos_ == b_.size(); }

 private:
  void need(std::size_t n) const {
    if (b_.size() - pos_ < n) throw Error(ErrorCode::SchemaMismatch, "model file is truncated");
  }
  std::uint64_t take(int n) {
    need(static_cast<std::size_t>(n));
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) v |= std::uint64_t(static_cast<unsigned char>(b_[pos_ + i])) << (8 * i);
    pos_ += static_cast<std::size_t>(n);
    return v;
  }
  std::string_view b_;
  std::size_t pos_ = 0;
};

// Preorder: i32 feature (-1 for a leaf) then f64 threshold or leaf value.
inline void write_subtree(std::string& out, const Tree& t, std::size_t i) {
  const auto& n = t.nodes[i];
  put_u32(out, static_cast<std::uint32_t>(n.feature));
  put_u64(out, std::bit_cast<std::uint64_t>(n.value));
  if (n.leaf()) return;
  write_subtree(out, t, i + 1);
  write_subtree(out, t, n.right);
}

inline void read_subtree(Reader& r, Tree& t, std::size_t width, std::size_t budget) {
  if (t.nodes.size() >= budget) throw Error(ErrorCode::SchemaMismatch, "tree blob overruns its node count");
  const std::size_t at = t.nodes.size();
  TreeNode n;
  n.feature = static_cast<std::int32_t>(r.u32());
  n.value = std::bit_cast<double>(r.u64());
  if (n.feature >= static_cast<int>(width) || n.feature < -1 || !std::isfinite(n.value))
    throw Error(ErrorCode::SchemaMismatch, "corrupt tree node");
  t.nodes.push_back(n);
  if (n.leaf()) return;
  read_subtree(r, t, width, budget);
  t.nodes[at].right = static_cast<std::uint32_t>(t.nodes.size());
  read_subtree(r, t, width, budget);
}

}  // namespace detail

inline nlohmann::json model_header(const Model& m) {
  nlohmann::json labels;
  for (std::size_t c = 0; c < kCategoryCount; ++c) labels[kCategoryNames[c]] = m.codebook.all_labels()[c];
  return {{"schema_version", kModelSchemaVersion},
          {"discipline", std::string(to_string(m.discipline))},
          {"config", to_json(m.forest.config)},
          {"codebook", {{"policy", std::string(to_string(m.codebook.policy()))}, {"labels", labels}}},
          {"width", m.forest.width},
          {"target_min", m.forest.target_min},
          {"target_max", m.forest.target_max},
          {"degenerate", m.forest.degenerate},
          {"tables_fingerprint", m.info.tables_fingerprint},
          {"split_ratio", m.info.split_ratio},
          {"n_rows", m.info.n_rows},
          {"n_train", m.info.n_train},
          {"n_trees", m.forest.trees.size()}};
}

/// "FXI1", u64 header length, JSON header, then per tree a u32 node count and
/// the preorder node blob. Integers are little-endian.
inline std::string serialize_model(const Model& m) {
  std::string out(kModelMagic);
  const std::string header = model_header(m).dump();
  detail::put_u64(out, header.size());
  out += header;
  for (const auto& t : m.forest.trees) {
    detail::put_u32(out, static_cast<std::uint32_t>(t.nodes.size()));
    detail::write_subtree(out, t, 0);
  }
  return out;
}

inline Model deserialize_model(std::string_view bytes) {
  if (bytes.substr(0, kModelMagic.size()) != kModelMagic)
    throw Error(ErrorCode::SchemaMismatch, "not a model file (bad magic)");
  detail::Reader r(bytes.substr(kModelMagic.size()));
  const auto header_len = r.u64();
  nlohmann::json h;
  try {
    h = nlohmann::json::parse(r.bytes(header_len));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::SchemaMismatch, std::string("model header: ") + e.what());
  }
  try {
    if (h.at("schema_version").get<int>() != kModelSchemaVersion)
      throw Error(ErrorCode::SchemaMismatch, "model schema_version " + h.at("schema_version").dump() +
                                                 " is not supported (expected " +
                                                 std::to_string(kModelSchemaVersion) + ")");
    Model m;
    m.discipline = dataset::parse_discipline(h.at("discipline").get<std::string>());
    std::array<std::vector<std::string>, kCategoryCount> labels;
    for (std::size_t c = 0; c < kCategoryCount; ++c)
      labels[c] = h.at("codebook").at("labels").at(kCategoryNames[c]).get<std::vector<std::string>>();
    m.codebook = Codebook(std::move(labels),
                          parse_unknown_policy(h.at("codebook").at("policy").get<std::string>()));
    m.forest.config = forest_config_from_json(h.at("config"));
    m.forest.width = h.at("width").get<std::size_t>();
    if (m.forest.width != width_of(m.discipline))
      throw Error(ErrorCode::SchemaMismatch, "model width does not match its discipline");
    m.forest.target_min = h.at("target_min").get<double>();
    m.forest.target_max = h.at("target_max").get<double>();
    m.forest.degenerate = h.at("degenerate").get<bool>();
    m.info.tables_fingerprint = h.at("tables_fingerprint").get<std::string>();
    m.info.split_ratio = h.at("split_ratio").get<double>();
    m.info.n_rows = h.at("n_rows").get<std::size_t>();
    m.info.n_train = h.at("n_train").get<std::size_t>();
    const auto n_trees = h.at("n_trees").get<std::size_t>();
    m.forest.trees.resize(n_trees);
    for (auto& t : m.forest.trees) {
      const std::size_t count = r.u32();
      t.nodes.reserve(count);
      detail::read_subtree(r, t, m.forest.width, count);
      if (t.nodes.size() != count) throw Error(ErrorCode::SchemaMismatch, "tree node count mismatch");
    }
    if (!r.done()) throw Error(ErrorCode::SchemaMismatch, "trailing bytes after the last tree");
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::SchemaMismatch, std::string("model header: ") + e.what());
  }
}

inline void save_model(const Model& m, const std::filesystem::path& path) {
  util::write_file(path, serialize_model(m));
}

inline Model load_model(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path))
    throw Error(ErrorCode::ArtifactsMissing, "model file not found: " + path.string());
  return deserialize_model(util::read_file(path));
}

}  // namespace dreamxi::learner
