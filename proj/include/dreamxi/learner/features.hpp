#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "dreamxi/dataset/performance.hpp"
#include "dreamxi/learner/codebook.hpp"
#include "dreamxi/util/rng.hpp"

namespace dreamxi::learner {

inline constexpr std::size_t kBattingWidth = 13;
inline constexpr std::size_t kBowlingWidth = 12;

inline const std::vector<std::string>& column_names(dataset::Discipline d) {
  static const std::vector<std::string> bat = {"batsman", "MF",  "team1", "team2", "venue", "runs", "balls",
                                               "4s",      "6s",  "50s",   "100s",  "ducks", "SR"};
  static const std::vector<std::string> bowl = {"bowler", "MF",   "team1",    "team2", "venue", "overs",
                                                "runs",   "maidens", "wicket", "econrate", "4w", "5w"};
  return d == dataset::Discipline::batting ? bat : bowl;
}

constexpr std::size_t width_of(dataset::Discipline d) {
  return d == dataset::Discipline::batting ? kBattingWidth : kBowlingWidth;
}

/// Row-major numeric matrix with one target per row.
struct FeatureMatrix {
  std::size_t cols = 0;
  std::vector<double> values;
  std::vector<double> targets;

  FeatureMatrix() = default;
  explicit FeatureMatrix(std::size_t width) : cols(width) {}

  std::size_t rows() const { return targets.size(); }
  std::span<const double> row(std::size_t i) const { return {values.data() + i * cols, cols}; }
  double at(std::size_t i, std::size_t j) const { return values[i * cols + j]; }

  void push(std::span<const double> features, double target) {
    if (features.size() != cols)
      throw Error(ErrorCode::WidthMismatch,
                  "row has " + std::to_string(features.size()) + " columns, expected " + std::to_string(cols));
    values.insert(values.end(), features.begin(), features.end());
    targets.push_back(target);
  }

  FeatureMatrix subset(const std::vector<std::size_t>& idx) const {
    FeatureMatrix out(cols);
    out.values.reserve(idx.size() * cols);
    out.targets.reserve(idx.size());
    for (auto i : idx) out.push(row(i), targets[i]);
    return out;
  }
};

template <class Row>
std::array<double, kCategoryCount> encode_categories(const Row& r, const Codebook& book) {
  const auto labels = category_labels(r);
  std::array<double, kCategoryCount> out{};
  for (std::size_t c = 0; c < kCategoryCount; ++c)
    out[c] = book.code(static_cast<Category>(c), labels[c]);
  return out;
}

inline std::vector<double> encode_row(const dataset::BattingPerformance& r, const Codebook& book) {
  const auto cat = encode_categories(r, book);
  std::vector<double> v(cat.begin(), cat.end());
  v.insert(v.end(), {double(r.runs), double(r.balls), double(r.fours), double(r.sixes), double(r.fifty_flag),
                     double(r.hundred_flag), double(r.duck_flag), r.strike_rate});
  return v;
}

inline std::vector<double> encode_row(const dataset::BowlingPerformance& r, const Codebook& book) {
  const auto cat = encode_categories(r, book);
  std::vector<double> v(cat.begin(), cat.end());
  v.insert(v.end(), {double(r.overs), double(r.runs_conceded), double(r.maidens), double(r.wickets),
                     r.economy_rate, double(r.four_wicket_flag), double(r.five_wicket_flag)});
  return v;
}

template <class Row>
constexpr dataset::Discipline discipline_of() {
  return std::is_same_v<Row, dataset::BattingPerformance> ? dataset::Discipline::batting
                                                          : dataset::Discipline::bowling;
}

template <class Row>
FeatureMatrix encode(const std::vector<Row>& rows, const Codebook& book) {
  FeatureMatrix m(width_of(discipline_of<Row>()));
  m.values.reserve(rows.size() * m.cols);
  m.targets.reserve(rows.size());
  for (const auto& r : rows) m.push(encode_row(r, book), r.fantasy_score);
  return m;
}

/// Categorical labels of an encoded row, in column order.
inline CategoryLabels decode_labels(std::span<const double> row, const Codebook& book) {
  CategoryLabels out;
  for (std::size_t c = 0; c < kCategoryCount; ++c)
    out[c] = book.label(static_cast<Category>(c), static_cast<int>(row[c]));
  return out;
}

struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Seeded shuffle of 0..n-1; the first floor(ratio * n) indices train, the
/// rest test. Both sides keep at least one row. Each side is returned sorted.
inline Split train_test_split(std::size_t n, double ratio, std::uint64_t seed) {
  if (!(ratio > 0 && ratio < 1)) throw Error(ErrorCode::InvalidConfig, "split ratio must lie in (0, 1)");
  if (n < 2) throw Error(ErrorCode::TooFewRows, "a split needs at least 2 rows, got " + std::to_string(n));
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  util::Rng rng(util::derive_seed(seed, 0x5917));
  rng.shuffle(idx);
  auto k = static_cast<std::size_t>(std::floor(ratio * static_cast<double>(n) + 1e-9));
  k = std::clamp<std::size_t>(k, 1, n - 1);
  Split s;
  s.train.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k));
  s.test.assign(idx.begin() + static_cast<std::ptrdiff_t>(k), idx.end());
  std::sort(s.train.begin(), s.train.end());
  std::sort(s.test.begin(), s.test.end());
  return s;
}

}  // namespace dreamxi::learner
