#pragma once

#include <array>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dreamxi/dataset/performance.hpp"
#include "dreamxi/error.hpp"

namespace dreamxi::learner {

enum class UnknownPolicy { reject, reserve_code };

constexpr std::string_view to_string(UnknownPolicy p) {
  return p == UnknownPolicy::reject ? "reject" : "reserve_code";
}

inline UnknownPolicy parse_unknown_policy(std::string_view s) {
  if (s == "reject") return UnknownPolicy::reject;
  if (s == "reserve_code") return UnknownPolicy::reserve_code;
  throw Error(ErrorCode::InvalidConfig, "unknown label policy '" + std::string(s) + "'");
}

/// The categorical columns, in feature order.
enum class Category { player, format, team1, team2, venue };
inline constexpr std::size_t kCategoryCount = 5;
inline constexpr std::array<const char*, kCategoryCount> kCategoryNames = {"player", "format", "team1",
                                                                           "team2", "venue"};

using CategoryLabels = std::array<std::string, kCategoryCount>;

template <class Row>
CategoryLabels category_labels(const Row& r) {
  return {r.player(), std::string(to_string(r.ctx.format)), r.ctx.team1, r.ctx.team2, r.ctx.venue};
}

/// Label <-> dense integer code, per categorical column. Codes follow the
/// lexicographic order of the labels.
class Codebook {
 public:
  Codebook() = default;

  /// `labels[c]` must be sorted and unique.
  explicit Codebook(std::array<std::vector<std::string>, kCategoryCount> labels,
                    UnknownPolicy policy = UnknownPolicy::reject)
      : labels_(std::move(labels)), policy_(policy) {
    for (std::size_t c = 0; c < kCategoryCount; ++c) {
      for (std::size_t i = 0; i < labels_[c].size(); ++i) {
        if (!codes_[c].emplace(labels_[c][i], static_cast<int>(i)).second)
          throw Error(ErrorCode::InvalidInput, std::string("duplicate label in ") + kCategoryNames[c]);
        if (i > 0 && !(labels_[c][i - 1] < labels_[c][i]))
          throw Error(ErrorCode::InvalidInput, std::string("unsorted labels in ") + kCategoryNames[c]);
      }
    }
  }

  UnknownPolicy policy() const { return policy_; }
  void set_policy(UnknownPolicy p) { policy_ = p; }

  std::size_t size(Category c) const { return labels_[idx(c)].size(); }
  const std::vector<std::string>& labels(Category c) const { return labels_[idx(c)]; }

  bool contains(Category c, const std::string& label) const { return codes_[idx(c)].count(label) > 0; }

  /// Unknown labels map to size(c) under reserve_code.
  int code(Category c, const std::string& label) const {
    const auto& m = codes_[idx(c)];
    if (auto it = m.find(label); it != m.end()) return it->second;
    if (policy_ == UnknownPolicy::reserve_code) return static_cast<int>(labels_[idx(c)].size());
    throw Error(ErrorCode::UnknownLabel,
                std::string(kCategoryNames[idx(c)]) + " '" + label + "' is not in the codebook");
  }

  const std::string& label(Category c, int code) const {
    const auto& l = labels_[idx(c)];
    if (code < 0 || static_cast<std::size_t>(code) >= l.size())
      throw Error(ErrorCode::UnknownLabel,
                  std::string(kCategoryNames[idx(c)]) + " code " + std::to_string(code) + " is out of range");
    return l[static_cast<std::size_t>(code)];
  }

  const std::array<std::vector<std::string>, kCategoryCount>& all_labels() const { return labels_; }

  friend bool operator==(const Codebook& a, const Codebook& b) {
    return a.labels_ == b.labels_ && a.policy_ == b.policy_;
  }

 private:
  static std::size_t idx(Category c) { return static_cast<std::size_t>(c); }

  std::array<std::vector<std::string>, kCategoryCount> labels_;
  std::array<std::map<std::string, int>, kCategoryCount> codes_;
  UnknownPolicy policy_ = UnknownPolicy::reject;
};

template <class Row>
Codebook fit_codebook(const std::vector<Row>& rows, UnknownPolicy policy = UnknownPolicy::reject) {
  if (rows.empty()) throw Error(ErrorCode::EmptyInput, "cannot fit a codebook on zero rows");
  std::array<std::set<std::string>, kCategoryCount> seen;
  for (const auto& r : rows) {
    const auto labels = category_labels(r);
    for (std::size_t c = 0; c < kCategoryCount; ++c) seen[c].insert(labels[c]);
  }
  std::array<std::vector<std::string>, kCategoryCount> sorted;
  for (std::size_t c = 0; c < kCategoryCount; ++c) sorted[c].assign(seen[c].begin(), seen[c].end());
  return Codebook(std::move(sorted), policy);
}

}  // namespace dreamxi::learner
