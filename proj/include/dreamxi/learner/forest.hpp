#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "dreamxi/error.hpp"
#include "dreamxi/learner/features.hpp"
#include "dreamxi/util/parallel.hpp"
#include "dreamxi/util/rng.hpp"

namespace dreamxi::learner {

enum class ForestKind { extra_trees, random_forest };

constexpr std::string_view to_string(ForestKind k) {
  return k == ForestKind::extra_trees ? "extra_trees" : "random_forest";
}

inline ForestKind parse_forest_kind(std::string_view s) {
  if (s == "extra_trees" || s == "etr") return ForestKind::extra_trees;
  if (s == "random_forest" || s == "rf") return ForestKind::random_forest;
  throw Error(ErrorCode::InvalidConfig, "unknown forest kind '" + std::string(s) + "'");
}

struct ForestConfig {
  ForestKind kind = ForestKind::extra_trees;
  int n_trees = 100;
  int min_samples_leaf = 2;
  /// 0 selects ceil(sqrt(width)).
  int max_features = 0;
  std::uint64_t seed = 42;

  int resolved_max_features(std::size_t width) const {
    if (max_features > 0) return std::min<int>(max_features, static_cast<int>(width));
    return static_cast<int>(std::ceil(std::sqrt(static_cast<double>(width))));
  }

  void validate() const {
    if (n_trees < 1) throw Error(ErrorCode::InvalidConfig, "n_trees must be >= 1");
    if (min_samples_leaf < 1) throw Error(ErrorCode::InvalidConfig, "min_samples_leaf must be >= 1");
    if (max_features < 0) throw Error(ErrorCode::InvalidConfig, "max_features must be >= 0");
  }

  friend bool operator==(const ForestConfig&, const ForestConfig&) = default;
};

/// Nodes are stored in preorder: an internal node's left child follows it
/// directly, `right` indexes the right child.
struct TreeNode {
  int feature = -1;
  /// Split threshold (x <= threshold goes left) or leaf value.
  double value = 0;
  std::uint32_t right = 0;

  bool leaf() const { return feature < 0; }
  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

struct Tree {
  std::vector<TreeNode> nodes;

  double predict(std::span<const double> x) const {
    std::size_t i = 0;
    while (!nodes[i].leaf()) {
      const auto& n = nodes[i];
      i = x[static_cast<std::size_t>(n.feature)] <= n.value ? i + 1 : n.right;
    }
    return nodes[i].value;
  }

  std::size_t leaf_count() const {
    return static_cast<std::size_t>(std::count_if(nodes.begin(), nodes.end(), [](auto& n) { return n.leaf(); }));
  }

  friend bool operator==(const Tree&, const Tree&) = default;
};

struct Forest {
  ForestConfig config;
  std::size_t width = 0;
  std::vector<Tree> trees;
  double target_min = 0;
  double target_max = 0;
  /// Every training target was identical.
  bool degenerate = false;

  double predict(std::span<const double> x) const {
    if (x.size() != width)
      throw Error(ErrorCode::WidthMismatch,
                  "row has " + std::to_string(x.size()) + " columns, model expects " + std::to_string(width));
    double sum = 0;
    for (const auto& t : trees) sum += t.predict(x);
    return sum / static_cast<double>(trees.size());
  }

  std::vector<double> predict(const FeatureMatrix& m) const {
    std::vector<double> out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) out[i] = predict(m.row(i));
    return out;
  }

  friend bool operator==(const Forest&, const Forest&) = default;
};

namespace detail {

struct SplitChoice {
  int feature = -1;
  double threshold = 0;
  double cost = std::numeric_limits<double>::infinity();
};

class TreeBuilder {
 public:
  TreeBuilder(const FeatureMatrix& data, const ForestConfig& cfg, std::uint64_t seed)
      : data_(data), cfg_(cfg), rng_(seed), max_features_(cfg.resolved_max_features(data.cols)) {}

  Tree build(std::vector<std::size_t> sample) {
    Tree t;
    grow(t, sample, 0, sample.size());
    return t;
  }

 private:
  double y(std::size_t i) const { return data_.targets[i]; }
  double x(std::size_t i, std::size_t f) const { return data_.at(i, f); }

  // Sum of squared deviations from the mean.
  static double sse(double sum, double sumsq, double n) { return n > 0 ? std::max(0.0, sumsq - sum * sum / n) : 0; }

  void grow(Tree& t, std::vector<std::size_t>& s, std::size_t lo, std::size_t hi) {
    const std::size_t n = hi - lo;
    const std::size_t at = t.nodes.size();
    t.nodes.emplace_back();
    double sum = 0, ymin = y(s[lo]), ymax = ymin;
    for (std::size_t k = lo; k < hi; ++k) {
      sum += y(s[k]);
      ymin = std::min(ymin, y(s[k]));
      ymax = std::max(ymax, y(s[k]));
    }
    const auto msl = static_cast<std::size_t>(cfg_.min_samples_leaf);
    SplitChoice best;
    if (ymin != ymax && n >= 2 * msl) best = choose(s, lo, hi);
    if (best.feature < 0) {
      t.nodes[at].value = sum / static_cast<double>(n);
      return;
    }
    const auto f = static_cast<std::size_t>(best.feature);
    auto mid = std::stable_partition(s.begin() + static_cast<std::ptrdiff_t>(lo),
                                     s.begin() + static_cast<std::ptrdiff_t>(hi),
                                     [&](std::size_t i) { return x(i, f) <= best.threshold; });
    const auto m = static_cast<std::size_t>(mid - s.begin());
    t.nodes[at].feature = best.feature;
    t.nodes[at].value = best.threshold;
    grow(t, s, lo, m);
    t.nodes[at].right = static_cast<std::uint32_t>(t.nodes.size());
    grow(t, s, m, hi);
  }

  // Candidate features are visited in random order; features constant within
  // the node do not count towards max_features.
  SplitChoice choose(const std::vector<std::size_t>& s, std::size_t lo, std::size_t hi) {
    std::vector<std::size_t> order(data_.cols);
    std::iota(order.begin(), order.end(), 0);
    rng_.shuffle(order);
    SplitChoice best;
    int tried = 0;
    for (auto f : order) {
      if (tried >= max_features_) break;
      double fmin = x(s[lo], f), fmax = fmin;
      for (std::size_t k = lo + 1; k < hi; ++k) {
        fmin = std::min(fmin, x(s[k], f));
        fmax = std::max(fmax, x(s[k], f));
      }
      if (fmin == fmax) continue;
      ++tried;
      const SplitChoice c = cfg_.kind == ForestKind::extra_trees ? random_split(s, lo, hi, f, fmin, fmax)
                                                                 : best_split(s, lo, hi, f);
      if (c.cost < best.cost) best = c;
    }
    return best;
  }

  SplitChoice random_split(const std::vector<std::size_t>& s, std::size_t lo, std::size_t hi, std::size_t f,
                           double fmin, double fmax) {
    double thr = rng_.uniform(fmin, fmax);
    if (thr >= fmax) thr = std::nextafter(fmax, fmin);
    double ls = 0, lss = 0, rs = 0, rss = 0;
    std::size_t ln = 0;
    for (std::size_t k = lo; k < hi; ++k) {
      const double v = y(s[k]);
      if (x(s[k], f) <= thr) {
        ls += v;
        lss += v * v;
        ++ln;
      } else {
        rs += v;
        rss += v * v;
      }
    }
    const std::size_t rn = hi - lo - ln;
    const auto msl = static_cast<std::size_t>(cfg_.min_samples_leaf);
    if (ln < msl || rn < msl) return {};
    return {static_cast<int>(f), thr,
            sse(ls, lss, static_cast<double>(ln)) + sse(rs, rss, static_cast<double>(rn))};
  }

  SplitChoice best_split(const std::vector<std::size_t>& s, std::size_t lo, std::size_t hi, std::size_t f) {
    std::vector<std::pair<double, double>> xs;
    xs.reserve(hi - lo);
    double ts = 0, tss = 0;
    for (std::size_t k = lo; k < hi; ++k) {
      xs.emplace_back(x(s[k], f), y(s[k]));
      ts += y(s[k]);
      tss += y(s[k]) * y(s[k]);
    }
    std::sort(xs.begin(), xs.end());
    const auto msl = static_cast<std::size_t>(cfg_.min_samples_leaf);
    const std::size_t n = xs.size();
    SplitChoice best;
    double ls = 0, lss = 0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      ls += xs[k].second;
      lss += xs[k].second * xs[k].second;
      const std::size_t ln = k + 1;
      if (xs[k].first == xs[k + 1].first || ln < msl || n - ln < msl) continue;
      const double cost = sse(ls, lss, double(ln)) + sse(ts - ls, tss - lss, double(n - ln));
      if (cost < best.cost) {
        double thr = 0.5 * (xs[k].first + xs[k + 1].first);
        // The midpoint of adjacent doubles can round up to the larger one.
        if (thr >= xs[k + 1].first) thr = xs[k].first;
        best = {static_cast<int>(f), thr, cost};
      }
    }
    return best;
  }

  const FeatureMatrix& data_;
  const ForestConfig& cfg_;
  util::Rng rng_;
  int max_features_;
};

}  // namespace detail

/// Trains one tree per stream derived from (seed, tree index), so the result
/// does not depend on `threads`.
inline Forest train_forest(const FeatureMatrix& train, const ForestConfig& cfg, unsigned threads = 0) {
  cfg.validate();
  if (train.cols == 0) throw Error(ErrorCode::InvalidConfig, "feature matrix has no columns");
  if (train.rows() < static_cast<std::size_t>(cfg.min_samples_leaf) || train.rows() == 0)
    throw Error(ErrorCode::TooFewRows, "training set has " + std::to_string(train.rows()) +
                                           " rows, fewer than min_samples_leaf");
  Forest forest;
  forest.config = cfg;
  forest.width = train.cols;
  const auto [lo, hi] = std::minmax_element(train.targets.begin(), train.targets.end());
  forest.target_min = *lo;
  forest.target_max = *hi;
  forest.degenerate = *lo == *hi;
  forest.trees.resize(static_cast<std::size_t>(cfg.n_trees));
  const std::size_t n = train.rows();
  util::parallel_for(
      forest.trees.size(),
      [&](std::size_t t) {
        const std::uint64_t seed = util::derive_seed(cfg.seed, t);
        std::vector<std::size_t> sample(n);
        if (cfg.kind == ForestKind::random_forest) {
          util::Rng boot(util::derive_seed(seed, 0xb007));
          for (auto& i : sample) i = boot.below(n);
          std::sort(sample.begin(), sample.end());
        } else {
          std::iota(sample.begin(), sample.end(), 0);
        }
        forest.trees[t] = detail::TreeBuilder(train, cfg, seed).build(std::move(sample));
      },
      threads);
  return forest;
}

}  // namespace dreamxi::learner
