#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "dreamxi/error.hpp"
#include "dreamxi/learner/forest.hpp"

namespace dreamxi::learner {

inline constexpr double kBucketWidth = 10.0;

struct EvalReport {
  /// Absent when the test targets have zero variance.
  std::optional<double> r2;
  bool zero_variance = false;
  double mae = 0;
  double bucket_accuracy = 0;
  std::size_t n_train = 0;
  std::size_t n_test = 0;
  std::uint64_t seed = 0;
};

inline bool same_bucket(double a, double b, double width = kBucketWidth) {
  return std::floor(a / width) == std::floor(b / width);
}

inline EvalReport score_predictions(const std::vector<double>& predicted, const std::vector<double>& actual) {
  if (predicted.size() != actual.size())
    throw Error(ErrorCode::LengthMismatch, "prediction and target counts differ");
  if (actual.empty()) throw Error(ErrorCode::EmptyInput, "cannot evaluate on zero rows");
  const double n = static_cast<double>(actual.size());
  double mean = 0;
  for (double v : actual) mean += v;
  mean /= n;
  double ss_res = 0, ss_tot = 0, abs_err = 0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    const double e = actual[i] - predicted[i];
    ss_res += e * e;
    ss_tot += (actual[i] - mean) * (actual[i] - mean);
    abs_err += std::abs(e);
    hits += same_bucket(predicted[i], actual[i]);
  }
  EvalReport r;
  r.n_test = actual.size();
  r.mae = abs_err / n;
  r.bucket_accuracy = static_cast<double>(hits) / n;
  if (ss_tot == 0) r.zero_variance = true;
  else r.r2 = 1.0 - ss_res / ss_tot;
  return r;
}

inline EvalReport evaluate(const Forest& forest, const FeatureMatrix& test) {
  return score_predictions(forest.predict(test), test.targets);
}

}  // namespace dreamxi::learner
