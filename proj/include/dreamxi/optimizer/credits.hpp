#pragma once

#include <cmath>
#include <span>

#include "dreamxi/dataset/series.hpp"
#include "dreamxi/error.hpp"

namespace dreamxi::optimizer {

inline constexpr double kMinCredit = 7.0;
inline constexpr double kMaxCredit = 11.0;

/// League range of trailing averages that anchors the credit scale.
struct CreditScale {
  double lowest_average = 0;
  double highest_average = 0;
  std::size_t window = 5;
};

inline double snap_half(double v) { return std::round(v * 2) / 2; }

inline double trailing_average(std::span<const double> history, std::size_t window) {
  if (history.empty()) throw Error(ErrorCode::EmptyHistory, "no score history");
  return dataset::moving_average(history, window).back();
}

/// Fallback price for a player without a published credit: the trailing
/// average mapped linearly from the league range onto [7, 11], in 0.5 steps.
inline double estimate_credits(std::span<const double> history, const CreditScale& scale) {
  const double avg = trailing_average(history, scale.window);
  const double span = scale.highest_average - scale.lowest_average;
  if (!(span > 0)) return snap_half((kMinCredit + kMaxCredit) / 2);
  const double t = std::clamp((avg - scale.lowest_average) / span, 0.0, 1.0);
  return snap_half(kMinCredit + t * (kMaxCredit - kMinCredit));
}

}  // namespace dreamxi::optimizer
