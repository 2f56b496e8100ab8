#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "dreamxi/error.hpp"

namespace dreamxi::dataset {

/// Trailing mean over up to `window` values ending at each index; the first
/// window-1 entries average what is available.
inline std::vector<double> moving_average(std::span<const double> scores, std::size_t window) {
  if (scores.empty()) throw Error(ErrorCode::EmptySeries, "moving average of an empty series");
  if (window == 0) throw Error(ErrorCode::InvalidInput, "moving average window must be >= 1");
  std::vector<double> out(scores.size());
  double sum = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    sum += scores[i];
    if (i >= window) sum -= scores[i - window];
    const std::size_t n = std::min(window, i + 1);
    out[i] = sum / static_cast<double>(n);
  }
  return out;
}

/// Running ratio scale * sum(num[0..i]) / sum(den[0..i]); 0 while the
/// denominator sum is 0.
inline std::vector<double> cumulative_rate(std::span<const double> numerators,
                                           std::span<const double> denominators, double scale) {
  if (numerators.size() != denominators.size())
    throw Error(ErrorCode::LengthMismatch, "cumulative rate: " + std::to_string(numerators.size()) +
                                               " numerators vs " +
                                               std::to_string(denominators.size()) + " denominators");
  std::vector<double> out(numerators.size());
  double num = 0, den = 0;
  for (std::size_t i = 0; i < numerators.size(); ++i) {
    if (denominators[i] < 0)
      throw Error(ErrorCode::InvalidInput, "cumulative rate: negative denominator");
    num += numerators[i];
    den += denominators[i];
    out[i] = den > 0 ? scale * num / den : 0.0;
  }
  return out;
}

/// Cumulative strike rate from per-match runs and balls faced.
inline std::vector<double> cumulative_strike_rate(std::span<const double> runs,
                                                  std::span<const double> balls) {
  return cumulative_rate(runs, balls, 100.0);
}

/// Cumulative economy from per-match runs conceded and legal balls bowled.
inline std::vector<double> cumulative_economy(std::span<const double> runs,
                                              std::span<const double> balls) {
  return cumulative_rate(runs, balls, 6.0);
}

}  // namespace dreamxi::dataset
