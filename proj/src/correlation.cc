/*
 * Copyright 2026 The NUM Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "num/correlation.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "num/errors.h"

namespace num {
namespace {

void CheckInputs(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw DomainError("correlation inputs differ in length");
  }
  if (xs.size() < 2) throw DomainError("correlation needs at least 2 points");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (std::isnan(xs[i]) || std::isnan(ys[i])) {
      throw DomainError("correlation input contains NaN");
    }
  }
}

// Tied pairs within runs of equal keys of a sorted sequence.
template <typename Equal>
std::int64_t TiedPairs(std::size_t n, Equal equal) {
  std::int64_t ties = 0;
  std::size_t run = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    if (i < n && equal(i - 1, i)) {
      ++run;
      continue;
    }
    ties += static_cast<std::int64_t>(run) * static_cast<std::int64_t>(run - 1) / 2;
    run = 1;
  }
  return ties;
}

// Sorts values[lo, hi) ascending; returns the number of inversions removed.
std::int64_t MergeCount(std::vector<double>& values, std::vector<double>& buffer,
                        std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::int64_t swaps = MergeCount(values, buffer, lo, mid) +
                       MergeCount(values, buffer, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (values[j] < values[i]) {
      swaps += static_cast<std::int64_t>(mid - i);
      buffer[k++] = values[j++];
    } else {
      buffer[k++] = values[i++];
    }
  }
  while (i < mid) buffer[k++] = values[i++];
  while (j < hi) buffer[k++] = values[j++];
  std::copy(buffer.begin() + static_cast<std::ptrdiff_t>(lo),
            buffer.begin() + static_cast<std::ptrdiff_t>(hi),
            values.begin() + static_cast<std::ptrdiff_t>(lo));
  return swaps;
}

}  // namespace

std::vector<double> AverageRanks(std::span<const double> xs) {
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(xs.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i + 1;
    while (j < order.size() && xs[order[j]] == xs[order[i]]) ++j;
    // Positions i+1 .. j share the mean rank.
    const double rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = rank;
    i = j;
  }
  return ranks;
}

double Spearman(std::span<const double> xs, std::span<const double> ys) {
  CheckInputs(xs, ys);
  const std::vector<double> rx = AverageRanks(xs);
  const std::vector<double> ry = AverageRanks(ys);
  const double n = static_cast<double>(rx.size());
  // Mean rank is (n + 1) / 2 whatever the ties.
  const double mean = (n + 1.0) / 2.0;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    const double dx = rx[i] - mean;
    const double dy = ry[i] - mean;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw DomainError("undefined correlation");
  return sxy / std::sqrt(sxx * syy);
}

double Kendall(std::span<const double> xs, std::span<const double> ys) {
  CheckInputs(xs, ys);
  const std::size_t n = xs.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (xs[a] != xs[b]) return xs[a] < xs[b];
    return ys[a] < ys[b];
  });
  const std::int64_t total =
      static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n - 1) / 2;
  const std::int64_t x_ties = TiedPairs(
      n, [&](std::size_t a, std::size_t b) { return xs[order[a]] == xs[order[b]]; });
  const std::int64_t joint_ties = TiedPairs(n, [&](std::size_t a, std::size_t b) {
    return xs[order[a]] == xs[order[b]] && ys[order[a]] == ys[order[b]];
  });

  std::vector<double> y_sorted(n);
  for (std::size_t i = 0; i < n; ++i) y_sorted[i] = ys[order[i]];
  std::vector<double> buffer(n);
  const std::int64_t swaps = MergeCount(y_sorted, buffer, 0, n);
  const std::int64_t y_ties = TiedPairs(
      n, [&](std::size_t a, std::size_t b) { return y_sorted[a] == y_sorted[b]; });

  const std::int64_t x_untied = total - x_ties;
  const std::int64_t y_untied = total - y_ties;
  if (x_untied == 0 || y_untied == 0) throw DomainError("undefined correlation");
  // concordant - discordant
  const std::int64_t score = total - x_ties - y_ties + joint_ties - 2 * swaps;
  return static_cast<double>(score) /
         std::sqrt(static_cast<double>(x_untied) * static_cast<double>(y_untied));
}

}  // namespace num
