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

#include "num/estimation.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "num/errors.h"
#include "num/trailtext.h"

namespace num {
namespace {

void CheckFraction(double frac, const char* name) {
  if (!(frac >= 0.0 && frac < 1.0)) {
    throw DomainError(std::string(name) + " must lie in [0, 1)");
  }
}

double SnappedCeil(double x) {
  const double nearest = std::round(x);
  if (std::abs(x - nearest) <= 1e-9 * std::max(1.0, std::abs(x))) return nearest;
  return std::ceil(x);
}

}  // namespace

void EstimationConfig::Validate() const {
  if (default_snippet_len < 0) {
    throw DomainError("default snippet length must be non-negative");
  }
  CheckFraction(mtl_discard_frac, "mtl_discard_frac");
  CheckFraction(rt_discard_frac, "rt_discard_frac");
  if (!(reading_speed > 0.0) || !std::isfinite(reading_speed)) {
    throw DomainError("reading speed must be positive");
  }
}

std::size_t DiscardCount(double frac, std::size_t count) {
  CheckFraction(frac, "discard fraction");
  return static_cast<std::size_t>(SnappedCeil(frac * static_cast<double>(count)));
}

std::int64_t SelectHorizon(std::vector<std::int64_t> mtls, double discard_frac) {
  if (mtls.empty()) throw DomainError("cannot estimate L from an empty corpus");
  const std::size_t drop = DiscardCount(discard_frac, mtls.size());
  if (drop >= mtls.size()) {
    throw DomainError("corpus too small: discarding " + std::to_string(drop) +
                      " of " + std::to_string(mtls.size()) + " sessions");
  }
  std::nth_element(mtls.begin(), mtls.begin() + static_cast<std::ptrdiff_t>(drop),
                   mtls.end(), std::greater<>());
  return mtls[drop];
}

std::int64_t EstimateL(std::span<const Session> sessions,
                       const EstimationConfig& cfg, const MetricParams& params) {
  cfg.Validate();
  MetricParams mtl_params = params;
  mtl_params.ablation = Ablation{};
  std::vector<std::int64_t> mtls;
  mtls.reserve(sessions.size());
  for (const Session& s : sessions) mtls.push_back(Mtl(s, mtl_params));
  return SelectHorizon(std::move(mtls), cfg.mtl_discard_frac);
}

std::vector<double> ReformulationIntervals(std::span<const Session> sessions) {
  std::vector<double> intervals;
  for (const Session& s : sessions) {
    for (std::size_t m = 0; m + 1 < s.queries.size(); ++m) {
      intervals.push_back(s.queries[m + 1].issue_time - s.queries[m].end_time);
    }
  }
  return intervals;
}

std::int64_t RtLengthFromMeanSeconds(double mean_seconds, double reading_speed) {
  return static_cast<std::int64_t>(SnappedCeil(reading_speed * mean_seconds / 60.0));
}

RtEstimate EstimateRtFromIntervals(std::vector<double> intervals,
                                   const EstimationConfig& cfg) {
  cfg.Validate();
  std::erase_if(intervals, [](double x) { return x < 0.0; });
  if (intervals.empty()) {
    throw DomainError("no non-negative reformulation intervals");
  }
  std::sort(intervals.begin(), intervals.end());
  const std::size_t drop = DiscardCount(cfg.rt_discard_frac, intervals.size());
  if (drop >= intervals.size()) {
    throw DomainError("too few reformulation intervals to discard " +
                      std::to_string(drop));
  }
  intervals.resize(intervals.size() - drop);
  // Ascending order makes the sum independent of corpus order.
  const double sum = std::accumulate(intervals.begin(), intervals.end(), 0.0);
  RtEstimate out;
  out.n_intervals = intervals.size();
  out.mean_seconds = sum / static_cast<double>(intervals.size());
  out.length = RtLengthFromMeanSeconds(out.mean_seconds, cfg.reading_speed);
  return out;
}

RtEstimate EstimateRtLength(std::span<const Session> sessions,
                            const EstimationConfig& cfg) {
  return EstimateRtFromIntervals(ReformulationIntervals(sessions), cfg);
}

}  // namespace num
