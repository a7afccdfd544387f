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

#ifndef NUM_ESTIMATION_H_
#define NUM_ESTIMATION_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "num/params.h"
#include "num/session.h"

namespace num {

struct EstimationConfig {
  // Used when a log omits snippet lengths (see ParseOptions).
  std::int64_t default_snippet_len = 80;
  // Fraction of sessions with the largest MTL dropped before taking the max.
  double mtl_discard_frac = 0.01;
  // Fraction of reformulation intervals with the largest values dropped.
  double rt_discard_frac = 0.04;
  // Characters per minute.
  double reading_speed = 255.0;

  void Validate() const;
};

// ceil(frac * count), with products within 1e-9 of an integer snapped to it.
std::size_t DiscardCount(double frac, std::size_t count);

// Selects the decay horizon from a multiset of MTL values: sort descending,
// drop DiscardCount(frac, n) of the largest, return the largest remaining.
// Throws DomainError when nothing remains.
std::int64_t SelectHorizon(std::vector<std::int64_t> mtls, double discard_frac);

// L for a corpus: SelectHorizon over per-session MTLs. The ablation switches
// in `params` are ignored; its reformulation_len should already hold the
// estimated reformulation length.
std::int64_t EstimateL(std::span<const Session> sessions,
                       const EstimationConfig& cfg, const MetricParams& params);

struct RtEstimate {
  std::int64_t length = 0;
  double mean_seconds = 0.0;
  // Intervals kept after both filters.
  std::size_t n_intervals = 0;
};

// Gaps between the end of query m and the issue of query m + 1, in seconds,
// for every session in order.
std::vector<double> ReformulationIntervals(std::span<const Session> sessions);

// ceil(reading_speed * mean_seconds / 60).
std::int64_t RtLengthFromMeanSeconds(double mean_seconds, double reading_speed);

// Drops negative intervals, then the largest DiscardCount(rt_discard_frac)
// of the rest, and converts the mean to characters. Throws DomainError when
// no interval survives.
RtEstimate EstimateRtFromIntervals(std::vector<double> intervals,
                                   const EstimationConfig& cfg);
RtEstimate EstimateRtLength(std::span<const Session> sessions,
                            const EstimationConfig& cfg);

}  // namespace num

#endif  // NUM_ESTIMATION_H_
