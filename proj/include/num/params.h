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

#ifndef NUM_PARAMS_H_
#define NUM_PARAMS_H_

#include <cstdint>

#include "num/enhancement.h"

namespace num {

// Ablation switches of NUM.
struct Ablation {
  bool no_session_norm = false;
  bool no_reformulation_text = false;
  bool no_enhancement = false;

  bool operator==(const Ablation&) const = default;
};

// Every metric hyperparameter. Lengths are in characters.
struct MetricParams {
  // Fraction of a clicked document that is read.
  double F = 0.20;
  // Decay horizon of the U-measure.
  std::int64_t L = 1000;
  // Highest relevance level.
  int H = 1;
  std::int64_t reformulation_len = 0;
  DuplicatePolicy dup_policy;
  // sDCG query and rank log bases.
  double b_q = 4.0;
  double b_r = 2.0;
  // sRBP patience and query-balance factors.
  double p = 0.8;
  double b = 0.9;
  // Recency decay of the RS-metrics.
  double lambda = 0.0;
  Ablation ablation;

  // Throws DomainError on out-of-range values.
  void Validate() const;
};

}  // namespace num

#endif  // NUM_PARAMS_H_
