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

#ifndef NUM_ENHANCEMENT_H_
#define NUM_ENHANCEMENT_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "num/gain.h"
#include "num/session.h"

namespace num {

enum class DuplicateMode { kIncludeFull, kIncludeDiscounted, kExclude };

// How the second and later occurrences of a document in the ideal sequence
// are counted.
struct DuplicatePolicy {
  DuplicateMode mode = DuplicateMode::kIncludeFull;
  // Gain multiplier for kIncludeDiscounted; in (0, 1].
  double discount = 0.5;

  void Validate() const;
};

// Parses the CLI spelling: include | discount | exclude.
DuplicateMode ParseDuplicateMode(std::string_view name);
std::string_view ToString(DuplicateMode mode);

// One relevant document read in the ideal session.
struct IdealEntry {
  std::string doc_id;
  std::int64_t read_len = 0;
  double gain = 0.0;
  ResultPosition origin;

  bool operator==(const IdealEntry&) const = default;
};

// Characters read from a document: ceil(fraction * doc_len). Products
// within 1e-9 (relative) of an integer are snapped to it first so that,
// e.g., 0.2 * 15 reads 3 characters rather than 4.
std::int64_t ReadLength(double fraction, std::int64_t doc_len);

// Marks every clicked result as session-relevant (source click) without
// propagating labels between queries.
Session LabelClicks(const Session& session);

// LabelClicks plus backward propagation: an unclicked occurrence of a
// document in query i is labelled (source enhanced) when the same doc_id is
// clicked in some query j > i. Labels flow backward only.
Session EnhanceLabels(const Session& session);

// The ordered relevant-document sequence of the ideal session. Entries follow
// click order. An enhanced occurrence takes the time of the earliest click of
// its document in a later query and sits immediately before that click's
// entry. The duplicate policy applies to the second and later entries of the
// same doc_id. Gains are gain_fn(1, H).
std::vector<IdealEntry> IdealSequence(const Session& labelled,
                                      const DuplicatePolicy& policy,
                                      double read_fraction, int highest_level,
                                      const GainFn& gain_fn = GainValue);

}  // namespace num

#endif  // NUM_ENHANCEMENT_H_
