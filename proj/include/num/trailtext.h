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

#ifndef NUM_TRAILTEXT_H_
#define NUM_TRAILTEXT_H_

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "num/enhancement.h"
#include "num/gain.h"
#include "num/params.h"
#include "num/session.h"

namespace num {

enum class StringKind { kSnippet, kDocument, kReformulation };

std::string_view ToString(StringKind kind);

struct TrailString {
  StringKind kind = StringKind::kSnippet;
  std::int64_t length = 0;
  double gain = 0.0;
  // Cumulative offset: sum of the lengths of this and all earlier strings.
  std::int64_t end_pos = 0;

  bool operator==(const TrailString&) const = default;
};

// The text a user is assumed to read, in reading order.
class Trailtext {
 public:
  void Append(StringKind kind, std::int64_t length, double gain);

  std::span<const TrailString> strings() const { return strings_; }
  std::int64_t total_len() const { return total_len_; }
  bool empty() const { return strings_.empty(); }
  double total_gain() const;

 private:
  std::vector<TrailString> strings_;
  std::int64_t total_len_ = 0;
};

// Trailtext of the session as the user experienced it. Per query: the
// snippets of ranks 1..c (c = lowest clicked rank), each clicked document
// directly after its snippet; queries without clicks add nothing. A
// reformulation string separates consecutive queries unless disabled by
// the no_reformulation_text ablation. Gains come from clicks only.
// Throws UndefinedMetricError("no_clicks") for a click-less session.
Trailtext BuildActualTrailtext(const Session& session, const MetricParams& params,
                               const GainFn& gain_fn = GainValue);

// Documents of the ideal session, back to back.
Trailtext BuildIdealTrailtext(std::span<const IdealEntry> entries);

// Maximal trailtext length. Defined for click-less sessions too (then only
// reformulation strings count).
std::int64_t Mtl(const Session& session, const MetricParams& params);

}  // namespace num

#endif  // NUM_TRAILTEXT_H_
