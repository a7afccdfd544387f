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

#include "num/enhancement.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <tuple>

#include "num/errors.h"

namespace num {

void DuplicatePolicy::Validate() const {
  if (!(discount > 0.0 && discount <= 1.0)) {
    throw DomainError("duplicate discount must lie in (0, 1]");
  }
}

DuplicateMode ParseDuplicateMode(std::string_view name) {
  if (name == "include") return DuplicateMode::kIncludeFull;
  if (name == "discount") return DuplicateMode::kIncludeDiscounted;
  if (name == "exclude") return DuplicateMode::kExclude;
  throw DomainError("unknown duplicate policy '" + std::string(name) +
                    "' (expected include, discount or exclude)");
}

std::string_view ToString(DuplicateMode mode) {
  switch (mode) {
    case DuplicateMode::kIncludeFull:
      return "include";
    case DuplicateMode::kIncludeDiscounted:
      return "discount";
    case DuplicateMode::kExclude:
      return "exclude";
  }
  return "include";
}

std::int64_t ReadLength(double fraction, std::int64_t doc_len) {
  const double x = fraction * static_cast<double>(doc_len);
  const double nearest = std::round(x);
  if (std::abs(x - nearest) <= 1e-9 * std::max(1.0, std::abs(x))) {
    return static_cast<std::int64_t>(nearest);
  }
  return static_cast<std::int64_t>(std::ceil(x));
}

Session LabelClicks(const Session& session) {
  Session out = session;
  for (SessionQuery& q : out.queries) {
    for (SerpResult& r : q.results) {
      if (r.clicked) {
        r.session_relevant = true;
        r.relevance_source = RelevanceSource::kClick;
      }
    }
  }
  return out;
}

Session EnhanceLabels(const Session& session) {
  Session out = LabelClicks(session);
  // Last query index in which each doc_id is clicked; an occurrence in an
  // earlier query is enhanced.
  std::map<std::string, int, std::less<>> last_click_query;
  for (const SessionQuery& q : out.queries) {
    for (const SerpResult& r : q.results) {
      if (r.clicked) last_click_query[r.doc_id] = q.index;
    }
  }
  for (SessionQuery& q : out.queries) {
    for (SerpResult& r : q.results) {
      if (r.clicked || r.session_relevant) continue;
      auto it = last_click_query.find(r.doc_id);
      if (it != last_click_query.end() && it->second > q.index) {
        r.session_relevant = true;
        r.relevance_source = RelevanceSource::kEnhanced;
      }
    }
  }
  return out;
}

std::vector<IdealEntry> IdealSequence(const Session& labelled,
                                      const DuplicatePolicy& policy,
                                      double read_fraction, int highest_level,
                                      const GainFn& gain_fn) {
  policy.Validate();
  const double base_gain = gain_fn(1, highest_level);
  const std::vector<ClickEvent> clicks = ClickOrder(labelled);

  struct Keyed {
    // (trigger time, trigger position, 0 = enhanced / 1 = click, own position)
    std::tuple<double, ResultPosition, int, ResultPosition> key;
    const SerpResult* result;
  };
  std::vector<Keyed> keyed;
  for (const SessionQuery& q : labelled.queries) {
    for (const SerpResult& r : q.results) {
      if (!r.session_relevant) continue;
      const ResultPosition own{q.index, r.rank};
      if (r.clicked) {
        keyed.push_back({{*r.click_time, own, 1, own}, &r});
        continue;
      }
      // Clicks are in time order, so the first match is the earliest
      // click of this document in a later query.
      auto trigger = std::find_if(
          clicks.begin(), clicks.end(), [&](const ClickEvent& c) {
            return c.position.query_index > q.index &&
                   c.result->doc_id == r.doc_id;
          });
      if (trigger == clicks.end()) {
        throw ValidationError("session '" + labelled.session_id +
                              "': enhanced result '" + r.doc_id +
                              "' has no click in a later query");
      }
      keyed.push_back({{trigger->time, trigger->position, 0, own}, &r});
    }
  }
  std::sort(keyed.begin(), keyed.end(),
            [](const Keyed& a, const Keyed& b) { return a.key < b.key; });

  std::vector<IdealEntry> entries;
  std::set<std::string, std::less<>> seen;
  for (const Keyed& k : keyed) {
    const SerpResult& r = *k.result;
    double gain = base_gain;
    if (!seen.insert(r.doc_id).second) {
      if (policy.mode == DuplicateMode::kExclude) continue;
      if (policy.mode == DuplicateMode::kIncludeDiscounted) gain *= policy.discount;
    }
    entries.push_back(IdealEntry{r.doc_id, ReadLength(read_fraction, r.doc_len),
                                 gain, std::get<3>(k.key)});
  }
  return entries;
}

}  // namespace num
