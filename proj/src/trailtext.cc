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

#include "num/trailtext.h"

#include <algorithm>

#include "num/errors.h"

namespace num {
namespace {

void CheckParams(const MetricParams& params) {
  if (!(params.F > 0.0 && params.F <= 1.0)) {
    throw DomainError("F must lie in (0, 1]");
  }
  if (params.reformulation_len < 0) {
    throw DomainError("reformulation length must be non-negative");
  }
}

int LowestClickedRank(const SessionQuery& query) {
  int lowest = 0;
  for (const SerpResult& r : query.results) {
    if (r.clicked) lowest = std::max(lowest, r.rank);
  }
  return lowest;
}

}  // namespace

std::string_view ToString(StringKind kind) {
  switch (kind) {
    case StringKind::kSnippet:
      return "snippet";
    case StringKind::kDocument:
      return "document";
    case StringKind::kReformulation:
      return "reformulation";
  }
  return "snippet";
}

void Trailtext::Append(StringKind kind, std::int64_t length, double gain) {
  total_len_ += length;
  strings_.push_back({kind, length, gain, total_len_});
}

double Trailtext::total_gain() const {
  double sum = 0.0;
  for (const TrailString& s : strings_) sum += s.gain;
  return sum;
}

Trailtext BuildActualTrailtext(const Session& session, const MetricParams& params,
                               const GainFn& gain_fn) {
  CheckParams(params);
  if (session.num_clicks() == 0) {
    throw UndefinedMetricError("no_clicks", "undefined trailtext: no clicks");
  }
  const double gain = gain_fn(1, params.H);
  Trailtext tt;
  for (std::size_t qi = 0; qi < session.queries.size(); ++qi) {
    const SessionQuery& query = session.queries[qi];
    const int lowest = LowestClickedRank(query);
    for (const SerpResult& r : query.results) {
      if (r.rank > lowest) break;
      tt.Append(StringKind::kSnippet, r.snippet_len, 0.0);
      if (r.clicked) {
        tt.Append(StringKind::kDocument, ReadLength(params.F, r.doc_len), gain);
      }
    }
    const bool last = qi + 1 == session.queries.size();
    if (!last && !params.ablation.no_reformulation_text) {
      tt.Append(StringKind::kReformulation, params.reformulation_len, 0.0);
    }
  }
  return tt;
}

Trailtext BuildIdealTrailtext(std::span<const IdealEntry> entries) {
  Trailtext tt;
  for (const IdealEntry& e : entries) {
    tt.Append(StringKind::kDocument, e.read_len, e.gain);
  }
  return tt;
}

std::int64_t Mtl(const Session& session, const MetricParams& params) {
  CheckParams(params);
  std::int64_t snippets = 0;
  std::int64_t documents = 0;
  for (const SessionQuery& query : session.queries) {
    const int lowest = LowestClickedRank(query);
    for (const SerpResult& r : query.results) {
      if (r.rank <= lowest) snippets += r.snippet_len;
      if (r.clicked) documents += ReadLength(params.F, r.doc_len);
    }
  }
  std::int64_t reformulations = 0;
  if (!params.ablation.no_reformulation_text && session.num_queries() > 1) {
    reformulations = static_cast<std::int64_t>(session.num_queries() - 1) *
                     params.reformulation_len;
  }
  return snippets + documents + reformulations;
}

}  // namespace num
