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

#ifndef NUM_SYNTH_H_
#define NUM_SYNTH_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "num/runs.h"
#include "num/session.h"

namespace num {

struct SynthConfig {
  std::size_t n_sessions = 1000;
  int min_queries = 1;
  int max_queries = 5;
  int results_per_query = 10;
  // Click probability at rank r: click_prob_top * click_decay^(r - 1).
  double click_prob_top = 0.6;
  double click_decay = 0.75;
  std::int64_t snippet_len_min = 60;
  std::int64_t snippet_len_max = 100;
  std::int64_t doc_len_min = 200;
  std::int64_t doc_len_max = 5000;
  // Chance that a result repeats a document shown earlier in the session.
  double overlap_prob = 0.1;
  // Fraction of sessions forced to contain an unclicked occurrence followed
  // by a click on the same document in a later query.
  double repeat_fraction = 0.2;
  // Reformulation gaps: exponential with this mean, except a fraction that is
  // negative (logging noise).
  double reformulation_mean_s = 120.0;
  double negative_interval_frac = 0.03;
  // Click the top result of the last query when the click model produced
  // no click at all.
  bool ensure_click = true;
  // Unshown candidates added to each query's pool by SynthPool.
  int extra_candidates = 10;

  // Throws DomainError on an infeasible configuration.
  void Validate() const;
};

// Deterministic corpus: session i depends only on (seed, i) and the
// configuration. Clicks within a query follow rank order in time; every
// click time exceeds those of earlier queries.
std::vector<Session> SynthSessions(const SynthConfig& config, std::uint64_t seed);

// Candidate pools for the sessions: each query pools its shown results plus
// `extra_candidates` unseen documents, scored so that documents clicked in
// the session tend to score higher.
CandidatePool SynthPool(const std::vector<Session>& sessions,
                        const SynthConfig& config, std::uint64_t seed);

}  // namespace num

#endif  // NUM_SYNTH_H_
