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

#ifndef NUM_RUNS_H_
#define NUM_RUNS_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "num/session.h"

namespace num {

// (session_id, query index)
using RankingKey = std::pair<std::string, int>;

struct RankedDoc {
  std::string doc_id;
  double score = 0.0;

  bool operator==(const RankedDoc&) const = default;
};

// Rankings of one session, keyed by query index.
using SessionRankings = std::map<int, std::vector<RankedDoc>>;

// A system's ranked output. Within a ranking doc_ids are unique and scores
// non-increasing.
struct Run {
  std::string run_tag;
  std::map<RankingKey, std::vector<RankedDoc>> rankings;

  bool operator==(const Run&) const = default;
};

// Lines `session_id query_index doc_id rank score run_tag`, tab or space
// separated. Throws ParseError on malformed lines and ValidationError on a
// duplicate doc or rank, mixed run tags, or a score that increases with rank.
Run ParseRun(std::istream& in);
Run ParseRun(std::string_view text);
void WriteRun(std::ostream& out, const Run& run);

struct Candidate {
  std::string doc_id;
  double score = 0.0;
  std::int64_t snippet_len = 0;
  std::int64_t doc_len = 0;

  bool operator==(const Candidate&) const = default;
};

// Scored candidate documents per (session_id, query index).
class CandidatePool {
 public:
  // Throws ValidationError when doc_id is already in that query's pool.
  void Add(const std::string& session_id, int query_index, Candidate candidate);

  // Candidates of one query; empty when absent.
  const std::vector<Candidate>& Get(const std::string& session_id,
                                    int query_index) const;
  // Query indices with a pool for `session_id`, ascending.
  std::vector<int> QueryIndices(const std::string& session_id) const;
  std::vector<std::string> SessionIds() const;
  // First candidate with `doc_id` in the session's pools, by query index.
  const Candidate* Find(const std::string& session_id,
                        std::string_view doc_id) const;

  const std::map<RankingKey, std::vector<Candidate>>& pools() const { return pools_; }

 private:
  std::map<RankingKey, std::vector<Candidate>> pools_;
};

// Lines `session_id query_index doc_id score snippet_len doc_len`.
CandidatePool ParsePool(std::istream& in);
CandidatePool ParsePool(std::string_view text);
void WritePool(std::ostream& out, const CandidatePool& pool);

enum class TransformMode { kOriginal, kIdeal, kDiversified };

TransformMode ParseTransformMode(std::string_view name);
std::string_view ToString(TransformMode mode);

// Each query ranks its own pool. Score ties break by doc_id ascending
// everywhere in this module.
SessionRankings OriginalRunTransform(const CandidatePool& pool,
                                     const std::string& session_id, int top_k = 10);

// Query m ranks the union of its pool and the pools of every later query
// of the session. A document pooled by several queries keeps the score from
// the earliest of them at or after m. Throws ValidationError on an empty
// extended pool.
SessionRankings IdealRunTransform(const CandidatePool& pool,
                                  const std::string& session_id, int top_k = 10);

// As IdealRunTransform, processing queries in issue order and dropping
// candidates already emitted for an earlier query. A query left with fewer
// than top_k candidates gets a short ranking and a note in `warnings`.
SessionRankings DiversifiedRunTransform(const CandidatePool& pool,
                                        const std::string& session_id,
                                        int top_k = 10,
                                        std::vector<std::string>* warnings = nullptr);

// Applies a transform to every session of the pool.
Run TransformRuns(const CandidatePool& pool, TransformMode mode, int top_k,
                  const std::string& run_tag,
                  std::vector<std::string>* warnings = nullptr);

// The session a user would have seen under `rankings`: query timing from
// `original`, lengths from `pool`, and every document clicked anywhere in
// `original` clicked wherever it now appears. Projected clicks are spread
// over each query's [issue_time, end_time] by rank.
Session ProjectSession(const Session& original, const SessionRankings& rankings,
                       const CandidatePool& pool);

}  // namespace num

#endif  // NUM_RUNS_H_
