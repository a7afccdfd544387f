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

#ifndef NUM_TESTS_TEST_UTIL_H_
#define NUM_TESTS_TEST_UTIL_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "num/session.h"
#include "num/synth.h"

namespace num::testing {

// Builds sessions query by query. Clicks get increasing times in the order
// they are declared unless a time is given.
class SessionBuilder {
 public:
  explicit SessionBuilder(std::string id = "s") { session_.session_id = std::move(id); }

  SessionBuilder& Query(int n_results, std::int64_t snippet_len = 80,
                        std::int64_t doc_len = 500) {
    SessionQuery q;
    q.index = static_cast<int>(session_.queries.size()) + 1;
    q.query_id = "q" + std::to_string(q.index);
    q.issue_time = 100.0 * q.index;
    q.end_time = q.issue_time + 50.0;
    for (int r = 1; r <= n_results; ++r) {
      SerpResult res;
      res.doc_id = "q" + std::to_string(q.index) + "-d" + std::to_string(r);
      res.rank = r;
      res.snippet_len = snippet_len;
      res.doc_len = doc_len;
      q.results.push_back(res);
    }
    session_.queries.push_back(std::move(q));
    return *this;
  }

  // Click on the current (last) query.
  SessionBuilder& Click(int rank, std::optional<double> time = std::nullopt) {
    SerpResult& r = session_.queries.back().results.at(rank - 1);
    r.clicked = true;
    r.click_time = time ? *time : (clock_ += 1.0);
    return *this;
  }

  SessionBuilder& Doc(int rank, std::string doc_id) {
    session_.queries.back().results.at(rank - 1).doc_id = std::move(doc_id);
    return *this;
  }

  SessionBuilder& DocLen(int rank, std::int64_t len) {
    session_.queries.back().results.at(rank - 1).doc_len = len;
    return *this;
  }

  SessionBuilder& SnippetLen(int rank, std::int64_t len) {
    session_.queries.back().results.at(rank - 1).snippet_len = len;
    return *this;
  }

  SessionBuilder& Satisfaction(int s) {
    session_.satisfaction = s;
    return *this;
  }

  Session Build() const { return session_; }

 private:
  Session session_;
  double clock_ = 0.0;
};

inline std::vector<Session> SmallSynthCorpus(std::size_t n, std::uint64_t seed,
                                             double repeat_fraction = 0.3) {
  SynthConfig cfg;
  cfg.n_sessions = n;
  cfg.results_per_query = 6;
  cfg.max_queries = 4;
  cfg.overlap_prob = 0.25;
  cfg.repeat_fraction = repeat_fraction;
  return SynthSessions(cfg, seed);
}

}  // namespace num::testing

#endif  // NUM_TESTS_TEST_UTIL_H_
