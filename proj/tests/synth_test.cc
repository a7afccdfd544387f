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

#include "num/synth.h"

#include <set>

#include "gtest/gtest.h"
#include "num/enhancement.h"
#include "num/errors.h"
#include "num/random.h"

namespace num {
namespace {

TEST(Rng, MatchesReferenceEngine) {
  // The 10000th output of a default-seeded mt19937_64.
  Rng rng(5489u);
  std::uint64_t v = 0;
  for (int i = 0; i < 10000; ++i) v = rng.Next();
  EXPECT_EQ(v, 9981545732273789042ull);
}

TEST(Rng, Ranges) {
  Rng rng(1);
  double sum = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.Uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const auto k = rng.UniformInt(-3, 3);
    ASSERT_GE(k, -3);
    ASSERT_LE(k, 3);
    sum += rng.Normal();
  }
  EXPECT_NEAR(sum / 10000.0, 0.0, 0.05);
  EXPECT_NE(DeriveSeed(1, 0), DeriveSeed(1, 1));
  EXPECT_EQ(DeriveSeed(7, 3), DeriveSeed(7, 3));
}

TEST(SynthSessions, EmptyCorpus) {
  SynthConfig cfg;
  cfg.n_sessions = 0;
  EXPECT_TRUE(SynthSessions(cfg, 1).empty());
}

TEST(SynthSessions, SameSeedSameCorpus) {
  SynthConfig cfg;
  cfg.n_sessions = 200;
  EXPECT_EQ(SynthSessions(cfg, 3), SynthSessions(cfg, 3));
  EXPECT_NE(SynthSessions(cfg, 3), SynthSessions(cfg, 4));
  // Session i does not depend on the corpus size.
  SynthConfig small = cfg;
  small.n_sessions = 50;
  const auto big = SynthSessions(cfg, 3);
  const auto part = SynthSessions(small, 3);
  for (std::size_t i = 0; i < part.size(); ++i) EXPECT_EQ(part[i], big[i]);
}

TEST(SynthSessions, ValidAndClicked) {
  SynthConfig cfg;
  cfg.n_sessions = 500;
  std::set<std::string> ids;
  for (const Session& s : SynthSessions(cfg, 5)) {
    ASSERT_NO_THROW(ValidateSession(s));
    ASSERT_TRUE(ids.insert(s.session_id).second);
    ASSERT_GE(s.num_clicks(), 1u);
    ASSERT_GE(s.num_queries(), 1u);
    ASSERT_LE(s.num_queries(), 5u);
    ASSERT_TRUE(s.satisfaction.has_value());
    ASSERT_GE(*s.satisfaction, 1);
    ASSERT_LE(*s.satisfaction, 5);
    double last_click = -1.0;
    for (const SessionQuery& q : s.queries) {
      ASSERT_EQ(q.results.size(), 10u);
      for (const SerpResult& r : q.results) {
        ASSERT_GE(r.snippet_len, 60);
        ASSERT_LE(r.snippet_len, 100);
        ASSERT_GE(r.doc_len, 200);
        ASSERT_LE(r.doc_len, 5000);
        if (r.clicked) {
          // Clicks are top to bottom and later queries click later.
          ASSERT_GT(*r.click_time, last_click);
          last_click = *r.click_time;
        }
      }
    }
  }
}

TEST(SynthSessions, ForcedRepeatsProduceEnhancedLabels) {
  SynthConfig cfg;
  cfg.n_sessions = 300;
  cfg.min_queries = 2;
  cfg.repeat_fraction = 1.0;
  for (const Session& s : SynthSessions(cfg, 6)) {
    const Session labelled = EnhanceLabels(s);
    int enhanced = 0;
    for (const SessionQuery& q : labelled.queries) {
      for (const SerpResult& r : q.results) {
        enhanced += r.relevance_source == RelevanceSource::kEnhanced ? 1 : 0;
      }
    }
    ASSERT_GE(enhanced, 1) << s.session_id;
  }
}

TEST(SynthSessions, RejectsInfeasibleConfig) {
  SynthConfig cfg;
  cfg.min_queries = 3;
  cfg.max_queries = 2;
  EXPECT_THROW(SynthSessions(cfg, 1), DomainError);
  cfg = SynthConfig{};
  cfg.click_prob_top = 1.5;
  EXPECT_THROW(SynthSessions(cfg, 1), DomainError);
  cfg = SynthConfig{};
  cfg.doc_len_min = 10;
  cfg.doc_len_max = 5;
  EXPECT_THROW(SynthSessions(cfg, 1), DomainError);
}

TEST(SynthPool, CoversShownResults) {
  SynthConfig cfg;
  cfg.n_sessions = 50;
  const auto sessions = SynthSessions(cfg, 7);
  const CandidatePool pool = SynthPool(sessions, cfg, 7);
  for (const Session& s : sessions) {
    for (const SessionQuery& q : s.queries) {
      const auto& candidates = pool.Get(s.session_id, q.index);
      ASSERT_EQ(candidates.size(), q.results.size() + 10u);
      for (const SerpResult& r : q.results) {
        const Candidate* c = pool.Find(s.session_id, r.doc_id);
        ASSERT_NE(c, nullptr);
        ASSERT_EQ(c->doc_len, r.doc_len);
      }
    }
  }
}

}  // namespace
}  // namespace num
