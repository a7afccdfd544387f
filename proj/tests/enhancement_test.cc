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

#include <set>

#include "gtest/gtest.h"
#include "num/errors.h"
#include "num/gain.h"
#include "oracles.h"
#include "test_util.h"

namespace num {
namespace {

using testing::SessionBuilder;

// Two queries; d4 is skipped at rank 4 of the first query and clicked at
// rank 1 of the second.
Session FigureTwoSession() {
  return SessionBuilder()
      .Query(10)
      .Doc(4, "d4")
      .Click(2)
      .Query(10)
      .Doc(1, "d4")
      .Click(1)
      .Click(3)
      .Build();
}

double TotalGain(const std::vector<IdealEntry>& entries) {
  double sum = 0.0;
  for (const IdealEntry& e : entries) sum += e.gain;
  return sum;
}

TEST(EnhanceLabels, SkippedThenClickedDocumentIsLabelled) {
  const Session out = EnhanceLabels(FigureTwoSession());
  const SerpResult& skipped = out.queries[0].results[3];
  EXPECT_TRUE(skipped.session_relevant);
  EXPECT_EQ(skipped.relevance_source, RelevanceSource::kEnhanced);
  EXPECT_EQ(out.queries[1].results[0].relevance_source, RelevanceSource::kClick);
  EXPECT_FALSE(out.queries[0].results[4].session_relevant);
}

TEST(EnhanceLabels, NoClicksNoLabels) {
  const Session s = SessionBuilder().Query(10).Query(10).Build();
  EXPECT_EQ(EnhanceLabels(s), s);
}

TEST(EnhanceLabels, LabelsNeverFlowForward) {
  const Session s = SessionBuilder()
                        .Query(5)
                        .Doc(2, "x")
                        .Click(2)
                        .Query(5)
                        .Doc(5, "x")
                        .Build();
  const Session out = EnhanceLabels(s);
  EXPECT_FALSE(out.queries[1].results[4].session_relevant);
  EXPECT_EQ(oracle::Labels(out), oracle::BruteForceLabels(s));
}

TEST(EnhanceLabels, MatchesBruteForceOnSynthesizedSessions) {
  for (const Session& s : testing::SmallSynthCorpus(400, 3, 0.6)) {
    const Session out = EnhanceLabels(s);
    ASSERT_EQ(oracle::Labels(out), oracle::BruteForceLabels(s)) << s.session_id;
    // Idempotent.
    ASSERT_EQ(EnhanceLabels(out), out);
    // Monotone: only adds labels, never touches clicks.
    for (std::size_t q = 0; q < s.queries.size(); ++q) {
      for (std::size_t r = 0; r < s.queries[q].results.size(); ++r) {
        const SerpResult& before = s.queries[q].results[r];
        const SerpResult& after = out.queries[q].results[r];
        ASSERT_EQ(before.clicked, after.clicked);
        if (before.session_relevant) {
          ASSERT_TRUE(after.session_relevant);
        }
      }
    }
  }
}

TEST(IdealSequence, DuplicatePolicies) {
  const Session labelled = EnhanceLabels(FigureTwoSession());
  const DuplicatePolicy full{DuplicateMode::kIncludeFull, 0.5};
  const std::vector<IdealEntry> entries = IdealSequence(labelled, full, 0.2, 1);
  // Click order: q1 r2, then d4 (enhanced copy first, then the click), q2 r3.
  ASSERT_EQ(entries.size(), 4u);
  EXPECT_EQ(entries[0].origin, (ResultPosition{1, 2}));
  EXPECT_EQ(entries[1].origin, (ResultPosition{1, 4}));
  EXPECT_EQ(entries[2].origin, (ResultPosition{2, 1}));
  EXPECT_EQ(entries[3].origin, (ResultPosition{2, 3}));
  EXPECT_EQ(entries[1].doc_id, "d4");
  EXPECT_EQ(entries[2].doc_id, "d4");
  EXPECT_EQ(entries[1].gain, 0.5);
  EXPECT_EQ(entries[2].gain, 0.5);
  EXPECT_EQ(entries[0].read_len, 100);

  const std::vector<IdealEntry> excluded =
      IdealSequence(labelled, {DuplicateMode::kExclude, 0.5}, 0.2, 1);
  ASSERT_EQ(excluded.size(), 3u);
  EXPECT_EQ(excluded[1].origin, (ResultPosition{1, 4}));

  const std::vector<IdealEntry> discounted =
      IdealSequence(labelled, {DuplicateMode::kIncludeDiscounted, 0.5}, 0.2, 1);
  ASSERT_EQ(discounted.size(), 4u);
  EXPECT_EQ(discounted[2].gain, 0.25);
}

TEST(IdealSequence, FollowsClickTimeNotRank) {
  const Session s = SessionBuilder().Query(5).Click(3, 1.0).Click(1, 2.0).Build();
  const std::vector<IdealEntry> entries = IdealSequence(LabelClicks(s), {}, 0.2, 1);
  ASSERT_EQ(entries.size(), 2u);
  EXPECT_EQ(entries[0].origin.rank, 3);
  EXPECT_EQ(entries[1].origin.rank, 1);
}

TEST(IdealSequence, EmptyWithoutRelevantResults) {
  const Session s = SessionBuilder().Query(5).Build();
  EXPECT_TRUE(IdealSequence(EnhanceLabels(s), {}, 0.2, 1).empty());
}

TEST(IdealSequence, GainUsesHighestLevel) {
  const Session s = SessionBuilder().Query(2).Click(1).Build();
  EXPECT_EQ(IdealSequence(LabelClicks(s), {}, 0.2, 2)[0].gain, 0.25);
}

TEST(IdealSequence, RejectsBadDiscount) {
  const Session s = LabelClicks(SessionBuilder().Query(2).Click(1).Build());
  EXPECT_THROW(IdealSequence(s, {DuplicateMode::kIncludeDiscounted, 0.0}, 0.2, 1),
               DomainError);
}

TEST(IdealSequence, PolicyProperties) {
  for (const Session& s : testing::SmallSynthCorpus(300, 9, 0.8)) {
    const Session labelled = EnhanceLabels(s);
    const auto full = IdealSequence(labelled, {DuplicateMode::kIncludeFull, 0.5}, 0.2, 1);
    const auto disc =
        IdealSequence(labelled, {DuplicateMode::kIncludeDiscounted, 0.5}, 0.2, 1);
    const auto excl = IdealSequence(labelled, {DuplicateMode::kExclude, 0.5}, 0.2, 1);
    EXPECT_GE(TotalGain(full), TotalGain(disc));
    EXPECT_GE(TotalGain(disc), TotalGain(excl));
    std::set<std::string> ids;
    for (const IdealEntry& e : excl) EXPECT_TRUE(ids.insert(e.doc_id).second);
    for (const IdealEntry& e : full) EXPECT_GT(e.gain, 0.0);
  }
}

TEST(ReadLength, CeilingWithIntegerSnapping) {
  EXPECT_EQ(ReadLength(0.2, 500), 100);
  EXPECT_EQ(ReadLength(0.2, 15), 3);
  EXPECT_EQ(ReadLength(0.2, 16), 4);
  EXPECT_EQ(ReadLength(0.2, 1), 1);
  EXPECT_EQ(ReadLength(0.2, 0), 0);
  EXPECT_EQ(ReadLength(1.0, 7), 7);
}

TEST(DuplicateMode, CliSpelling) {
  EXPECT_EQ(ParseDuplicateMode("include"), DuplicateMode::kIncludeFull);
  EXPECT_EQ(ParseDuplicateMode("discount"), DuplicateMode::kIncludeDiscounted);
  EXPECT_EQ(ParseDuplicateMode("exclude"), DuplicateMode::kExclude);
  EXPECT_THROW(ParseDuplicateMode("drop"), DomainError);
}

}  // namespace
}  // namespace num
