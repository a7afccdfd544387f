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

#include "num/cross_validation.h"

#include <algorithm>
#include <set>
#include <vector>

#include "gtest/gtest.h"
#include "num/correlation.h"
#include "num/errors.h"
#include "num/estimation.h"
#include "test_util.h"

namespace num {
namespace {

constexpr double kTol = 1e-12;

std::vector<Session> Corpus(std::size_t n, std::uint64_t seed) {
  SynthConfig cfg;
  cfg.n_sessions = n;
  return SynthSessions(cfg, seed);
}

CrossValidationConfig SmallConfig() {
  CrossValidationConfig cfg;
  cfg.folds = 4;
  cfg.repeats = 3;
  cfg.seed = 17;
  cfg.threads = 2;
  return cfg;
}

TEST(FoldAssignment, PartitionsTheSessions) {
  const auto folds = FoldAssignment(103, 5, 1, 0);
  ASSERT_EQ(folds.size(), 5u);
  std::set<std::size_t> seen;
  for (const auto& f : folds) {
    EXPECT_GE(f.size(), 20u);
    EXPECT_LE(f.size(), 21u);
    for (std::size_t i : f) EXPECT_TRUE(seen.insert(i).second);
  }
  EXPECT_EQ(seen.size(), 103u);
  EXPECT_EQ(FoldAssignment(103, 5, 1, 0), folds);
  EXPECT_NE(FoldAssignment(103, 5, 1, 1), folds);
  EXPECT_THROW(FoldAssignment(10, 1, 1, 0), DomainError);
}

TEST(CrossValidate, MetricAgainstItselfIsPerfect) {
  const std::vector<Session> sessions = Corpus(200, 5);
  std::vector<double> targets;
  for (const Session& s : sessions) targets.push_back(AveragePrecisionGs(s));
  const MetricFamily family = MakeFamily(MetricKind::kAp, MetricParams{});
  const CrossValidationReport r = CrossValidate(sessions, targets, family, SmallConfig());
  EXPECT_EQ(r.folds.size(), 12u);
  EXPECT_EQ(r.n_scored_folds, 12u);
  EXPECT_NEAR(r.mean_rho, 1.0, kTol);
  EXPECT_NEAR(r.mean_tau, 1.0, kTol);
  EXPECT_TRUE(r.grid_searched);
  EXPECT_EQ(r.grid_size, 1u);
}

TEST(CrossValidate, OnePointGridMatchesManualFolds) {
  const std::vector<Session> sessions = Corpus(150, 6);
  const MetricFamily family = MakeFamily(MetricKind::kLcd, MetricParams{});
  const CrossValidationConfig cfg = SmallConfig();
  const CrossValidationReport r = CrossValidate(sessions, family, cfg);
  double sum = 0.0;
  std::size_t i = 0;
  for (int repeat = 0; repeat < cfg.repeats; ++repeat) {
    for (const auto& test : FoldAssignment(sessions.size(), cfg.folds, cfg.seed, repeat)) {
      std::vector<double> xs;
      std::vector<double> ys;
      for (std::size_t t : test) {
        xs.push_back(LastClickedDocumentGs(sessions[t]));
        ys.push_back(*sessions[t].satisfaction);
      }
      const double rho = Spearman(xs, ys);
      ASSERT_NEAR(*r.folds[i].rho, rho, kTol);
      ASSERT_NEAR(*r.folds[i].tau, Kendall(xs, ys), kTol);
      ASSERT_EQ(r.folds[i].n_test, test.size());
      ASSERT_EQ(r.folds[i].n_train, sessions.size() - test.size());
      sum += rho;
      ++i;
    }
  }
  EXPECT_NEAR(r.mean_rho, sum / static_cast<double>(i), kTol);
}

TEST(CrossValidate, GridSearchMatchesExhaustiveOracle) {
  const std::vector<Session> sessions = Corpus(120, 7);
  std::vector<double> targets;
  for (const Session& s : sessions) targets.push_back(SessionDcg(s, 2.0, 3.0));

  MetricFamily family = MakeFamily(MetricKind::kSdcg, MetricParams{});
  family.grid.clear();
  for (double bq : {1.5, 2.0, 4.0}) {
    for (double br : {1.5, 3.0, 5.0}) {
      MetricParams p;
      p.b_q = bq;
      p.b_r = br;
      family.grid.push_back(p);
    }
  }
  const CrossValidationConfig cfg = SmallConfig();
  const CrossValidationReport r = CrossValidate(sessions, targets, family, cfg);
  EXPECT_EQ(r.grid_size, 9u);

  std::size_t i = 0;
  for (int repeat = 0; repeat < cfg.repeats; ++repeat) {
    const auto folds = FoldAssignment(sessions.size(), cfg.folds, cfg.seed, repeat);
    for (int f = 0; f < cfg.folds; ++f) {
      std::vector<std::size_t> train;
      for (int g = 0; g < cfg.folds; ++g) {
        if (g != f) train.insert(train.end(), folds[g].begin(), folds[g].end());
      }
      double best_rho = -2.0;
      std::size_t best = 0;
      for (std::size_t k = 0; k < family.grid.size(); ++k) {
        std::vector<double> xs;
        std::vector<double> ys;
        for (std::size_t t : train) {
          xs.push_back(SessionDcg(sessions[t], family.grid[k].b_q, family.grid[k].b_r));
          ys.push_back(targets[t]);
        }
        const double rho = Spearman(xs, ys);
        if (rho > best_rho) {
          best_rho = rho;
          best = k;
        }
      }
      ASSERT_EQ(r.folds[i].selected.b_q, family.grid[best].b_q);
      ASSERT_EQ(r.folds[i].selected.b_r, family.grid[best].b_r);
      ASSERT_NEAR(*r.folds[i].train_rho, 1.0, kTol);
      ++i;
    }
  }
}

TEST(CrossValidate, EstimatedFamilyUsesTrainingFolds) {
  const std::vector<Session> sessions = Corpus(100, 8);
  const MetricFamily family = MakeFamily(MetricKind::kNum, MetricParams{});
  const CrossValidationConfig cfg = SmallConfig();
  const CrossValidationReport r = CrossValidate(sessions, family, cfg);
  EXPECT_FALSE(r.grid_searched);
  EXPECT_EQ(r.grid_size, 0u);

  const auto folds = FoldAssignment(sessions.size(), cfg.folds, cfg.seed, 0);
  std::vector<Session> train;
  for (int g = 1; g < cfg.folds; ++g) {
    for (std::size_t t : folds[g]) train.push_back(sessions[t]);
  }
  MetricParams expected;
  expected.reformulation_len = EstimateRtLength(train, cfg.estimation).length;
  expected.L = EstimateL(train, cfg.estimation, expected);
  EXPECT_EQ(r.folds[0].selected.L, expected.L);
  EXPECT_EQ(r.folds[0].selected.reformulation_len, expected.reformulation_len);
  EXPECT_FALSE(r.folds[0].train_rho.has_value());
}

TEST(CrossValidate, DeterministicAcrossThreadCounts) {
  const std::vector<Session> sessions = Corpus(80, 9);
  const MetricFamily family = MakeFamily(MetricKind::kSrbp, MetricParams{});
  CrossValidationConfig cfg = SmallConfig();
  cfg.repeats = 1;
  cfg.threads = 1;
  const CrossValidationReport one = CrossValidate(sessions, family, cfg);
  cfg.threads = 3;
  const CrossValidationReport three = CrossValidate(sessions, family, cfg);
  EXPECT_EQ(one.mean_rho, three.mean_rho);
  EXPECT_EQ(one.mean_tau, three.mean_tau);
  for (std::size_t i = 0; i < one.folds.size(); ++i) {
    EXPECT_EQ(one.folds[i].selected.p, three.folds[i].selected.p);
    EXPECT_EQ(one.folds[i].selected.b, three.folds[i].selected.b);
  }
}

TEST(CrossValidate, UndefinedScoresCountAsZero) {
  std::vector<Session> sessions = Corpus(40, 10);
  for (std::size_t i = 0; i < sessions.size(); i += 4) {
    for (SessionQuery& q : sessions[i].queries) {
      for (SerpResult& res : q.results) {
        res.clicked = false;
        res.click_time.reset();
      }
    }
  }
  const MetricFamily family = MakeFamily(MetricKind::kLcd, MetricParams{});
  const CrossValidationReport r = CrossValidate(sessions, family, SmallConfig());
  std::size_t undefined = 0;
  for (const FoldResult& f : r.folds) undefined += f.n_undefined;
  EXPECT_EQ(undefined, 10u * 3u);
}

TEST(CrossValidate, Errors) {
  const std::vector<Session> sessions = Corpus(3, 11);
  const MetricFamily family = MakeFamily(MetricKind::kAp, MetricParams{});
  EXPECT_THROW(CrossValidate(sessions, family, SmallConfig()), DomainError);
  std::vector<Session> unrated = Corpus(10, 11);
  unrated[2].satisfaction.reset();
  EXPECT_THROW(CrossValidate(unrated, family, SmallConfig()), DomainError);
  const std::vector<double> short_targets = {1.0};
  EXPECT_THROW(CrossValidate(unrated, short_targets, family, SmallConfig()),
               DomainError);
}

TEST(Grids, Sizes) {
  const auto dcg = DcgGrid(MetricParams{});
  EXPECT_EQ(dcg.size(), 1600u);
  EXPECT_EQ(dcg.front().b_q, 1.1);
  EXPECT_EQ(dcg.back().b_r, 5.0);
  const auto rbp = RbpGrid(MetricParams{});
  EXPECT_EQ(rbp.size(), 361u);
  EXPECT_EQ(rbp.front().p, 0.05);
  EXPECT_EQ(rbp.back().b, 0.95);
}

}  // namespace
}  // namespace num
