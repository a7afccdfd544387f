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

#include "num/correlation.h"

#include <cmath>
#include <limits>
#include <vector>

#include "gtest/gtest.h"
#include "num/errors.h"
#include "num/random.h"
#include "oracles.h"

namespace num {
namespace {

constexpr double kTol = 1e-12;

std::vector<double> RandomVector(Rng& rng, std::size_t n, bool tied) {
  std::vector<double> v(n);
  for (double& x : v) {
    x = tied ? static_cast<double>(rng.UniformInt(0, 4)) : rng.Normal();
  }
  return v;
}

TEST(Spearman, Examples) {
  const std::vector<double> x = {1, 2, 3, 4, 5};
  EXPECT_NEAR(Spearman(x, std::vector<double>{2, 1, 4, 3, 5}), 0.8, kTol);
  EXPECT_NEAR(Spearman(x, std::vector<double>{5, 6, 7, 8, 7}), 0.8207826816681233,
              kTol);
  EXPECT_NEAR(Spearman(x, x), 1.0, kTol);
  EXPECT_NEAR(Spearman(x, std::vector<double>{5, 4, 3, 2, 1}), -1.0, kTol);
}

TEST(Kendall, Examples) {
  const std::vector<double> x = {1, 2, 3, 4, 5};
  EXPECT_NEAR(Kendall(x, std::vector<double>{2, 1, 4, 3, 5}), 0.6, kTol);
  EXPECT_NEAR(Kendall(std::vector<double>{1, 2, 3}, std::vector<double>{1, 3, 2}),
              1.0 / 3.0, kTol);
  EXPECT_NEAR(Kendall(x, std::vector<double>{5, 4, 3, 2, 1}), -1.0, kTol);
}

TEST(AverageRanks, Ties) {
  EXPECT_EQ(AverageRanks(std::vector<double>{10, 20, 10, 30}),
            (std::vector<double>{1.5, 3.0, 1.5, 4.0}));
}

TEST(Correlation, MatchesBruteForce) {
  Rng rng(2024);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.UniformInt(2, 50));
    const bool tied = trial % 2 == 0;
    std::vector<double> x = RandomVector(rng, n, tied);
    std::vector<double> y = RandomVector(rng, n, tied);
    x[0] = 100.0;  // never constant
    y[1 % n] = -100.0;
    ASSERT_EQ(AverageRanks(x), oracle::Ranks(x));
    ASSERT_NEAR(Spearman(x, y), oracle::Spearman(x, y), kTol);
    ASSERT_NEAR(Kendall(x, y), oracle::TauB(x, y), kTol);

    std::vector<double> reversed(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) reversed[i] = -x[i];
    ASSERT_NEAR(Spearman(x, reversed), -1.0, kTol);
    ASSERT_NEAR(Kendall(x, reversed), -1.0, kTol);
  }
}

TEST(Correlation, InvariantToIncreasingTransforms) {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.UniformInt(3, 40));
    std::vector<double> x = RandomVector(rng, n, trial % 3 == 0);
    std::vector<double> y = RandomVector(rng, n, false);
    x[0] = 9.0;
    std::vector<double> fx(n);
    for (std::size_t i = 0; i < n; ++i) fx[i] = std::exp(x[i]) + 3.0;
    ASSERT_NEAR(Spearman(x, y), Spearman(fx, y), kTol);
    ASSERT_NEAR(Kendall(x, y), Kendall(fx, y), kTol);
    ASSERT_NEAR(Spearman(x, y), Spearman(y, x), kTol);
    ASSERT_NEAR(Kendall(x, y), Kendall(y, x), kTol);
  }
}

TEST(Correlation, Errors) {
  const std::vector<double> x = {1, 2, 3};
  EXPECT_THROW(Spearman(x, std::vector<double>{1, 1, 1}), DomainError);
  EXPECT_THROW(Kendall(std::vector<double>{2, 2, 2}, x), DomainError);
  EXPECT_THROW(Spearman(x, std::vector<double>{1, 2}), DomainError);
  EXPECT_THROW(Kendall(std::vector<double>{1}, std::vector<double>{1}), DomainError);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(Spearman(x, std::vector<double>{1, nan, 2}), DomainError);
}

}  // namespace
}  // namespace num
