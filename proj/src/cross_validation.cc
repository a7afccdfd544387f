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
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include "num/correlation.h"
#include "num/errors.h"
#include "num/random.h"

namespace num {
namespace {

// Runs body(i) for i in [0, n). Results must be written to slots indexed by
// i so the outcome does not depend on scheduling.
template <typename Body>
void ParallelFor(std::size_t n, unsigned threads, Body body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> workers;
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) body(i);
    });
  }
}

struct Scored {
  double value = 0.0;
  bool undefined = false;
};

Scored SafeScore(const MetricFamily& family, const Session& s,
                 const MetricParams& params) {
  try {
    return {family.score(s, params), false};
  } catch (const UndefinedMetricError&) {
    return {0.0, true};
  }
}

std::vector<double> Gather(std::span<const double> values,
                           std::span<const std::size_t> idx) {
  std::vector<double> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(values[i]);
  return out;
}

std::optional<double> TrySpearman(std::span<const double> xs,
                                  std::span<const double> ys) {
  try {
    return Spearman(xs, ys);
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

std::optional<double> TryKendall(std::span<const double> xs,
                                 std::span<const double> ys) {
  try {
    return Kendall(xs, ys);
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

void ScoreHeldOut(FoldResult& result, std::span<const double> scores,
                  std::span<const double> targets) {
  result.rho = TrySpearman(scores, targets);
  result.tau = TryKendall(scores, targets);
}

}  // namespace

std::vector<MetricParams> DcgGrid(const MetricParams& base) {
  std::vector<MetricParams> grid;
  for (int q = 11; q <= 50; ++q) {
    for (int r = 11; r <= 50; ++r) {
      MetricParams p = base;
      p.b_q = q / 10.0;
      p.b_r = r / 10.0;
      grid.push_back(p);
    }
  }
  return grid;
}

std::vector<MetricParams> RbpGrid(const MetricParams& base) {
  std::vector<MetricParams> grid;
  for (int bi = 1; bi <= 19; ++bi) {
    for (int pi = 1; pi <= 19; ++pi) {
      MetricParams p = base;
      p.b = bi / 20.0;
      p.p = pi / 20.0;
      grid.push_back(p);
    }
  }
  return grid;
}

MetricFamily MakeFamily(MetricKind kind, const MetricParams& base) {
  MetricFamily family;
  family.name = std::string(ToString(kind));
  family.score = [kind](const Session& s, const MetricParams& p) {
    return Evaluate(kind, s, p);
  };
  switch (kind) {
    case MetricKind::kSdcg:
    case MetricKind::kSdcgPerQuery:
    case MetricKind::kRsDcg:
      family.grid = DcgGrid(base);
      break;
    case MetricKind::kSrbp:
    case MetricKind::kSrbpPerQuery:
    case MetricKind::kRsRbp:
      family.grid = RbpGrid(base);
      break;
    case MetricKind::kNum:
    case MetricKind::kUMeasure:
    case MetricKind::kUMeasurePerQuery:
      family.mode = TuningMode::kEstimate;
      family.grid = {base};
      break;
    case MetricKind::kAp:
    case MetricKind::kLcd:
      family.grid = {base};
      break;
  }
  return family;
}

std::vector<std::vector<std::size_t>> FoldAssignment(std::size_t n, int folds,
                                                     std::uint64_t seed,
                                                     int repeat) {
  if (folds < 2) throw DomainError("need at least 2 folds");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(DeriveSeed(seed, static_cast<std::uint64_t>(repeat)));
  rng.Shuffle(std::span<std::size_t>(order));
  std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(folds));
  const std::size_t k = out.size();
  for (std::size_t f = 0; f < k; ++f) {
    out[f].assign(order.begin() + static_cast<std::ptrdiff_t>(f * n / k),
                  order.begin() + static_cast<std::ptrdiff_t>((f + 1) * n / k));
  }
  return out;
}

CrossValidationReport CrossValidate(std::span<const Session> sessions,
                                    std::span<const double> targets,
                                    const MetricFamily& family,
                                    const CrossValidationConfig& config) {
  if (targets.size() != sessions.size()) {
    throw DomainError("one target per session is required");
  }
  if (config.folds < 2) throw DomainError("need at least 2 folds");
  if (config.repeats < 1) throw DomainError("need at least 1 repeat");
  if (sessions.size() < static_cast<std::size_t>(config.folds)) {
    throw DomainError("fewer sessions (" + std::to_string(sessions.size()) +
                      ") than folds (" + std::to_string(config.folds) + ")");
  }
  if (family.grid.empty()) throw DomainError("empty parameter grid");

  CrossValidationReport report;
  report.metric = family.name;
  report.grid_searched = family.mode == TuningMode::kGridSearch;
  report.grid_size = report.grid_searched ? family.grid.size() : 0;

  // Grid scores do not depend on the fold, so every grid point is scored
  // once over the whole corpus.
  std::vector<std::vector<Scored>> grid_scores;
  if (report.grid_searched) {
    grid_scores.resize(family.grid.size());
    ParallelFor(family.grid.size(), config.threads, [&](std::size_t g) {
      std::vector<Scored>& row = grid_scores[g];
      row.reserve(sessions.size());
      for (const Session& s : sessions) row.push_back(SafeScore(family, s, family.grid[g]));
    });
  }

  for (int repeat = 0; repeat < config.repeats; ++repeat) {
    const auto folds = FoldAssignment(sessions.size(), config.folds, config.seed, repeat);
    for (int f = 0; f < config.folds; ++f) {
      const std::vector<std::size_t>& test = folds[static_cast<std::size_t>(f)];
      std::vector<std::size_t> train;
      for (int g = 0; g < config.folds; ++g) {
        if (g == f) continue;
        const auto& other = folds[static_cast<std::size_t>(g)];
        train.insert(train.end(), other.begin(), other.end());
      }
      std::sort(train.begin(), train.end());

      FoldResult result;
      result.repeat = repeat;
      result.fold = f;
      result.n_train = train.size();
      result.n_test = test.size();
      const std::vector<double> test_targets = Gather(targets, test);
      std::vector<double> test_scores;

      if (report.grid_searched) {
        const std::vector<double> train_targets = Gather(targets, train);
        std::vector<double> train_rho(family.grid.size(),
                                      -std::numeric_limits<double>::infinity());
        ParallelFor(family.grid.size(), config.threads, [&](std::size_t g) {
          std::vector<double> xs;
          xs.reserve(train.size());
          for (std::size_t i : train) xs.push_back(grid_scores[g][i].value);
          if (auto rho = TrySpearman(xs, train_targets)) train_rho[g] = *rho;
        });
        // First maximum in grid order wins ties.
        const std::size_t best = static_cast<std::size_t>(
            std::max_element(train_rho.begin(), train_rho.end()) - train_rho.begin());
        result.selected = family.grid[best];
        if (std::isfinite(train_rho[best])) result.train_rho = train_rho[best];
        for (std::size_t i : test) {
          test_scores.push_back(grid_scores[best][i].value);
          result.n_undefined += grid_scores[best][i].undefined ? 1 : 0;
        }
      } else {
        std::vector<Session> train_sessions;
        train_sessions.reserve(train.size());
        for (std::size_t i : train) train_sessions.push_back(sessions[i]);
        MetricParams params = family.grid.front();
        try {
          params.reformulation_len =
              EstimateRtLength(train_sessions, config.estimation).length;
        } catch (const DomainError&) {
          // Single-query training folds: keep the base reformulation length.
        }
        params.L = EstimateL(train_sessions, config.estimation, params);
        result.selected = params;
        std::vector<Scored> scored(test.size());
        ParallelFor(test.size(), config.threads, [&](std::size_t t) {
          scored[t] = SafeScore(family, sessions[test[t]], params);
        });
        for (const Scored& s : scored) {
          test_scores.push_back(s.value);
          result.n_undefined += s.undefined ? 1 : 0;
        }
      }
      ScoreHeldOut(result, test_scores, test_targets);
      report.folds.push_back(std::move(result));
    }
  }

  double rho_sum = 0.0, tau_sum = 0.0;
  for (const FoldResult& r : report.folds) {
    if (!r.rho || !r.tau) continue;
    rho_sum += *r.rho;
    tau_sum += *r.tau;
    ++report.n_scored_folds;
  }
  if (report.n_scored_folds > 0) {
    report.mean_rho = rho_sum / static_cast<double>(report.n_scored_folds);
    report.mean_tau = tau_sum / static_cast<double>(report.n_scored_folds);
  }
  return report;
}

CrossValidationReport CrossValidate(std::span<const Session> sessions,
                                    const MetricFamily& family,
                                    const CrossValidationConfig& config) {
  std::vector<double> targets;
  targets.reserve(sessions.size());
  for (const Session& s : sessions) {
    if (!s.satisfaction) {
      throw DomainError("session '" + s.session_id + "' has no satisfaction rating");
    }
    targets.push_back(static_cast<double>(*s.satisfaction));
  }
  return CrossValidate(sessions, targets, family, config);
}

}  // namespace num
