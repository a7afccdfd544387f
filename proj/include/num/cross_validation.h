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

#ifndef NUM_CROSS_VALIDATION_H_
#define NUM_CROSS_VALIDATION_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "num/estimation.h"
#include "num/metrics.h"
#include "num/params.h"
#include "num/session.h"

namespace num {

using ScoreFn = std::function<double(const Session&, const MetricParams&)>;

enum class TuningMode {
  // Pick the grid point with the best training-fold Spearman.
  kGridSearch,
  // Estimate L and the reformulation length on the training folds.
  kEstimate,
};

struct MetricFamily {
  std::string name;
  ScoreFn score;
  TuningMode mode = TuningMode::kGridSearch;
  // Candidates for kGridSearch; for kEstimate only grid.front() is used, as
  // the base point whose L and reformulation_len are replaced.
  std::vector<MetricParams> grid;
};

// b_q x b_r over {1.1, 1.2, ..., 5.0}, other fields from `base`.
std::vector<MetricParams> DcgGrid(const MetricParams& base);
// b x p over {0.05, 0.10, ..., 0.95}, other fields from `base`.
std::vector<MetricParams> RbpGrid(const MetricParams& base);

// The tuning protocol of a named metric: DCG-style metrics search DcgGrid,
// RBP-style metrics search RbpGrid, U-measure metrics estimate, AP/LCD use
// `base` as a one-point grid.
MetricFamily MakeFamily(MetricKind kind, const MetricParams& base);

struct CrossValidationConfig {
  int folds = 5;
  int repeats = 10;
  std::uint64_t seed = 0;
  // Worker threads for scoring; 0 uses the hardware concurrency.
  unsigned threads = 0;
  EstimationConfig estimation;
};

struct FoldResult {
  int repeat = 0;
  int fold = 0;
  std::size_t n_train = 0;
  std::size_t n_test = 0;
  MetricParams selected;
  // Best training Spearman (grid search only).
  std::optional<double> train_rho;
  // Unset when the held-out scores or targets are constant.
  std::optional<double> rho;
  std::optional<double> tau;
  // Held-out sessions whose metric was undefined and scored 0.
  std::size_t n_undefined = 0;
};

struct CrossValidationReport {
  std::string metric;
  bool grid_searched = false;
  std::size_t grid_size = 0;
  double mean_rho = 0.0;
  double mean_tau = 0.0;
  // Folds with a defined held-out correlation; the means run over these.
  std::size_t n_scored_folds = 0;
  std::vector<FoldResult> folds;
};

// Fold k of a repeat holds positions [k n / folds, (k + 1) n / folds) of the
// session order shuffled with DeriveSeed(seed, repeat).
std::vector<std::vector<std::size_t>> FoldAssignment(std::size_t n, int folds,
                                                     std::uint64_t seed,
                                                     int repeat);

// Repeated k-fold cross-validation against `targets` (one per session).
// Scores that raise UndefinedMetricError count as 0. Throws DomainError when
// there are fewer sessions than folds or the grid is empty.
CrossValidationReport CrossValidate(std::span<const Session> sessions,
                                    std::span<const double> targets,
                                    const MetricFamily& family,
                                    const CrossValidationConfig& config);

// Targets taken from the sessions' satisfaction ratings, which must all be
// present.
CrossValidationReport CrossValidate(std::span<const Session> sessions,
                                    const MetricFamily& family,
                                    const CrossValidationConfig& config);

}  // namespace num

#endif  // NUM_CROSS_VALIDATION_H_
