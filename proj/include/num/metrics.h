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

#ifndef NUM_METRICS_H_
#define NUM_METRICS_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "num/gain.h"
#include "num/params.h"
#include "num/session.h"
#include "num/trailtext.h"

namespace num {

// U-measure of a trailtext with linear decay max(0, 1 - end_pos / L).
double UMeasure(const Trailtext& tt, std::int64_t L);

// Intermediate values of one NUM evaluation, for debugging and reports.
struct NumBreakdown {
  Trailtext actual;
  Trailtext ideal;
  double u_actual = 0.0;
  double u_ideal = 0.0;
  double score = 0.0;
};

// Normalized U-measure: U(actual) / U(ideal), or U(actual) alone under the
// no_session_norm ablation. Throws UndefinedMetricError with code
// "no_clicks" or "l_too_small".
NumBreakdown NumDetailed(const Session& session, const MetricParams& params,
                         const GainFn& gain_fn = GainValue);
double Num(const Session& session, const MetricParams& params,
           const GainFn& gain_fn = GainValue);

// U-measure of the click trailtext (reformulation strings included unless
// ablated); no normalization, no enhancement.
double UMeasureSession(const Session& session, const MetricParams& params,
                       const GainFn& gain_fn = GainValue);

// Click-based baselines. A clicked result has gain gain_fn(1, H); unclicked
// results have gain 0. `n` is the SERP rank, `m` the query index.
double SessionDcg(const Session& session, double b_q, double b_r,
                  const GainFn& gain_fn = GainValue, int H = 1);
double SessionRbp(const Session& session, double p, double b,
                  const GainFn& gain_fn = GainValue, int H = 1);
double RecencyDcg(const Session& session, double lambda, double b_q, double b_r,
                  const GainFn& gain_fn = GainValue, int H = 1);
// Per-query factor e^{-lambda (M - m)} ((p - bp) / (1 - bp))^{m-1} with no
// leading (1 - p).
double RecencyRbp(const Session& session, double lambda, double p, double b,
                  const GainFn& gain_fn = GainValue, int H = 1);

double PerQueryNormalize(double score, std::size_t num_queries);

// Mean per-query click precision.
double AveragePrecisionGs(const Session& session);
// 1 / (results shown in earlier queries + rank of the last click by time).
// Throws UndefinedMetricError("no_clicks").
double LastClickedDocumentGs(const Session& session);

enum class MetricKind {
  kNum,
  kUMeasure,
  kUMeasurePerQuery,
  kSdcg,
  kSdcgPerQuery,
  kSrbp,
  kSrbpPerQuery,
  kRsDcg,
  kRsRbp,
  kAp,
  kLcd,
};

// CLI spelling: num, um, um-q, sdcg, sdcg-q, srbp, srbp-q, rsdcg, rsrbp, ap,
// lcd.
MetricKind ParseMetricKind(std::string_view name);
std::string_view ToString(MetricKind kind);
const std::vector<MetricKind>& AllMetricKinds();

// True for NUM and the U-measure variants, whose L and reformulation length
// are estimated rather than tuned.
bool IsUMeasureFamily(MetricKind kind);

double Evaluate(MetricKind kind, const Session& session,
                const MetricParams& params, const GainFn& gain_fn = GainValue);

}  // namespace num

#endif  // NUM_METRICS_H_
