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

#include "num/metrics.h"

#include <algorithm>
#include <cmath>

#include "num/enhancement.h"
#include "num/errors.h"

namespace num {
namespace {

void CheckLogBase(double base, const char* name) {
  if (!(base > 1.0) || !std::isfinite(base)) {
    throw DomainError(std::string(name) + " must be a finite base > 1");
  }
}

void CheckUnitOpen(double x, const char* name) {
  if (!(x > 0.0 && x < 1.0)) {
    throw DomainError(std::string(name) + " must lie in (0, 1)");
  }
}

void CheckLambda(double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw DomainError("lambda must be a finite value >= 0");
  }
}

double ClickGain(const SerpResult& r, const GainFn& gain_fn, int H) {
  return r.clicked ? gain_fn(1, H) : 0.0;
}

// Inner sum of sDCG for one query, discounted by the query position.
double DcgQueryTerm(const SessionQuery& q, double log_bq, double log_br,
                    const GainFn& gain_fn, int H) {
  const double query_discount = 1.0 + std::log(q.index) / log_bq;
  double sum = 0.0;
  for (const SerpResult& r : q.results) {
    const double g = ClickGain(r, gain_fn, H);
    if (g == 0.0) continue;
    sum += g / (query_discount * (1.0 + std::log(r.rank) / log_br));
  }
  return sum;
}

// ((p - bp) / (1 - bp))^{m-1} * sum_n (bp)^{n-1} g(d_{m,n}).
double RbpQueryTerm(const SessionQuery& q, double p, double b,
                    const GainFn& gain_fn, int H) {
  const double bp = b * p;
  const double query_weight = std::pow((p - bp) / (1.0 - bp), q.index - 1);
  double sum = 0.0;
  for (const SerpResult& r : q.results) {
    const double g = ClickGain(r, gain_fn, H);
    if (g == 0.0) continue;
    sum += std::pow(bp, r.rank - 1) * g;
  }
  return query_weight * sum;
}

double RecencyWeight(double lambda, std::size_t M, int m) {
  return std::exp(-lambda * static_cast<double>(static_cast<int>(M) - m));
}

}  // namespace

double GainValue(int level, int highest_level) {
  if (highest_level < 1) throw DomainError("highest relevance level must be >= 1");
  if (level < 0 || level > highest_level) {
    throw DomainError("relevance level " + std::to_string(level) +
                      " outside [0, " + std::to_string(highest_level) + "]");
  }
  return (std::ldexp(1.0, level) - 1.0) / std::ldexp(1.0, highest_level);
}

void MetricParams::Validate() const {
  if (!(F > 0.0 && F <= 1.0)) throw DomainError("F must lie in (0, 1]");
  if (L <= 0) throw DomainError("L must be positive");
  if (H < 1) throw DomainError("H must be >= 1");
  if (reformulation_len < 0) {
    throw DomainError("reformulation length must be non-negative");
  }
  dup_policy.Validate();
  CheckLogBase(b_q, "b_q");
  CheckLogBase(b_r, "b_r");
  CheckUnitOpen(p, "p");
  CheckUnitOpen(b, "b");
  CheckLambda(lambda);
}

double UMeasure(const Trailtext& tt, std::int64_t L) {
  if (L <= 0) throw DomainError("L must be positive");
  const double horizon = static_cast<double>(L);
  double u = 0.0;
  for (const TrailString& s : tt.strings()) {
    if (s.gain == 0.0) continue;
    u += s.gain * std::max(0.0, 1.0 - static_cast<double>(s.end_pos) / horizon);
  }
  return u;
}

NumBreakdown NumDetailed(const Session& session, const MetricParams& params,
                         const GainFn& gain_fn) {
  params.Validate();
  if (session.num_clicks() == 0) {
    throw UndefinedMetricError("no_clicks", "NUM undefined: session has no clicks");
  }
  const Session labelled = params.ablation.no_enhancement
                               ? LabelClicks(session)
                               : EnhanceLabels(session);
  NumBreakdown out;
  out.actual = BuildActualTrailtext(labelled, params, gain_fn);
  const std::vector<IdealEntry> entries = IdealSequence(
      labelled, params.dup_policy, params.F, params.H, gain_fn);
  out.ideal = BuildIdealTrailtext(entries);
  out.u_actual = UMeasure(out.actual, params.L);
  out.u_ideal = UMeasure(out.ideal, params.L);
  if (params.ablation.no_session_norm) {
    out.score = out.u_actual;
    return out;
  }
  if (out.u_ideal == 0.0) {
    throw UndefinedMetricError("l_too_small", "L too small for session '" +
                                                  session.session_id + "'");
  }
  out.score = out.u_actual / out.u_ideal;
  return out;
}

double Num(const Session& session, const MetricParams& params,
           const GainFn& gain_fn) {
  return NumDetailed(session, params, gain_fn).score;
}

double UMeasureSession(const Session& session, const MetricParams& params,
                       const GainFn& gain_fn) {
  params.Validate();
  return UMeasure(BuildActualTrailtext(session, params, gain_fn), params.L);
}

double SessionDcg(const Session& session, double b_q, double b_r,
                  const GainFn& gain_fn, int H) {
  CheckLogBase(b_q, "b_q");
  CheckLogBase(b_r, "b_r");
  const double log_bq = std::log(b_q);
  const double log_br = std::log(b_r);
  double sum = 0.0;
  for (const SessionQuery& q : session.queries) {
    sum += DcgQueryTerm(q, log_bq, log_br, gain_fn, H);
  }
  return sum;
}

double SessionRbp(const Session& session, double p, double b,
                  const GainFn& gain_fn, int H) {
  CheckUnitOpen(p, "p");
  CheckUnitOpen(b, "b");
  double sum = 0.0;
  for (const SessionQuery& q : session.queries) {
    sum += RbpQueryTerm(q, p, b, gain_fn, H);
  }
  return (1.0 - p) * sum;
}

double RecencyDcg(const Session& session, double lambda, double b_q, double b_r,
                  const GainFn& gain_fn, int H) {
  CheckLogBase(b_q, "b_q");
  CheckLogBase(b_r, "b_r");
  CheckLambda(lambda);
  const double log_bq = std::log(b_q);
  const double log_br = std::log(b_r);
  const std::size_t M = session.num_queries();
  double sum = 0.0;
  for (const SessionQuery& q : session.queries) {
    sum += RecencyWeight(lambda, M, q.index) *
           DcgQueryTerm(q, log_bq, log_br, gain_fn, H);
  }
  return sum;
}

double RecencyRbp(const Session& session, double lambda, double p, double b,
                  const GainFn& gain_fn, int H) {
  CheckUnitOpen(p, "p");
  CheckUnitOpen(b, "b");
  CheckLambda(lambda);
  const std::size_t M = session.num_queries();
  double sum = 0.0;
  for (const SessionQuery& q : session.queries) {
    sum += RecencyWeight(lambda, M, q.index) * RbpQueryTerm(q, p, b, gain_fn, H);
  }
  return sum;
}

double PerQueryNormalize(double score, std::size_t num_queries) {
  if (num_queries == 0) throw DomainError("session has no queries");
  return score / static_cast<double>(num_queries);
}

double AveragePrecisionGs(const Session& session) {
  if (session.queries.empty()) throw DomainError("session has no queries");
  double sum = 0.0;
  for (const SessionQuery& q : session.queries) {
    if (q.results.empty()) {
      throw DomainError("query " + std::to_string(q.index) + " has no results");
    }
    const auto clicks = std::count_if(q.results.begin(), q.results.end(),
                                      [](const SerpResult& r) { return r.clicked; });
    sum += static_cast<double>(clicks) / static_cast<double>(q.results.size());
  }
  return sum / static_cast<double>(session.queries.size());
}

double LastClickedDocumentGs(const Session& session) {
  const std::vector<ClickEvent> clicks = ClickOrder(session);
  if (clicks.empty()) {
    throw UndefinedMetricError("no_clicks", "LCD undefined: session has no clicks");
  }
  const ResultPosition last = clicks.back().position;
  std::int64_t index = last.rank;
  for (const SessionQuery& q : session.queries) {
    if (q.index >= last.query_index) break;
    index += static_cast<std::int64_t>(q.results.size());
  }
  return 1.0 / static_cast<double>(index);
}

namespace {

struct MetricName {
  MetricKind kind;
  std::string_view name;
};

constexpr MetricName kMetricNames[] = {
    {MetricKind::kNum, "num"},          {MetricKind::kUMeasure, "um"},
    {MetricKind::kUMeasurePerQuery, "um-q"}, {MetricKind::kSdcg, "sdcg"},
    {MetricKind::kSdcgPerQuery, "sdcg-q"}, {MetricKind::kSrbp, "srbp"},
    {MetricKind::kSrbpPerQuery, "srbp-q"}, {MetricKind::kRsDcg, "rsdcg"},
    {MetricKind::kRsRbp, "rsrbp"},      {MetricKind::kAp, "ap"},
    {MetricKind::kLcd, "lcd"},
};

}  // namespace

MetricKind ParseMetricKind(std::string_view name) {
  for (const MetricName& m : kMetricNames) {
    if (m.name == name) return m.kind;
  }
  throw DomainError("unknown metric '" + std::string(name) + "'");
}

std::string_view ToString(MetricKind kind) {
  for (const MetricName& m : kMetricNames) {
    if (m.kind == kind) return m.name;
  }
  return "?";
}

const std::vector<MetricKind>& AllMetricKinds() {
  static const std::vector<MetricKind> kinds = [] {
    std::vector<MetricKind> out;
    for (const MetricName& m : kMetricNames) out.push_back(m.kind);
    return out;
  }();
  return kinds;
}

bool IsUMeasureFamily(MetricKind kind) {
  return kind == MetricKind::kNum || kind == MetricKind::kUMeasure ||
         kind == MetricKind::kUMeasurePerQuery;
}

double Evaluate(MetricKind kind, const Session& session,
                const MetricParams& params, const GainFn& gain_fn) {
  const int H = params.H;
  switch (kind) {
    case MetricKind::kNum:
      return Num(session, params, gain_fn);
    case MetricKind::kUMeasure:
      return UMeasureSession(session, params, gain_fn);
    case MetricKind::kUMeasurePerQuery:
      return PerQueryNormalize(UMeasureSession(session, params, gain_fn),
                               session.num_queries());
    case MetricKind::kSdcg:
      return SessionDcg(session, params.b_q, params.b_r, gain_fn, H);
    case MetricKind::kSdcgPerQuery:
      return PerQueryNormalize(SessionDcg(session, params.b_q, params.b_r, gain_fn, H),
                               session.num_queries());
    case MetricKind::kSrbp:
      return SessionRbp(session, params.p, params.b, gain_fn, H);
    case MetricKind::kSrbpPerQuery:
      return PerQueryNormalize(SessionRbp(session, params.p, params.b, gain_fn, H),
                               session.num_queries());
    case MetricKind::kRsDcg:
      return RecencyDcg(session, params.lambda, params.b_q, params.b_r, gain_fn, H);
    case MetricKind::kRsRbp:
      return RecencyRbp(session, params.lambda, params.p, params.b, gain_fn, H);
    case MetricKind::kAp:
      return AveragePrecisionGs(session);
    case MetricKind::kLcd:
      return LastClickedDocumentGs(session);
  }
  throw DomainError("unknown metric");
}

}  // namespace num
