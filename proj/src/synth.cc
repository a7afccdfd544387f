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

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "num/errors.h"
#include "num/random.h"

namespace num {
namespace {

constexpr std::uint64_t kPoolStream = 0x706f6f6cULL;

std::string DocName(std::size_t session, int serial) {
  return "s" + std::to_string(session) + "-d" + std::to_string(serial);
}

Session MakeSession(const SynthConfig& cfg, std::size_t index, Rng& rng) {
  const int N = cfg.results_per_query;
  int M = static_cast<int>(rng.UniformInt(cfg.min_queries, cfg.max_queries));
  const bool repeat = rng.Bernoulli(cfg.repeat_fraction) && cfg.max_queries >= 2;
  if (repeat) M = std::max(M, 2);

  // Document ids per query, with occasional repeats of earlier documents.
  int serial = 0;
  std::vector<std::vector<std::string>> docs(M);
  std::vector<std::string> shown;
  for (int m = 0; m < M; ++m) {
    std::set<std::string> in_query;
    for (int r = 0; r < N; ++r) {
      std::string id;
      if (!shown.empty() && rng.Bernoulli(cfg.overlap_prob)) {
        id = shown[static_cast<std::size_t>(
            rng.UniformInt(0, static_cast<std::int64_t>(shown.size()) - 1))];
      }
      if (id.empty() || in_query.contains(id)) id = DocName(index, serial++);
      in_query.insert(id);
      docs[m].push_back(id);
    }
    shown.insert(shown.end(), docs[m].begin(), docs[m].end());
  }

  std::vector<std::vector<bool>> clicks(M, std::vector<bool>(N, false));
  for (int m = 0; m < M; ++m) {
    double p = cfg.click_prob_top;
    for (int r = 0; r < N; ++r) {
      clicks[m][r] = rng.Bernoulli(p);
      p *= cfg.click_decay;
    }
  }

  if (repeat) {
    const int i = static_cast<int>(rng.UniformInt(0, M - 2));
    const int j = static_cast<int>(rng.UniformInt(i + 1, M - 1));
    const int ri = static_cast<int>(rng.UniformInt(0, N - 1));
    const int rj = static_cast<int>(rng.UniformInt(0, N - 1));
    const std::string doc = docs[i][ri];
    auto existing = std::find(docs[j].begin(), docs[j].end(), doc);
    if (existing != docs[j].end()) {
      std::swap(*existing, docs[j][rj]);
    } else {
      docs[j][rj] = doc;
    }
    // The document must stay unclicked wherever it appears up to query i.
    for (int m = 0; m <= i; ++m) {
      for (int r = 0; r < N; ++r) {
        if (docs[m][r] == doc) clicks[m][r] = false;
      }
    }
    clicks[j][rj] = true;
  }

  bool any_click = false;
  for (const auto& q : clicks) any_click |= std::find(q.begin(), q.end(), true) != q.end();
  if (!any_click && cfg.ensure_click) clicks[M - 1][0] = true;

  std::map<std::string, std::int64_t> doc_len;
  Session session;
  session.session_id = "synth-" + std::to_string(index);
  double clock = 0.0;
  double issue = 0.0;
  // Characters scanned up to the last click of each query.
  double effort = 0.0;
  for (int m = 0; m < M; ++m) {
    SessionQuery q;
    q.query_id = session.session_id + "-q" + std::to_string(m + 1);
    q.index = m + 1;
    q.issue_time = issue;
    clock = std::max(clock, issue) + rng.Uniform(1.0, 5.0);
    for (int r = 0; r < N; ++r) {
      SerpResult res;
      res.doc_id = docs[m][r];
      res.rank = r + 1;
      res.snippet_len = rng.UniformInt(cfg.snippet_len_min, cfg.snippet_len_max);
      auto [it, fresh] = doc_len.try_emplace(res.doc_id, 0);
      if (fresh) it->second = rng.UniformInt(cfg.doc_len_min, cfg.doc_len_max);
      res.doc_len = it->second;
      res.clicked = clicks[m][r];
      if (res.clicked) {
        clock += rng.Uniform(5.0, 60.0);
        res.click_time = clock;
      }
      q.results.push_back(std::move(res));
    }
    int lowest = 0;
    for (int r = 0; r < N; ++r) {
      if (clicks[m][r]) lowest = r + 1;
    }
    for (int r = 0; r < lowest; ++r) {
      effort += static_cast<double>(q.results[r].snippet_len);
      if (clicks[m][r]) effort += 0.2 * static_cast<double>(q.results[r].doc_len);
    }
    q.end_time = clock + rng.Uniform(2.0, 20.0);
    clock = q.end_time;
    if (rng.Bernoulli(cfg.negative_interval_frac)) {
      issue = q.end_time - rng.Uniform(0.5, std::min(30.0, q.end_time));
    } else {
      double u;
      do {
        u = rng.Uniform();
      } while (u == 0.0);
      issue = q.end_time - cfg.reformulation_mean_s * std::log(u);
    }
    session.queries.push_back(std::move(q));
  }
  // Satisfaction on a 1-5 scale: falls with reading effort and with
  // reformulations.
  const double latent = 1.2 + 3.8 * std::exp(-effort / 2500.0) - 0.3 * (M - 1) +
                        0.6 * rng.Normal();
  session.satisfaction = static_cast<int>(std::clamp(std::round(latent), 1.0, 5.0));
  return session;
}

}  // namespace

void SynthConfig::Validate() const {
  if (min_queries < 1 || max_queries < min_queries) {
    throw DomainError("query range must satisfy 1 <= min_queries <= max_queries");
  }
  if (results_per_query < 1) throw DomainError("results_per_query must be >= 1");
  if (!(click_prob_top >= 0.0 && click_prob_top <= 1.0) ||
      !(click_decay >= 0.0 && click_decay <= 1.0)) {
    throw DomainError("click probabilities must lie in [0, 1]");
  }
  if (snippet_len_min < 0 || snippet_len_max < snippet_len_min) {
    throw DomainError("invalid snippet length range");
  }
  if (doc_len_min < 0 || doc_len_max < doc_len_min) {
    throw DomainError("invalid document length range");
  }
  for (double f : {overlap_prob, repeat_fraction, negative_interval_frac}) {
    if (!(f >= 0.0 && f <= 1.0)) throw DomainError("fractions must lie in [0, 1]");
  }
  if (!(reformulation_mean_s > 0.0)) {
    throw DomainError("reformulation mean must be positive");
  }
  if (extra_candidates < 0) throw DomainError("extra_candidates must be >= 0");
}

std::vector<Session> SynthSessions(const SynthConfig& config, std::uint64_t seed) {
  config.Validate();
  std::vector<Session> sessions;
  sessions.reserve(config.n_sessions);
  for (std::size_t i = 0; i < config.n_sessions; ++i) {
    Rng rng(DeriveSeed(seed, i));
    sessions.push_back(MakeSession(config, i, rng));
  }
  return sessions;
}

CandidatePool SynthPool(const std::vector<Session>& sessions,
                        const SynthConfig& config, std::uint64_t seed) {
  config.Validate();
  CandidatePool pool;
  for (std::size_t i = 0; i < sessions.size(); ++i) {
    const Session& s = sessions[i];
    Rng rng(DeriveSeed(seed ^ kPoolStream, i));
    std::set<std::string> clicked;
    for (const SessionQuery& q : s.queries) {
      for (const SerpResult& r : q.results) {
        if (r.clicked) clicked.insert(r.doc_id);
      }
    }
    int serial = 0;
    for (const SessionQuery& q : s.queries) {
      for (const SerpResult& r : q.results) {
        const double bonus = clicked.contains(r.doc_id) ? 0.5 : 0.0;
        pool.Add(s.session_id, q.index,
                 {r.doc_id, rng.Uniform() + bonus, r.snippet_len, r.doc_len});
      }
      for (int e = 0; e < config.extra_candidates; ++e) {
        pool.Add(s.session_id, q.index,
                 {s.session_id + "-x" + std::to_string(serial++), rng.Uniform(),
                  rng.UniformInt(config.snippet_len_min, config.snippet_len_max),
                  rng.UniformInt(config.doc_len_min, config.doc_len_max)});
      }
    }
  }
  return pool;
}

}  // namespace num
