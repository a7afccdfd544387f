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

#include "num/runs.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "num/errors.h"

namespace num {
namespace {

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i == line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

std::int64_t ParseInt(std::string_view text, std::size_t line, const char* field) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError(line, field, "expected an integer, got '" + std::string(text) + "'");
  }
  return value;
}

double ParseDouble(std::string_view text, std::size_t line, const char* field) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw ParseError(line, field, "expected a number, got '" + std::string(text) + "'");
  }
  return value;
}

std::string FormatDouble(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

std::string KeyName(const RankingKey& key) {
  return "(" + key.first + ", query " + std::to_string(key.second) + ")";
}

bool ByScoreThenId(const RankedDoc& a, const RankedDoc& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.doc_id < b.doc_id;
}

std::vector<RankedDoc> TopK(std::vector<RankedDoc> docs, int top_k) {
  std::sort(docs.begin(), docs.end(), ByScoreThenId);
  if (top_k >= 0 && docs.size() > static_cast<std::size_t>(top_k)) {
    docs.resize(static_cast<std::size_t>(top_k));
  }
  return docs;
}

// Union of the pools of queries >= m; a doc keeps its earliest-query score.
std::vector<RankedDoc> ExtendedPool(const CandidatePool& pool,
                                    const std::string& session_id,
                                    const std::vector<int>& indices, std::size_t from) {
  std::vector<RankedDoc> docs;
  std::set<std::string, std::less<>> seen;
  for (std::size_t i = from; i < indices.size(); ++i) {
    for (const Candidate& c : pool.Get(session_id, indices[i])) {
      if (seen.insert(c.doc_id).second) docs.push_back({c.doc_id, c.score});
    }
  }
  return docs;
}

void CheckTopK(int top_k) {
  if (top_k < 1) throw DomainError("top_k must be >= 1");
}

}  // namespace

Run ParseRun(std::istream& in) {
  Run run;
  bool have_tag = false;
  struct Row {
    std::int64_t rank;
    RankedDoc doc;
  };
  std::map<RankingKey, std::vector<Row>> rows;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    const auto fields = SplitFields(text);
    if (fields.empty() || fields[0].starts_with('#')) continue;
    if (fields.size() != 6) {
      throw ParseError(line, "<line>", "expected 6 fields, got " +
                                           std::to_string(fields.size()));
    }
    const std::int64_t query = ParseInt(fields[1], line, "query_index");
    if (query < 1) throw ParseError(line, "query_index", "must be >= 1");
    const std::int64_t rank = ParseInt(fields[3], line, "rank");
    if (rank < 1) throw ParseError(line, "rank", "must be >= 1");
    const double score = ParseDouble(fields[4], line, "score");
    const std::string tag(fields[5]);
    if (!have_tag) {
      run.run_tag = tag;
      have_tag = true;
    } else if (tag != run.run_tag) {
      throw ValidationError("line " + std::to_string(line) + ": run tag '" + tag +
                            "' differs from '" + run.run_tag + "'");
    }
    rows[{std::string(fields[0]), static_cast<int>(query)}].push_back(
        {rank, {std::string(fields[2]), score}});
  }
  for (auto& [key, list] : rows) {
    std::sort(list.begin(), list.end(),
              [](const Row& a, const Row& b) { return a.rank < b.rank; });
    std::set<std::string, std::less<>> docs;
    std::vector<RankedDoc> ranking;
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (i > 0 && list[i].rank == list[i - 1].rank) {
        throw ValidationError(KeyName(key) + ": duplicate rank " +
                              std::to_string(list[i].rank));
      }
      if (!docs.insert(list[i].doc.doc_id).second) {
        throw ValidationError(KeyName(key) + ": duplicate doc '" +
                              list[i].doc.doc_id + "'");
      }
      if (i > 0 && list[i].doc.score > list[i - 1].doc.score) {
        throw ValidationError(KeyName(key) + ": rank/score inversion at rank " +
                              std::to_string(list[i].rank));
      }
      ranking.push_back(list[i].doc);
    }
    run.rankings.emplace(key, std::move(ranking));
  }
  return run;
}

Run ParseRun(std::string_view text) {
  std::istringstream in{std::string(text)};
  return ParseRun(in);
}

void WriteRun(std::ostream& out, const Run& run) {
  for (const auto& [key, ranking] : run.rankings) {
    for (std::size_t i = 0; i < ranking.size(); ++i) {
      out << key.first << '\t' << key.second << '\t' << ranking[i].doc_id << '\t'
          << i + 1 << '\t' << FormatDouble(ranking[i].score) << '\t' << run.run_tag
          << '\n';
    }
  }
}

void CandidatePool::Add(const std::string& session_id, int query_index,
                        Candidate candidate) {
  std::vector<Candidate>& list = pools_[{session_id, query_index}];
  for (const Candidate& c : list) {
    if (c.doc_id == candidate.doc_id) {
      throw ValidationError(KeyName({session_id, query_index}) +
                            ": duplicate candidate '" + candidate.doc_id + "'");
    }
  }
  list.push_back(std::move(candidate));
}

const std::vector<Candidate>& CandidatePool::Get(const std::string& session_id,
                                                 int query_index) const {
  static const std::vector<Candidate> kEmpty;
  auto it = pools_.find({session_id, query_index});
  return it == pools_.end() ? kEmpty : it->second;
}

std::vector<int> CandidatePool::QueryIndices(const std::string& session_id) const {
  std::vector<int> out;
  for (auto it = pools_.lower_bound({session_id, 0});
       it != pools_.end() && it->first.first == session_id; ++it) {
    out.push_back(it->first.second);
  }
  return out;
}

std::vector<std::string> CandidatePool::SessionIds() const {
  std::vector<std::string> out;
  for (const auto& [key, list] : pools_) {
    if (out.empty() || out.back() != key.first) out.push_back(key.first);
  }
  return out;
}

const Candidate* CandidatePool::Find(const std::string& session_id,
                                     std::string_view doc_id) const {
  for (auto it = pools_.lower_bound({session_id, 0});
       it != pools_.end() && it->first.first == session_id; ++it) {
    for (const Candidate& c : it->second) {
      if (c.doc_id == doc_id) return &c;
    }
  }
  return nullptr;
}

CandidatePool ParsePool(std::istream& in) {
  CandidatePool pool;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    const auto fields = SplitFields(text);
    if (fields.empty() || fields[0].starts_with('#')) continue;
    if (fields.size() != 6) {
      throw ParseError(line, "<line>", "expected 6 fields, got " +
                                           std::to_string(fields.size()));
    }
    const std::int64_t query = ParseInt(fields[1], line, "query_index");
    if (query < 1) throw ParseError(line, "query_index", "must be >= 1");
    Candidate c;
    c.doc_id = std::string(fields[2]);
    c.score = ParseDouble(fields[3], line, "score");
    c.snippet_len = ParseInt(fields[4], line, "snippet_len");
    c.doc_len = ParseInt(fields[5], line, "doc_len");
    if (c.snippet_len < 0) throw ParseError(line, "snippet_len", "must be non-negative");
    if (c.doc_len < 0) throw ParseError(line, "doc_len", "must be non-negative");
    pool.Add(std::string(fields[0]), static_cast<int>(query), std::move(c));
  }
  return pool;
}

CandidatePool ParsePool(std::string_view text) {
  std::istringstream in{std::string(text)};
  return ParsePool(in);
}

void WritePool(std::ostream& out, const CandidatePool& pool) {
  for (const auto& [key, list] : pool.pools()) {
    for (const Candidate& c : list) {
      out << key.first << '\t' << key.second << '\t' << c.doc_id << '\t'
          << FormatDouble(c.score) << '\t' << c.snippet_len << '\t' << c.doc_len
          << '\n';
    }
  }
}

TransformMode ParseTransformMode(std::string_view name) {
  if (name == "original") return TransformMode::kOriginal;
  if (name == "ideal") return TransformMode::kIdeal;
  if (name == "diversified") return TransformMode::kDiversified;
  throw DomainError("unknown transform mode '" + std::string(name) + "'");
}

std::string_view ToString(TransformMode mode) {
  switch (mode) {
    case TransformMode::kOriginal:
      return "original";
    case TransformMode::kIdeal:
      return "ideal";
    case TransformMode::kDiversified:
      return "diversified";
  }
  return "original";
}

SessionRankings OriginalRunTransform(const CandidatePool& pool,
                                     const std::string& session_id, int top_k) {
  CheckTopK(top_k);
  SessionRankings out;
  for (int m : pool.QueryIndices(session_id)) {
    std::vector<RankedDoc> docs;
    for (const Candidate& c : pool.Get(session_id, m)) docs.push_back({c.doc_id, c.score});
    out[m] = TopK(std::move(docs), top_k);
  }
  return out;
}

SessionRankings IdealRunTransform(const CandidatePool& pool,
                                  const std::string& session_id, int top_k) {
  CheckTopK(top_k);
  const std::vector<int> indices = pool.QueryIndices(session_id);
  SessionRankings out;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    std::vector<RankedDoc> docs = ExtendedPool(pool, session_id, indices, i);
    if (docs.empty()) {
      throw ValidationError(KeyName({session_id, indices[i]}) + ": empty extended pool");
    }
    out[indices[i]] = TopK(std::move(docs), top_k);
  }
  return out;
}

SessionRankings DiversifiedRunTransform(const CandidatePool& pool,
                                        const std::string& session_id, int top_k,
                                        std::vector<std::string>* warnings) {
  CheckTopK(top_k);
  const std::vector<int> indices = pool.QueryIndices(session_id);
  std::set<std::string, std::less<>> presented;
  SessionRankings out;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    std::vector<RankedDoc> docs = ExtendedPool(pool, session_id, indices, i);
    std::erase_if(docs, [&](const RankedDoc& d) { return presented.contains(d.doc_id); });
    std::vector<RankedDoc> ranking = TopK(std::move(docs), top_k);
    if (ranking.size() < static_cast<std::size_t>(top_k) && warnings != nullptr) {
      warnings->push_back(KeyName({session_id, indices[i]}) + ": only " +
                          std::to_string(ranking.size()) + " candidates left");
    }
    for (const RankedDoc& d : ranking) presented.insert(d.doc_id);
    out[indices[i]] = std::move(ranking);
  }
  return out;
}

Run TransformRuns(const CandidatePool& pool, TransformMode mode, int top_k,
                  const std::string& run_tag, std::vector<std::string>* warnings) {
  Run run;
  run.run_tag = run_tag;
  for (const std::string& sid : pool.SessionIds()) {
    SessionRankings rankings;
    switch (mode) {
      case TransformMode::kOriginal:
        rankings = OriginalRunTransform(pool, sid, top_k);
        break;
      case TransformMode::kIdeal:
        rankings = IdealRunTransform(pool, sid, top_k);
        break;
      case TransformMode::kDiversified:
        rankings = DiversifiedRunTransform(pool, sid, top_k, warnings);
        break;
    }
    for (auto& [m, ranking] : rankings) run.rankings.emplace(RankingKey{sid, m}, std::move(ranking));
  }
  return run;
}

Session ProjectSession(const Session& original, const SessionRankings& rankings,
                       const CandidatePool& pool) {
  std::set<std::string, std::less<>> clicked;
  for (const SessionQuery& q : original.queries) {
    for (const SerpResult& r : q.results) {
      if (r.clicked) clicked.insert(r.doc_id);
    }
  }
  Session out;
  out.session_id = original.session_id;
  out.satisfaction = original.satisfaction;
  for (const SessionQuery& q : original.queries) {
    SessionQuery projected;
    projected.query_id = q.query_id;
    projected.index = q.index;
    projected.issue_time = q.issue_time;
    projected.end_time = q.end_time;
    auto it = rankings.find(q.index);
    if (it != rankings.end()) {
      const std::vector<RankedDoc>& ranking = it->second;
      const double span = std::max(0.0, q.end_time - q.issue_time);
      for (std::size_t i = 0; i < ranking.size(); ++i) {
        const Candidate* c = pool.Find(original.session_id, ranking[i].doc_id);
        if (c == nullptr) {
          throw ValidationError("session '" + original.session_id + "': doc '" +
                                ranking[i].doc_id + "' missing from the candidate pool");
        }
        SerpResult r;
        r.doc_id = c->doc_id;
        r.rank = static_cast<int>(i) + 1;
        r.snippet_len = c->snippet_len;
        r.doc_len = c->doc_len;
        r.clicked = clicked.contains(r.doc_id);
        if (r.clicked) {
          const double frac = static_cast<double>(i + 1) /
                              static_cast<double>(ranking.size() + 1);
          r.click_time = std::max(0.0, q.issue_time + span * frac);
        }
        projected.results.push_back(std::move(r));
      }
    }
    out.queries.push_back(std::move(projected));
  }
  BreakClickTimeTies(out);
  return out;
}

}  // namespace num
