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

#include "num/session.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "num/errors.h"

namespace num {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// Field accessors that turn JSON type errors into ParseError with context.
class Fields {
 public:
  Fields(const json& object, std::size_t line, std::string path)
      : object_(object), line_(line), path_(std::move(path)) {
    if (!object_.is_object()) Fail("", "expected an object");
  }

  const json* Find(const std::string& key) const {
    auto it = object_.find(key);
    if (it == object_.end() || it->is_null()) return nullptr;
    return &*it;
  }

  const json& Require(const std::string& key) const {
    const json* value = Find(key);
    if (value == nullptr) Fail(key, "missing required field");
    return *value;
  }

  std::string String(const std::string& key) const {
    const json& value = Require(key);
    if (!value.is_string()) Fail(key, "expected a string");
    return value.get<std::string>();
  }

  double Number(const std::string& key) const {
    const json& value = Require(key);
    if (!value.is_number()) Fail(key, "expected a number");
    const double x = value.get<double>();
    if (!std::isfinite(x)) Fail(key, "expected a finite number");
    return x;
  }

  std::int64_t Integer(const std::string& key) const {
    return AsInteger(key, Require(key));
  }

  std::optional<std::int64_t> OptionalInteger(const std::string& key) const {
    const json* value = Find(key);
    if (value == nullptr) return std::nullopt;
    return AsInteger(key, *value);
  }

  std::optional<double> OptionalNumber(const std::string& key) const {
    if (Find(key) == nullptr) return std::nullopt;
    return Number(key);
  }

  bool Bool(const std::string& key) const {
    const json& value = Require(key);
    if (!value.is_boolean()) Fail(key, "expected a boolean");
    return value.get<bool>();
  }

  const json& Array(const std::string& key) const {
    const json& value = Require(key);
    if (!value.is_array()) Fail(key, "expected an array");
    return value;
  }

  [[noreturn]] void Fail(const std::string& key,
                         const std::string& message) const {
    std::string field = path_;
    if (!key.empty()) field += field.empty() ? key : "." + key;
    throw ParseError(line_, field.empty() ? "<record>" : field, message);
  }

 private:
  std::int64_t AsInteger(const std::string& key, const json& value) const {
    if (value.is_number_integer()) return value.get<std::int64_t>();
    if (value.is_number_float()) {
      const double x = value.get<double>();
      if (std::isfinite(x) && x == std::floor(x) &&
          std::abs(x) < 9.0e15) {
        return static_cast<std::int64_t>(x);
      }
    }
    Fail(key, "expected an integer");
  }

  const json& object_;
  std::size_t line_;
  std::string path_;
};

SerpResult ParseResult(const json& value, std::size_t line,
                       const std::string& path,
                       const ParseOptions& options) {
  Fields f(value, line, path);
  SerpResult r;
  r.doc_id = f.String("doc_id");
  const std::int64_t rank = f.Integer("rank");
  if (rank < 1 || rank > std::numeric_limits<int>::max()) {
    f.Fail("rank", "rank must be >= 1");
  }
  r.rank = static_cast<int>(rank);
  r.snippet_len =
      f.OptionalInteger("snippet_len").value_or(options.default_snippet_len);
  if (r.snippet_len < 0) f.Fail("snippet_len", "must be non-negative");
  r.doc_len = f.Integer("doc_len");
  if (r.doc_len < 0) f.Fail("doc_len", "must be non-negative");
  r.clicked = f.Bool("clicked");
  r.click_time = f.OptionalNumber("click_time");
  if (r.clicked != r.click_time.has_value()) {
    f.Fail("click_time", "must be present exactly when clicked is true");
  }
  if (r.click_time && *r.click_time < 0.0) {
    f.Fail("click_time", "must be >= 0");
  }
  if (auto label = f.OptionalInteger("graded_label")) {
    if (*label < 0 || *label > std::numeric_limits<int>::max()) {
      f.Fail("graded_label", "must be a non-negative integer");
    }
    r.graded_label = static_cast<int>(*label);
  }
  if (const json* relevant = f.Find("session_relevant")) {
    if (!relevant->is_boolean()) f.Fail("session_relevant", "expected a boolean");
    r.session_relevant = relevant->get<bool>();
  }
  if (f.Find("relevance_source") != nullptr) {
    const std::string source = f.String("relevance_source");
    if (source == "none") {
      r.relevance_source = RelevanceSource::kNone;
    } else if (source == "click") {
      r.relevance_source = RelevanceSource::kClick;
    } else if (source == "enhanced") {
      r.relevance_source = RelevanceSource::kEnhanced;
    } else {
      f.Fail("relevance_source", "expected none, click or enhanced");
    }
  }
  return r;
}

Session ParseRecord(const json& record, std::size_t line,
                    const ParseOptions& options) {
  Fields f(record, line, "");
  Session session;
  session.session_id = f.String("session_id");
  if (auto sat = f.OptionalInteger("satisfaction")) {
    session.satisfaction = static_cast<int>(*sat);
  }
  const json& queries = f.Array("queries");
  for (std::size_t qi = 0; qi < queries.size(); ++qi) {
    const std::string qpath = "queries[" + std::to_string(qi) + "]";
    Fields qf(queries[qi], line, qpath);
    SessionQuery query;
    query.query_id = qf.String("query_id");
    query.index = static_cast<int>(qi) + 1;
    query.issue_time = qf.Number("issue_time");
    query.end_time = qf.Number("end_time");
    const json& results = qf.Array("results");
    for (std::size_t ri = 0; ri < results.size(); ++ri) {
      query.results.push_back(ParseResult(
          results[ri], line, qpath + ".results[" + std::to_string(ri) + "]",
          options));
    }
    std::stable_sort(
        query.results.begin(), query.results.end(),
        [](const SerpResult& a, const SerpResult& b) { return a.rank < b.rank; });
    session.queries.push_back(std::move(query));
  }
  return session;
}

std::string RankError(const Session& session, const SessionQuery& query,
                      const std::string& what) {
  return "session '" + session.session_id + "' query " +
         std::to_string(query.index) + ": " + what;
}

}  // namespace

std::string_view ToString(RelevanceSource source) {
  switch (source) {
    case RelevanceSource::kNone:
      return "none";
    case RelevanceSource::kClick:
      return "click";
    case RelevanceSource::kEnhanced:
      return "enhanced";
  }
  return "none";
}

std::size_t Session::num_clicks() const {
  std::size_t clicks = 0;
  for (const SessionQuery& q : queries) {
    for (const SerpResult& r : q.results) clicks += r.clicked ? 1 : 0;
  }
  return clicks;
}

std::vector<ClickEvent> ClickOrder(const Session& session) {
  std::vector<ClickEvent> clicks;
  for (const SessionQuery& q : session.queries) {
    for (const SerpResult& r : q.results) {
      if (!r.clicked) continue;
      clicks.push_back({r.click_time.value_or(0.0), {q.index, r.rank}, &r});
    }
  }
  std::sort(clicks.begin(), clicks.end(),
            [](const ClickEvent& a, const ClickEvent& b) {
              if (a.time != b.time) return a.time < b.time;
              return a.position < b.position;
            });
  return clicks;
}

void ValidateSession(const Session& session) {
  for (std::size_t qi = 0; qi < session.queries.size(); ++qi) {
    const SessionQuery& query = session.queries[qi];
    if (query.index != static_cast<int>(qi) + 1) {
      throw ValidationError("session '" + session.session_id +
                            "': query indices must be 1..M in order");
    }
    std::vector<bool> seen(query.results.size() + 1, false);
    for (std::size_t ri = 0; ri < query.results.size(); ++ri) {
      const SerpResult& r = query.results[ri];
      if (r.rank < 1 || static_cast<std::size_t>(r.rank) > query.results.size()) {
        throw ValidationError(RankError(
            session, query, "rank " + std::to_string(r.rank) +
                                " outside 1.." +
                                std::to_string(query.results.size())));
      }
      if (seen[r.rank]) {
        throw ValidationError(
            RankError(session, query, "duplicate rank " + std::to_string(r.rank)));
      }
      seen[r.rank] = true;
      if (r.rank != static_cast<int>(ri) + 1) {
        throw ValidationError(RankError(session, query, "results not sorted by rank"));
      }
      if (r.snippet_len < 0 || r.doc_len < 0) {
        throw ValidationError(RankError(session, query, "negative length"));
      }
      if (r.clicked != r.click_time.has_value()) {
        throw ValidationError(RankError(
            session, query, "click_time must be present exactly when clicked"));
      }
      if (r.click_time && !(*r.click_time >= 0.0)) {
        throw ValidationError(RankError(session, query, "click_time must be >= 0"));
      }
      if (r.session_relevant && r.relevance_source == RelevanceSource::kNone) {
        throw ValidationError(
            RankError(session, query, "session_relevant result without a source"));
      }
    }
  }
  const std::vector<ClickEvent> clicks = ClickOrder(session);
  for (std::size_t i = 1; i < clicks.size(); ++i) {
    if (clicks[i].time == clicks[i - 1].time) {
      throw ValidationError("session '" + session.session_id +
                            "': click times must be distinct");
    }
  }
}

void BreakClickTimeTies(Session& session) {
  std::vector<ClickEvent> clicks = ClickOrder(session);
  double previous = -std::numeric_limits<double>::infinity();
  for (const ClickEvent& click : clicks) {
    double time = click.time;
    if (time <= previous) time = std::nextafter(previous, std::numeric_limits<double>::infinity());
    previous = time;
    SessionQuery& query = session.queries[click.position.query_index - 1];
    query.results[click.position.rank - 1].click_time = time;
  }
}

std::vector<Session> ParseSessions(std::istream& in,
                                   const ParseOptions& options) {
  std::vector<Session> sessions;
  std::string text;
  std::size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    json record;
    try {
      record = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ParseError(line_no, "<json>", e.what());
    }
    Session session = ParseRecord(record, line_no, options);
    // Results were sorted by rank above; ValidateSession reports duplicates
    // and gaps. Tie-breaking must run before the distinctness check.
    BreakClickTimeTies(session);
    try {
      ValidateSession(session);
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(line_no) + ": " + e.what());
    }
    sessions.push_back(std::move(session));
  }
  return sessions;
}

std::vector<Session> ParseSessions(std::string_view text,
                                   const ParseOptions& options) {
  std::istringstream in{std::string(text)};
  return ParseSessions(in, options);
}

std::string SerializeSession(const Session& session) {
  ordered_json record;
  record["session_id"] = session.session_id;
  record["satisfaction"] =
      session.satisfaction ? ordered_json(*session.satisfaction) : ordered_json();
  ordered_json queries = ordered_json::array();
  for (const SessionQuery& q : session.queries) {
    ordered_json query;
    query["query_id"] = q.query_id;
    query["issue_time"] = q.issue_time;
    query["end_time"] = q.end_time;
    ordered_json results = ordered_json::array();
    for (const SerpResult& r : q.results) {
      ordered_json result;
      result["doc_id"] = r.doc_id;
      result["rank"] = r.rank;
      result["snippet_len"] = r.snippet_len;
      result["doc_len"] = r.doc_len;
      result["clicked"] = r.clicked;
      result["click_time"] = r.click_time ? ordered_json(*r.click_time) : ordered_json();
      result["graded_label"] =
          r.graded_label ? ordered_json(*r.graded_label) : ordered_json();
      if (r.session_relevant || r.relevance_source != RelevanceSource::kNone) {
        result["session_relevant"] = r.session_relevant;
        result["relevance_source"] = std::string(ToString(r.relevance_source));
      }
      results.push_back(std::move(result));
    }
    query["results"] = std::move(results);
    queries.push_back(std::move(query));
  }
  record["queries"] = std::move(queries);
  return record.dump();
}

void WriteSessions(std::ostream& out, const std::vector<Session>& sessions) {
  for (const Session& s : sessions) out << SerializeSession(s) << '\n';
}

std::vector<Session> FilterSessions(std::vector<Session> sessions) {
  std::erase_if(sessions, [](const Session& s) {
    return s.num_queries() == 1 && s.num_clicks() == 0;
  });
  return sessions;
}

}  // namespace num
