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

#ifndef NUM_SESSION_H_
#define NUM_SESSION_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace num {

enum class RelevanceSource { kNone, kClick, kEnhanced };

std::string_view ToString(RelevanceSource source);

// One displayed result on a SERP. Lengths are in characters.
struct SerpResult {
  std::string doc_id;
  int rank = 1;
  std::int64_t snippet_len = 0;
  std::int64_t doc_len = 0;
  bool clicked = false;
  // Seconds since session start; present iff `clicked`.
  std::optional<double> click_time;
  std::optional<int> graded_label;
  // Session-level label, written by the enhancement module.
  bool session_relevant = false;
  RelevanceSource relevance_source = RelevanceSource::kNone;

  bool operator==(const SerpResult&) const = default;
};

struct SessionQuery {
  std::string query_id;
  // 1-based issue order within the session.
  int index = 1;
  double issue_time = 0.0;
  double end_time = 0.0;
  // Sorted by rank; ranks are exactly 1..N.
  std::vector<SerpResult> results;

  bool operator==(const SessionQuery&) const = default;
};

struct Session {
  std::string session_id;
  std::vector<SessionQuery> queries;
  std::optional<int> satisfaction;

  std::size_t num_queries() const { return queries.size(); }
  std::size_t num_clicks() const;

  bool operator==(const Session&) const = default;
};

// Position of a result inside a session.
struct ResultPosition {
  int query_index = 1;
  int rank = 1;

  auto operator<=>(const ResultPosition&) const = default;
};

// A click event, in the total order used throughout the library:
// (click_time, query_index, rank) ascending.
struct ClickEvent {
  double time = 0.0;
  ResultPosition position;
  const SerpResult* result = nullptr;
};

// Clicks of `session` in click order.
std::vector<ClickEvent> ClickOrder(const Session& session);

// Throws ValidationError if `session` breaks any data-model invariant.
void ValidateSession(const Session& session);

// Makes click times strictly increasing in click order: a click whose time
// ties (or precedes, after sorting) its predecessor is moved to the next
// representable double. Sessions that already satisfy the invariant are
// returned unchanged.
void BreakClickTimeTies(Session& session);

struct ParseOptions {
  // Substituted when a result has no "snippet_len" (or null).
  std::int64_t default_snippet_len = 80;
};

// Parses JSONL session records. Blank lines are skipped. Query indices are
// assigned from array order; results are sorted by rank. Throws ParseError
// (with line number and field) or ValidationError.
std::vector<Session> ParseSessions(std::istream& in,
                                   const ParseOptions& options = {});
std::vector<Session> ParseSessions(std::string_view text,
                                   const ParseOptions& options = {});

// One JSONL line (without the trailing newline). Session-level labels are
// written only when set.
std::string SerializeSession(const Session& session);
void WriteSessions(std::ostream& out, const std::vector<Session>& sessions);

// Drops good-abandonment sessions: exactly one query and no clicks.
std::vector<Session> FilterSessions(std::vector<Session> sessions);

}  // namespace num

#endif  // NUM_SESSION_H_
