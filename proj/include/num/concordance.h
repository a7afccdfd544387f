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

#ifndef NUM_CONCORDANCE_H_
#define NUM_CONCORDANCE_H_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace num {

// A scored unit: one run's version of one session.
struct ItemKey {
  std::string session_id;
  std::string run_tag;

  auto operator<=>(const ItemKey&) const = default;
};

// Scores of one metric, keyed by (session_id, run_tag).
class ScoredSessionSet {
 public:
  ScoredSessionSet() = default;
  explicit ScoredSessionSet(std::string name) : name_(std::move(name)) {}

  // Throws ValidationError on a duplicate key.
  void Add(ItemKey key, double score);
  // Throws ValidationError when absent.
  double At(const ItemKey& key) const;
  bool Contains(const ItemKey& key) const { return scores_.contains(key); }

  const std::string& name() const { return name_; }
  std::size_t size() const { return scores_.size(); }
  const std::map<ItemKey, double>& scores() const { return scores_; }

 private:
  std::string name_;
  std::map<ItemKey, double> scores_;
};

struct ItemPair {
  ItemKey first;
  ItemKey second;
};

// Every unordered pair of distinct run tags sharing a session_id, in key
// order.
std::vector<ItemPair> AllRunPairs(const ScoredSessionSet& scores);

struct ConcordanceOptions {
  // When true, pairs tied under a golden standard are left out of that
  // standard's denominator instead of counting as agreement for neither.
  bool exclude_gold_ties = false;
};

struct GoldAgreement {
  std::string gold;
  // Disagreement pairs the fractions are computed over.
  std::size_t n_compared = 0;
  // Unset when n_compared == 0.
  std::optional<double> conc_a;
  std::optional<double> conc_b;
};

struct ConcordanceReport {
  std::string metric_a;
  std::string metric_b;
  std::size_t n_disagreements = 0;
  std::vector<GoldAgreement> golds;
};

// Among pairs where a and b express strictly opposite preferences, the
// fraction on which each agrees with every golden standard. Throws
// DomainError on an empty pair list and ValidationError when a pair spans
// two sessions or a score is missing.
ConcordanceReport Concordance(const ScoredSessionSet& a, const ScoredSessionSet& b,
                              std::span<const ScoredSessionSet> golds,
                              std::span<const ItemPair> pairs,
                              const ConcordanceOptions& options = {});

}  // namespace num

#endif  // NUM_CONCORDANCE_H_
