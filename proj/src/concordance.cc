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

#include "num/concordance.h"

#include <iterator>
#include <utility>

#include "num/errors.h"

namespace num {
namespace {

int Sign(double x) { return (x > 0.0) - (x < 0.0); }

int Preference(const ScoredSessionSet& s, const ItemPair& pair) {
  return Sign(s.At(pair.first) - s.At(pair.second));
}

std::string Describe(const ItemKey& key) {
  return "(" + key.session_id + ", " + key.run_tag + ")";
}

}  // namespace

void ScoredSessionSet::Add(ItemKey key, double score) {
  const std::string label = Describe(key);
  if (!scores_.emplace(std::move(key), score).second) {
    throw ValidationError("duplicate score for " + label + " in '" + name_ + "'");
  }
}

double ScoredSessionSet::At(const ItemKey& key) const {
  auto it = scores_.find(key);
  if (it == scores_.end()) {
    throw ValidationError("no score for " + Describe(key) + " in '" + name_ + "'");
  }
  return it->second;
}

std::vector<ItemPair> AllRunPairs(const ScoredSessionSet& scores) {
  std::vector<ItemPair> pairs;
  const auto& map = scores.scores();
  for (auto begin = map.begin(); begin != map.end();) {
    auto end = begin;
    while (end != map.end() && end->first.session_id == begin->first.session_id) ++end;
    for (auto i = begin; i != end; ++i) {
      for (auto j = std::next(i); j != end; ++j) pairs.push_back({i->first, j->first});
    }
    begin = end;
  }
  return pairs;
}

ConcordanceReport Concordance(const ScoredSessionSet& a, const ScoredSessionSet& b,
                              std::span<const ScoredSessionSet> golds,
                              std::span<const ItemPair> pairs,
                              const ConcordanceOptions& options) {
  if (pairs.empty()) throw DomainError("concordance needs at least one pair");
  ConcordanceReport report;
  report.metric_a = a.name();
  report.metric_b = b.name();

  struct Tally {
    std::size_t compared = 0;
    std::size_t agree_a = 0;
    std::size_t agree_b = 0;
  };
  std::vector<Tally> tallies(golds.size());
  for (const ItemPair& pair : pairs) {
    if (pair.first.session_id != pair.second.session_id) {
      throw ValidationError("pair " + Describe(pair.first) + " / " +
                            Describe(pair.second) + " spans two sessions");
    }
    const int pa = Preference(a, pair);
    const int pb = Preference(b, pair);
    if (pa * pb >= 0) continue;
    ++report.n_disagreements;
    for (std::size_t g = 0; g < golds.size(); ++g) {
      const int pg = Preference(golds[g], pair);
      if (pg == 0 && options.exclude_gold_ties) continue;
      Tally& t = tallies[g];
      ++t.compared;
      t.agree_a += pa == pg ? 1 : 0;
      t.agree_b += pb == pg ? 1 : 0;
    }
  }
  for (std::size_t g = 0; g < golds.size(); ++g) {
    GoldAgreement agreement;
    agreement.gold = golds[g].name();
    agreement.n_compared = tallies[g].compared;
    if (tallies[g].compared > 0) {
      const double n = static_cast<double>(tallies[g].compared);
      agreement.conc_a = static_cast<double>(tallies[g].agree_a) / n;
      agreement.conc_b = static_cast<double>(tallies[g].agree_b) / n;
    }
    report.golds.push_back(std::move(agreement));
  }
  return report;
}

}  // namespace num
