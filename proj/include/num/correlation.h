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

#ifndef NUM_CORRELATION_H_
#define NUM_CORRELATION_H_

#include <span>
#include <vector>

namespace num {

// 1-based ranks, tied values sharing the mean of their positions.
std::vector<double> AverageRanks(std::span<const double> xs);

// Spearman's rho: Pearson correlation of AverageRanks. Requires equal
// lengths >= 2; throws DomainError("undefined correlation") when either
// input is constant.
double Spearman(std::span<const double> xs, std::span<const double> ys);

// Kendall's tau-b in O(n log n) (Knight's merge-sort count). Same
// preconditions as Spearman; throws when every pair is tied in xs or in ys.
double Kendall(std::span<const double> xs, std::span<const double> ys);

}  // namespace num

#endif  // NUM_CORRELATION_H_
