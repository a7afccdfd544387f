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

#ifndef NUM_GAIN_H_
#define NUM_GAIN_H_

#include <functional>

namespace num {

// Gain of an l-relevant document when H is the highest relevance level:
// (2^l - 1) / 2^H. Throws DomainError unless 0 <= l <= H and H >= 1.
double GainValue(int level, int highest_level);

// Maps (level, highest level) to a gain. GainValue is the default.
using GainFn = std::function<double(int level, int highest_level)>;

}  // namespace num

#endif  // NUM_GAIN_H_
