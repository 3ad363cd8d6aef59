// Copyright 2026 The gcpcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Published measurement tables at the default observables. Rows follow the
// input order V1+, V1-, V2+, V2-, V3+, V3-; columns the same order for the
// output properties.

#include <array>
#include <cmath>

namespace gcpcert::testing {

using Table6x6 = std::array<std::array<double, 6>, 6>;

inline Table6x6 ideal_teleportation_table() {
  const double hi = (1 + 1 / std::sqrt(2.0)) / 2;
  const double lo = (1 - 1 / std::sqrt(2.0)) / 2;
  return {{{hi, lo, lo, hi, 0.5, 0.5},
           {lo, hi, hi, lo, 0.5, 0.5},
           {hi, lo, hi, lo, 0.5, 0.5},
           {lo, hi, lo, hi, 0.5, 0.5},
           {0.5, 0.5, 0.5, 0.5, 1.0, 0.0},
           {0.5, 0.5, 0.5, 0.5, 0.0, 1.0}}};
}

inline Table6x6 best_mimicry_table() {
  return {{{0.75, 0.25, 0.25, 0.75, 0.5, 0.5},
           {0.25, 0.75, 0.75, 0.25, 0.5, 0.5},
           {0.75, 0.25, 0.75, 0.25, 0.5, 0.5},
           {0.25, 0.75, 0.25, 0.75, 0.5, 0.5},
           {0.5, 0.5, 0.5, 0.5, 1.0, 0.0},
           {0.5, 0.5, 0.5, 0.5, 0.0, 1.0}}};
}

}  // namespace gcpcert::testing
