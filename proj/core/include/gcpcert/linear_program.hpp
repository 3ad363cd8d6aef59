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

#include <cstddef>
#include <span>
#include <vector>

namespace gcpcert {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct LpResult {
  LpStatus status = LpStatus::IterationLimit;
  std::vector<double> x;
  double value = 0.0;
  std::size_t pivots = 0;
};

// maximize c.x subject to A x = b, x >= 0.
//
// Dense two-phase simplex with Bland's rule, so it terminates on the heavily
// degenerate polytopes used here and is deterministic. Intended for a few
// dozen variables and constraints.
LpResult maximize_lp(std::span<const double> c, const std::vector<std::vector<double>>& a_eq,
                     std::span<const double> b_eq, std::size_t max_pivots = 100000);

}  // namespace gcpcert
