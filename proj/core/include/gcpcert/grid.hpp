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
#include <stdexcept>
#include <vector>

namespace gcpcert {

// n equally spaced points from a to b inclusive; n == 1 yields {a}.
inline std::vector<double> linspace(double a, double b, std::size_t n) {
  if (n == 0) throw std::invalid_argument("linspace: grid must be non-empty");
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = a;
    return out;
  }
  const double step = (b - a) / static_cast<double>(n - 1);
  for (std::size_t k = 0; k < n; ++k) out[k] = a + step * static_cast<double>(k);
  out[n - 1] = b;
  return out;
}

}  // namespace gcpcert
