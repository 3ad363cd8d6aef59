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

// Independent reference computations for the test suites. Nothing here
// calls the library's pipeline code paths being checked; channels are
// represented by explicit Kraus operators and classical models by direct
// summation over hidden states.

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "gcpcert/matrix.hpp"

namespace gcpcert::testing {

using Rng = std::mt19937_64;

ComplexMatrix random_complex_gaussian(Rng& rng, std::size_t rows, std::size_t cols);
ComplexMatrix random_hermitian(Rng& rng, std::size_t n);
// G G^dagger / tr, full rank with probability one.
ComplexMatrix random_density(Rng& rng, std::size_t n);

struct KrausChannel {
  std::vector<ComplexMatrix> ops;

  ComplexMatrix apply(const ComplexMatrix& rho) const;
  // 4x4 matrix with entry [(2a + r), (2b + c)] = E(|a><b|)_{rc} / 2.
  ComplexMatrix chi() const;
  // this first, then next.
  KrausChannel then(const KrausChannel& next) const;
};

// Four Kraus operators cut from a Haar-like 8x2 isometry.
KrausChannel random_channel(Rng& rng);
KrausChannel identity_channel();
KrausChannel depolarizing_channel(double p);
KrausChannel phase_damping_channel(double weight_identity);

// Valid Omega' with uniform input marginals: P(xi) = P(7 - xi) and random
// stochastic rows.
std::array<double, 64> random_joint_matrix(Rng& rng);

// P(v_j = t | v_i = s) straight from the hidden-state sum with
// P(xi | v_i = s) = P(xi)[v_i(xi) = s] / P(v_i = s). Index order matches
// ConditionalProbTable::index.
std::array<double, 36> conditional_probs_by_definition(const std::array<double, 64>& omega);

// 1 - 3 p / 4 for one Werner link; 1/4 + 3/4 (1 - p)^n for n of them.
double depolarizing_fidelity(double p, std::size_t links = 1);
// Solves 1/4 + 3/4 (1 - p)^links = threshold for p.
double depolarizing_crossing(double threshold, std::size_t links);

double max_abs(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace gcpcert::testing
