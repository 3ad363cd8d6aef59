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

// Genuinely classical processes: an input object in one of eight
// deterministic states v_xi = (v1, v2, v3), v_k = +-1, evolves to an output
// state v_mu. The decision variable is the joint matrix
//   Omega'(xi, mu) = 2 P(xi) Omega(xi, mu),
// which totals 2. Rows index the input state xi, columns the output state mu.

#include <array>
#include <cstddef>

#include "gcpcert/tomography.hpp"

namespace gcpcert {

inline constexpr std::size_t kClassicalStates = 8;

// Assignment of state xi (0-based): xi = 0 -> (+,+,+), 1 -> (+,+,-), ...,
// 7 -> (-,-,-).
constexpr Sign classical_value(std::size_t xi, std::size_t property) {
  return ((xi >> (2 - property)) & 1U) == 0 ? Sign::Plus : Sign::Minus;
}

enum class MarginalMode {
  // Every input property is +1 with probability 1/2.
  Uniform,
  // Only non-negativity and total mass 2.
  Relaxed,
};

class JointTransitionMatrix {
 public:
  // Throws ValidationError unless entries are finite and >= 0, the total is
  // 2 within 1e-9 and, in Uniform mode, sum_{xi: v_i(xi)=s} sum_mu = 1.
  explicit JointTransitionMatrix(const std::array<double, 64>& entries,
                                 MarginalMode mode = MarginalMode::Uniform);

  static JointTransitionMatrix uniform();
  // Optimal joint probabilities for the default measurement setting.
  static JointTransitionMatrix published_optimum();

  double at(std::size_t xi, std::size_t mu) const { return w_[xi * 8 + mu]; }
  const std::array<double, 64>& entries() const { return w_; }
  MarginalMode mode() const { return mode_; }

  // Largest |sum_{xi: v_i=s} sum_mu Omega' - 1| over all (i, s).
  double marginal_deviation() const;

 private:
  std::array<double, 64> w_;
  MarginalMode mode_;
};

// Unnormalized masses M(i, s, j, t) = sum_{xi: v_i=s} sum_{mu: v_j=t} Omega'.
// Equals the conditional probabilities when the input marginals are uniform.
ConditionalProbTable raw_conditional_masses(const std::array<double, 64>& omega);

// P(v_j = t | v_i = s). Rejects matrices whose input marginals are not
// uniform unless `renormalize` is set, in which case each pair is divided by
// its mass 2 P(v_i = s).
ConditionalProbTable classical_conditional_probs(const JointTransitionMatrix& omega,
                                                 bool renormalize = false);

// Omega' -> table -> output states -> chi. Relaxed-mode matrices go through
// the unnormalized (linear) masses; the result is then not necessarily PSD.
ProcessMatrix gcp_process_matrix(const JointTransitionMatrix& omega, const ObservableTriple& obs);

// Linear pipeline on raw entries without any validation; the affine map
// behind the optimizer. Returns the 4x4 matrix of the block formula.
ComplexMatrix gcp_process_block(const std::array<double, 64>& omega, const ObservableTriple& obs);

// P(xi) = 1/2 sum_mu Omega'(xi, mu).
std::array<double, 8> marginal_distribution(const JointTransitionMatrix& omega);

// Hidden-variable form 2 sum_lambda P(v_i|lambda) P(lambda) P(v_j|lambda)
// with lambda = (xi, mu) and P(lambda) = Omega'/2. Agrees bit-for-bit with
// raw_conditional_masses.
ConditionalProbTable lhv_equivalent_probs(const JointTransitionMatrix& omega);

// Best classical (local hidden state) mimicry of teleportation, at the
// published four-decimal precision. Comparisons against it use 5e-4.
ProcessMatrix chi_c_constant();

inline constexpr double kChiCTolerance = 5e-4;

}  // namespace gcpcert
