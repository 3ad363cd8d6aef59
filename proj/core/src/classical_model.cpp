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

#include "gcpcert/classical_model.hpp"

#include <cmath>
#include <sstream>

#include "gcpcert/errors.hpp"

namespace gcpcert {

namespace {

constexpr double kMassTolerance = 1e-9;

double indicator(std::size_t state, std::size_t property, Sign s) {
  return classical_value(state, property) == s ? 1.0 : 0.0;
}

}  // namespace

JointTransitionMatrix::JointTransitionMatrix(const std::array<double, 64>& entries, MarginalMode mode)
    : w_(entries), mode_(mode) {
  double total = 0.0;
  for (std::size_t k = 0; k < w_.size(); ++k) {
    if (!std::isfinite(w_[k]) || w_[k] < 0.0) {
      std::ostringstream msg;
      msg << "joint transition entry (" << (k / 8 + 1) << ", " << (k % 8 + 1)
          << ") must be finite and non-negative, got " << w_[k];
      throw ValidationError(msg.str());
    }
    total += w_[k];
  }
  if (std::abs(total - 2.0) > kMassTolerance) {
    std::ostringstream msg;
    msg << "joint transition matrix must total 2, got " << total;
    throw ValidationError(msg.str());
  }
  if (mode_ == MarginalMode::Uniform) {
    const double dev = marginal_deviation();
    if (dev > kMassTolerance) {
      std::ostringstream msg;
      msg << "joint transition matrix violates uniform input marginals by " << dev;
      throw ValidationError(msg.str());
    }
  }
}

JointTransitionMatrix JointTransitionMatrix::uniform() {
  std::array<double, 64> w;
  w.fill(2.0 / 64.0);
  return JointTransitionMatrix(w);
}

JointTransitionMatrix JointTransitionMatrix::published_optimum() {
  // Nonzero (xi, mu) pairs, 1-based, each 0.125.
  static constexpr std::array<std::array<int, 2>, 16> kSupport = {{
      {1, 1}, {1, 3}, {2, 2}, {2, 4}, {3, 3}, {3, 7}, {4, 4}, {4, 8},
      {5, 1}, {5, 5}, {6, 2}, {6, 6}, {7, 5}, {7, 7}, {8, 6}, {8, 8},
  }};
  std::array<double, 64> w{};
  for (const auto& [xi, mu] : kSupport) w[(xi - 1) * 8 + (mu - 1)] = 0.125;
  return JointTransitionMatrix(w);
}

double JointTransitionMatrix::marginal_deviation() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (Sign s : kSigns) {
      double mass = 0.0;
      for (std::size_t xi = 0; xi < 8; ++xi) {
        if (classical_value(xi, i) != s) continue;
        for (std::size_t mu = 0; mu < 8; ++mu) mass += w_[xi * 8 + mu];
      }
      worst = std::max(worst, std::abs(mass - 1.0));
    }
  return worst;
}

ConditionalProbTable raw_conditional_masses(const std::array<double, 64>& omega) {
  ConditionalProbTable table;
  for (std::size_t i = 0; i < 3; ++i)
    for (Sign s : kSigns)
      for (std::size_t j = 0; j < 3; ++j)
        for (Sign t : kSigns) {
          double mass = 0.0;
          for (std::size_t xi = 0; xi < 8; ++xi) {
            if (classical_value(xi, i) != s) continue;
            for (std::size_t mu = 0; mu < 8; ++mu)
              if (classical_value(mu, j) == t) mass += omega[xi * 8 + mu];
          }
          table.at(i, s, j, t) = mass;
        }
  return table;
}

ConditionalProbTable classical_conditional_probs(const JointTransitionMatrix& omega, bool renormalize) {
  ConditionalProbTable raw = raw_conditional_masses(omega.entries());
  const double dev = omega.marginal_deviation();
  if (dev > kMassTolerance) {
    if (!renormalize) {
      std::ostringstream msg;
      msg << "classical_conditional_probs: input marginals are not uniform (deviation " << dev
          << "); the masses are not probabilities";
      throw ValidationError(msg.str());
    }
    return renormalize_table(raw, nullptr);
  }
  return raw;
}

ComplexMatrix gcp_process_block(const std::array<double, 64>& omega, const ObservableTriple& obs) {
  const ConditionalProbTable masses = raw_conditional_masses(omega);
  OutputStateSet states;
  for (std::size_t i = 0; i < 3; ++i)
    for (Sign s : kSigns)
      states.at(i, s) = reconstruct_output_state_unchecked(table_row(masses, i, s), obs);
  return assemble_process_block(states);
}

ProcessMatrix gcp_process_matrix(const JointTransitionMatrix& omega, const ObservableTriple& obs) {
  if (omega.mode() == MarginalMode::Uniform) {
    return tomograph(classical_conditional_probs(omega), obs);
  }
  return ProcessMatrix(gcp_process_block(omega.entries(), obs));
}

std::array<double, 8> marginal_distribution(const JointTransitionMatrix& omega) {
  std::array<double, 8> p{};
  for (std::size_t xi = 0; xi < 8; ++xi) {
    double row = 0.0;
    for (std::size_t mu = 0; mu < 8; ++mu) row += omega.at(xi, mu);
    p[xi] = 0.5 * row;
  }
  return p;
}

ConditionalProbTable lhv_equivalent_probs(const JointTransitionMatrix& omega) {
  ConditionalProbTable table;
  for (std::size_t i = 0; i < 3; ++i)
    for (Sign s : kSigns)
      for (std::size_t j = 0; j < 3; ++j)
        for (Sign t : kSigns) {
          double sum = 0.0;
          for (std::size_t xi = 0; xi < 8; ++xi)
            for (std::size_t mu = 0; mu < 8; ++mu) {
              const double p_lambda = 0.5 * omega.at(xi, mu);
              sum += 2.0 * (indicator(xi, i, s) * p_lambda * indicator(mu, j, t));
            }
          table.at(i, s, j, t) = sum;
        }
  return table;
}

ProcessMatrix chi_c_constant() {
  ComplexMatrix chi(4, 4);
  chi(0, 0) = chi(3, 3) = 0.5 * 0.7887;
  chi(1, 1) = chi(2, 2) = 0.5 * 0.2113;
  chi(0, 3) = chi(3, 0) = 0.5 * 0.5774;
  return ProcessMatrix(std::move(chi), 1e-4);
}

}  // namespace gcpcert
