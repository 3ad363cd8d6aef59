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

// Linear-chain networks: composition of link processes, classical
// thresholds for N-node chains and classification of measured fidelities.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gcpcert/mimicry.hpp"
#include "gcpcert/tomography.hpp"

namespace gcpcert {

// Raw contraction on 4x4 matrices, a applied first:
//   out[(a,r),(b,c)] = 2 sum_{s,t} A[(a,s),(b,t)] B[(s,r),(t,c)].
// No trace requirement; this is the bilinear form behind compose().
ComplexMatrix compose_matrices(const ComplexMatrix& a, const ComplexMatrix& b);

// Process of "a, then b". Throws ValidationError if the result's trace
// deviates from 1 by more than kComposeTraceTolerance, which only happens
// for inputs that are far from trace preserving.
ProcessMatrix compose(const ProcessMatrix& a, const ProcessMatrix& b);

inline constexpr double kComposeTraceTolerance = 1e-3;

// Left fold chi o chi o ... o chi (n factors). Rejects n == 0.
ProcessMatrix compose_n(const ProcessMatrix& chi, std::size_t n);

// Independent route to compose(): run both channels on the six tomography
// inputs via apply_process and reassemble the process from the outputs.
ComplexMatrix compose_oracle_matrices(const ComplexMatrix& a, const ComplexMatrix& b);
ProcessMatrix compose_oracle(const ProcessMatrix& a, const ProcessMatrix& b);

enum class ThresholdMode {
  // Four-decimal constants and the closed-form N-node formula.
  Published,
  // Evaluated from an optimized chi_GC and its compositions.
  Recomputed,
};

struct ThresholdSet {
  double f_gc12 = 0.8536;
  double f_gc1given2 = 0.7500;
  double f_c12 = 0.6830;
  double f_gc1givenC2 = 0.5985;
  ThresholdMode mode = ThresholdMode::Published;
  // Set in Recomputed mode.
  std::optional<ProcessMatrix> chi_gc;
  // Tabulated f_gc1givenN for N = 1..size().
  std::vector<double> f_gc1givenN_table;

  static ThresholdSet published();
  // Thresholds from a given optimal two-node mimicry process.
  static ThresholdSet from_chi_gc(const ProcessMatrix& chi_gc);
  // Runs the optimizer at the given observables first.
  static ThresholdSet recomputed(const ObservableTriple& obs, const SolverConfig& cfg = {});

  // (1 + 2^(-N/2)) / 2 in Published mode; fidelity of the N-fold
  // composition of chi_gc in Recomputed mode.
  double f_gc1givenN(std::size_t n) const;

  bool strictly_decreasing() const {
    return f_gc12 > f_gc1given2 && f_gc1given2 > f_c12 && f_c12 > f_gc1givenC2;
  }
};

double closed_form_f_gc1givenN(std::size_t n);

// Fills f_gc1givenN_table for N = 1..n_max. Rejects n_max == 0.
ThresholdSet threshold_table(std::size_t n_max, ThresholdSet base = ThresholdSet::published());

const char* to_string(ThresholdMode mode);

struct FidelityInputs {
  std::optional<double> f_expt12;
  std::optional<double> f_expt1given2;
  std::optional<double> f_expt112;
};

struct CorrelationVerdict {
  FidelityInputs inputs;
  bool bell_nonlocal = false;
  bool nonbilocal = false;
  bool steering = false;
  bool nonlocality_steering = false;
  // First hierarchy row (in printed order) whose interval holds the
  // matching supplied fidelity, or "unbanded".
  std::string band = "unbanded";
  // Every matching row, for the cumulative reading of the hierarchy.
  std::vector<std::string> bands;
  ThresholdSet thresholds;
};

inline constexpr const char* kBandBell = "Bell nonlocality";
inline constexpr const char* kBandNonbilocal = "nonbilocality";
inline constexpr const char* kBandSteering = "steering";
inline constexpr const char* kBandHybrid = "nonlocality steering";
inline constexpr const char* kBandNone = "unbanded";

// Strict threshold tests. Needs at least one fidelity, each in [0, 1].
CorrelationVerdict classify(const FidelityInputs& inputs, const ThresholdSet& thresholds = ThresholdSet::published());

// Average state fidelity (2 f + 1) / 3 of a process with fidelity f.
double measure_prepare_conversion(double f_process);

}  // namespace gcpcert
