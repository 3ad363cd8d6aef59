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

// Density-matrix simulation of standard teleportation over Werner-noise
// resources, and the noise curves derived from it.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gcpcert/network.hpp"
#include "gcpcert/tomography.hpp"

namespace gcpcert {

// (1 - p)|phi+><phi+| + p I/4. Rejects p outside [0, 1].
ComplexMatrix werner_state(double p);

// Teleports one qubit state through `resource` (qubits 2 and 3): Bell
// measurement on qubits 1 and 2, Pauli correction on qubit 3, outcomes
// averaged with their probabilities. Throws InvariantError if the outcome
// probabilities do not sum to 1 within 1e-12.
ComplexMatrix teleport_state(const ComplexMatrix& rho, const ComplexMatrix& resource);

// Process matrix of teleportation through `resource`, tomographed with obs.
// Rejects a resource that is not a 4x4 PSD trace-one matrix.
ProcessMatrix teleport_channel(const ComplexMatrix& resource, const ObservableTriple& obs);

// Teleportation relayed hop by hop through every resource in order,
// tomographed end to end.
ProcessMatrix teleport_chain(const std::vector<ComplexMatrix>& resources, const ObservableTriple& obs);

struct NetworkSpec {
  // Noise intensity of each source, first link first.
  std::vector<double> links;

  void validate() const;
};

struct NetworkReport {
  std::vector<ProcessMatrix> link_chi;
  double f_expt1givenN = 0.0;
  double f_expt11N = 0.0;
  // Two-link networks only: end-to-end simulated relay and the
  // chi_expt1 o chi_expt12 fidelity built from it.
  std::optional<double> f_expt12;
  std::optional<double> f_expt112;
};

NetworkReport network_fidelities(const NetworkSpec& spec, const ObservableTriple& obs);

// fidelity(chi_1 o chi_12 o ... o chi_1N, chi_I) with chi_1k the fold of
// links 1..k. For one link this is the link fidelity.
double f_expt11N_of(const std::vector<ProcessMatrix>& link_chi);

enum class NoiseCriterion {
  Expt1givenN,  // F_expt1|N
  Expt11N,      // F_expt11N
};

NoiseCriterion parse_noise_criterion(const std::string& text);
const char* to_string(NoiseCriterion c);

// Fidelity of N equal-noise links under the given criterion.
double network_fidelity(NoiseCriterion criterion, std::size_t n, double p, const ObservableTriple& obs);

struct NoiseTolerance {
  std::size_t n = 0;
  double threshold = 0.0;
  // Largest p with fidelity above threshold; unset when saturated.
  std::optional<double> p_star;
  bool saturated = false;
};

inline constexpr double kBisectionTolerance = 1e-8;

// Bisection for F(p*) = threshold on [0, 1]. Saturated when there is no
// sign change over the interval.
NoiseTolerance noise_tolerance(NoiseCriterion criterion, std::size_t n, double threshold,
                               const ObservableTriple& obs);

struct NoiseToleranceCurve {
  std::vector<NoiseTolerance> points;
  // Whether p* is nonincreasing in N over the non-saturated points.
  bool monotone_nonincreasing = true;
};

// Threshold F_GC1|N from `thresholds` for each N in n_values.
NoiseToleranceCurve noise_tolerance_curve(NoiseCriterion criterion, const std::vector<std::size_t>& n_values,
                                          const ObservableTriple& obs,
                                          const ThresholdSet& thresholds = ThresholdSet::published(),
                                          unsigned threads = 0);

struct Fig3Row {
  double p = 0.0;
  double f_expt12 = 0.0;
  double f_expt1given2 = 0.0;
  double f_expt112 = 0.0;
  CorrelationVerdict verdict;
};

// Three-node network with both sources at noise p, for each grid value.
std::vector<Fig3Row> fig3_curves(const std::vector<double>& p_grid, const ObservableTriple& obs,
                                 const ThresholdSet& thresholds = ThresholdSet::published(),
                                 unsigned threads = 0);

}  // namespace gcpcert
