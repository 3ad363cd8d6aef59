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

// Best genuinely classical mimicry of ideal teleportation:
//
//   maximize   tr(chi(Omega') chi_I)
//   subject to Omega' >= 0, sum Omega' = 2, [uniform input marginals],
//              chi(Omega') >= 0 (PSD)
//
// chi(.) is affine in Omega', so this is a small semidefinite program with
// 64 variables and a single 4x4 Hermitian cone.

#include <array>
#include <cstddef>
#include <vector>

#include "gcpcert/classical_model.hpp"
#include "gcpcert/tomography.hpp"

namespace gcpcert {

// Linear description of the mimicry task for one observable setting.
struct MimicryProblem {
  ObservableTriple obs;
  MarginalMode marginals = MarginalMode::Uniform;
  // F(Omega') = sum_k objective[k] Omega'_k on the total-mass-2 hyperplane.
  std::array<double, 64> objective{};
  // chi(Omega') = sum_k basis[k] Omega'_k on the same hyperplane.
  std::array<ComplexMatrix, 64> basis;
  std::vector<std::vector<double>> equality_rows;
  std::vector<double> equality_rhs;

  static MimicryProblem build(const ObservableTriple& obs,
                              MarginalMode marginals = MarginalMode::Uniform);

  double fidelity(const std::array<double, 64>& omega) const;
  ComplexMatrix chi(const std::array<double, 64>& omega) const;
};

// c(xi, mu), row-major 8x8, with F(Omega') = sum c Omega'. Obtained by
// pushing Omega' = 2 e_(xi,mu) through the forward pipeline and halving.
std::array<double, 64> objective_coefficients(const ObservableTriple& obs);

struct SolverConfig {
  // Target duality gap and feasibility tolerance.
  double tolerance = 1e-7;
  // Cap on Newton iterations summed over all barrier stages.
  std::size_t max_iterations = 200000;
  double barrier_growth = 10.0;
  double centering_tolerance = 1e-10;
  // Solutions are certified when a verified gap is at most this.
  double certify_gap = 1e-3;
  MarginalMode marginals = MarginalMode::Uniform;
};

struct SolverResult {
  JointTransitionMatrix omega_star = JointTransitionMatrix::uniform();
  ProcessMatrix chi = ideal_process_matrix();
  double value = 0.0;
  double psd_residual = 0.0;       // max(0, -lambda_min(chi))
  double polytope_residual = 0.0;  // max equality violation or negative entry
  double lp_bound = 0.0;           // PSD constraint dropped
  double lp_gap = 0.0;             // lp_bound - value
  double duality_gap = 0.0;        // barrier bound on optimum - value
  std::size_t iterations = 0;      // Newton steps
  bool converged = false;
  bool certified = false;
  // Objective at the end of each barrier stage (central-path points).
  std::vector<double> trajectory;
};

// Log-barrier path following on
//   t c.x + sum log x_k + log det chi(x)
// from the uniform matrix (chi = I/4). The central path ends at the
// analytic center of the optimal face, so degenerate optima resolve to a
// symmetric representative. The duality gap at a centered point is
// (64 + 4) / t.
SolverResult maximize_gcp_fidelity(const ObservableTriple& obs, const SolverConfig& cfg = {});
SolverResult maximize_gcp_fidelity(const MimicryProblem& problem, const SolverConfig& cfg = {});

struct LpBound {
  double value = 0.0;
  std::array<double, 64> omega{};
};

// Exact optimum of the relaxation without the PSD constraint (simplex).
LpBound lp_relaxation(const ObservableTriple& obs, MarginalMode marginals = MarginalMode::Uniform);
double lp_upper_bound(const ObservableTriple& obs, MarginalMode marginals = MarginalMode::Uniform);

struct ScanPoint {
  double theta = 0.0;
  double phi = 0.0;
  double f_gc = 0.0;
  bool certified = false;
};

struct ThresholdSurface {
  // Theta-major: points[i * phis.size() + j] is (thetas[i], phis[j]).
  std::vector<ScanPoint> points;
  double minimum = 0.0;
  // All points within 1e-6 of the minimum, ordered by (theta, phi).
  std::vector<ScanPoint> minimizers;
  std::size_t uncertified = 0;
};

// One solve per grid point over `threads` workers (0 = hardware
// concurrency). Results are merged by grid index, so the output does not
// depend on scheduling.
ThresholdSurface scan_thresholds(const std::vector<double>& thetas, const std::vector<double>& phis,
                                 const SolverConfig& cfg = {}, unsigned threads = 0);

struct NearestGcp {
  JointTransitionMatrix omega = JointTransitionMatrix::uniform();
  ProcessMatrix chi = ideal_process_matrix();
  double residual = 0.0;  // Frobenius distance to the target
  std::size_t iterations = 0;
};

// Least-squares fit min |chi(Omega') - target|_F over the transition
// polytope: accelerated projected gradient with Dykstra projections.
NearestGcp nearest_gcp(const ProcessMatrix& target, const ObservableTriple& obs,
                       MarginalMode marginals = MarginalMode::Uniform, std::size_t max_iterations = 20000,
                       double tolerance = 1e-12);

// Euclidean projection onto {x >= 0, A x = b} by Dykstra's alternating
// projections.
std::array<double, 64> project_onto_polytope(const std::array<double, 64>& y,
                                             const MimicryProblem& problem,
                                             std::size_t max_iterations = 5000,
                                             double tolerance = 1e-14);

}  // namespace gcpcert
