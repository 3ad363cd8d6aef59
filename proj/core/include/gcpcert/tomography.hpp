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

// Single-qubit process tomography in the matrix-unit basis
//   E1 = |0><0|, E2 = |0><1|, E3 = |1><0|, E4 = |1><1|.
// A process matrix chi is stored with trace 1 and block structure
//   chi = 1/4 [[I + V3, V1 + i V2], [V1 - i V2, I - V3]],
// where I = rho(3,+) + rho(3,-) and Vi = rho(i,+) - rho(i,-) are built from
// the output states of the six Pauli-eigenstate inputs. Block (a, b) of chi
// is half the image of |a><b|, so chi_I = |phi+><phi+| (entries 1/2 at the
// four corners).

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "gcpcert/matrix.hpp"

namespace gcpcert {

enum class Sign : int { Plus = 1, Minus = -1 };

inline constexpr std::array<Sign, 2> kSigns = {Sign::Plus, Sign::Minus};

constexpr int sign_value(Sign s) { return static_cast<int>(s); }
constexpr std::size_t sign_index(Sign s) { return s == Sign::Plus ? 0 : 1; }

// Properties are indexed 0, 1, 2 for V1, V2, V3.
inline constexpr std::size_t kProperties = 3;

const ComplexMatrix& pauli_x();
const ComplexMatrix& pauli_y();
const ComplexMatrix& pauli_z();

// U(theta, phi) = [[e^{-i phi/2} cos(theta/2), e^{-i phi/2} sin(theta/2)],
//                  [-e^{i phi/2} sin(theta/2),  e^{i phi/2} cos(theta/2)]]
ComplexMatrix rotation_unitary(double theta, double phi);

// Receiver-side observables V_j = U X_j U^dagger for (X, Y, Z).
struct ObservableTriple {
  std::array<ComplexMatrix, 3> v;
  double theta = 0.0;
  double phi = 0.0;
};

// Angles are taken modulo 2 pi before building U.
ObservableTriple rotated_observables(double theta, double phi);

// Default measurement setting (theta = 0, phi = pi/4).
ObservableTriple default_observables();

// P(v_j = t | v_i = s) for input property i, input sign s, output property j
// and output sign t.
class ConditionalProbTable {
 public:
  double at(std::size_t i, Sign s, std::size_t j, Sign t) const { return p_[index(i, s, j, t)]; }
  double& at(std::size_t i, Sign s, std::size_t j, Sign t) { return p_[index(i, s, j, t)]; }

  // Binomial standard errors, present when estimated from counts.
  const std::optional<std::array<double, 36>>& standard_errors() const { return stderr_; }
  void set_standard_errors(const std::array<double, 36>& se) { stderr_ = se; }

  // Throws ValidationError naming the first offending cell: entries must lie
  // in [0, 1] and each (i, s, j) pair must sum to 1 within 1e-9.
  void validate() const;

  std::span<const double> raw() const { return p_; }

  static constexpr std::size_t index(std::size_t i, Sign s, std::size_t j, Sign t) {
    return ((i * 2 + sign_index(s)) * 3 + j) * 2 + sign_index(t);
  }

 private:
  std::array<double, 36> p_{};
  std::optional<std::array<double, 36>> stderr_;
};

std::string cell_name(std::size_t i, Sign s, std::size_t j);

// The six probabilities P(v_j = t | fixed input) for j = 0..2, t = +, -.
struct ConditionalProbRow {
  std::array<double, 6> p{};
  double at(std::size_t j, Sign t) const { return p[j * 2 + sign_index(t)]; }
};

ConditionalProbRow table_row(const ConditionalProbTable& table, std::size_t i, Sign s);

// Output density matrices indexed by (input property, input sign).
struct OutputStateSet {
  std::array<ComplexMatrix, 6> rho;
  const ComplexMatrix& at(std::size_t i, Sign s) const { return rho[i * 2 + sign_index(s)]; }
  ComplexMatrix& at(std::size_t i, Sign s) { return rho[i * 2 + sign_index(s)]; }
};

// Hermitian, trace-one 4x4 process matrix. Positivity is reported, not
// enforced: experimental tables can produce non-PSD matrices.
class ProcessMatrix {
 public:
  // Throws ValidationError unless m is 4x4, Hermitian within 1e-9 and has
  // trace 1 within `trace_tolerance`.
  explicit ProcessMatrix(ComplexMatrix m, double trace_tolerance = 1e-9);

  const ComplexMatrix& matrix() const { return chi_; }
  Complex operator()(std::size_t r, std::size_t c) const { return chi_(r, c); }

  bool is_physical(double tol = 1e-9) const { return is_psd(chi_, tol); }

  friend bool operator==(const ProcessMatrix&, const ProcessMatrix&) = default;

 private:
  ComplexMatrix chi_;
};

double process_fidelity(const ProcessMatrix& a, const ProcessMatrix& b);

// rho = 1/2 (I + sum_j sum_t t P(v_j = t) V_j). Rejects rows whose (j, +)
// and (j, -) entries do not sum to 1 within 1e-9.
ComplexMatrix reconstruct_output_state(const ConditionalProbRow& row, const ObservableTriple& obs);

// Same formula without the normalization gate. Internal use by pipelines
// whose masses are deliberately unnormalized.
ComplexMatrix reconstruct_output_state_unchecked(const ConditionalProbRow& row,
                                                 const ObservableTriple& obs);

ProcessMatrix assemble_process_matrix(const OutputStateSet& states);

// Unchecked assembly: returns the raw 4x4 matrix of the block formula.
ComplexMatrix assemble_process_block(const OutputStateSet& states);

OutputStateSet reconstruct_output_states(const ConditionalProbTable& table,
                                         const ObservableTriple& obs);

// validate -> reconstruct -> assemble.
ProcessMatrix tomograph(const ConditionalProbTable& table, const ObservableTriple& obs);

ProcessMatrix ideal_process_matrix();

// Input eigenstates |+>, |->, |R>, |L>, |0>, |1> as density matrices.
ComplexMatrix tomography_input_state(std::size_t i, Sign s);

// Channel action rho' = 2 sum_{ab} rho_ab chi_block(a, b); chi_I acts as the
// identity. Equivalent to rho' = 2 sum_mn chi_mn K_m rho K_n^dagger with
// K_{2a+r} = |r><a|.
ComplexMatrix apply_process(const ProcessMatrix& chi, const ComplexMatrix& rho);
ComplexMatrix apply_process(const ComplexMatrix& chi, const ComplexMatrix& rho);

// Ideal measurement statistics of each output state against the observables.
ConditionalProbTable measurement_table(const OutputStateSet& outputs, const ObservableTriple& obs);

struct OutcomeCounts {
  std::array<std::uint64_t, 36> n{};
  std::uint64_t at(std::size_t i, Sign s, std::size_t j, Sign t) const {
    return n[ConditionalProbTable::index(i, s, j, t)];
  }
  std::uint64_t& at(std::size_t i, Sign s, std::size_t j, Sign t) {
    return n[ConditionalProbTable::index(i, s, j, t)];
  }
};

// Relative frequencies with binomial standard errors sqrt(p (1 - p) / n).
// Throws ValidationError naming any (i, s, j) cell with zero total.
ConditionalProbTable estimate_conditional_probs(const OutcomeCounts& counts);

struct NormalizationReport {
  double max_adjustment = 0.0;  // largest |P(+) + P(-) - 1| before rescaling
  std::size_t adjusted_pairs = 0;
};

// Rescales each (i, s, j) pair to sum to 1. Entries must be finite and
// non-negative with a positive pair sum; otherwise ValidationError.
ConditionalProbTable renormalize_table(const ConditionalProbTable& raw, NormalizationReport* report);

// Eigenvalue-clipped and trace-renormalized process matrix.
ProcessMatrix project_to_physical(const ProcessMatrix& chi);

// Weights <b_s| chi |b_s> on the Pauli-Bell vectors b_s = (I x s)|phi+>, in
// the order I, X, Y, Z. For a Pauli channel these are the channel weights.
std::array<double, 4> pauli_weights(const ProcessMatrix& chi);

// Process matrix of rho -> s rho s^dagger for s in {I, X, Y, Z} (index 0..3).
ProcessMatrix pauli_process_matrix(std::size_t pauli);

}  // namespace gcpcert
