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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "gcpcert/classical_model.hpp"
#include "gcpcert/errors.hpp"
#include "gcpcert/tomography.hpp"
#include "oracles.hpp"
#include "tables.hpp"

namespace gcpcert {
namespace {

using testing::Rng;
constexpr double kInvSqrt2 = 0.70710678118654752440;

ComplexMatrix projector(Complex a, Complex b) {
  const ComplexMatrix v{{a}, {b}};
  return v * v.adjoint();
}

OutputStateSet ideal_outputs() {
  OutputStateSet s;
  for (std::size_t i = 0; i < 3; ++i)
    for (Sign sg : kSigns) s.at(i, sg) = tomography_input_state(i, sg);
  return s;
}

OutputStateSet outputs_of(const testing::KrausChannel& ch) {
  OutputStateSet s;
  for (std::size_t i = 0; i < 3; ++i)
    for (Sign sg : kSigns) s.at(i, sg) = ch.apply(tomography_input_state(i, sg));
  return s;
}

void expect_observable_algebra(const ObservableTriple& obs) {
  const ComplexMatrix id = ComplexMatrix::identity(2);
  for (std::size_t j = 0; j < 3; ++j) {
    EXPECT_LE(std::abs(obs.v[j].trace()), 1e-10);
    EXPECT_LE(max_abs_diff(obs.v[j] * obs.v[j], id), 1e-10);
    const HermitianSpectrum s = hermitian_eigen(obs.v[j]);
    EXPECT_NEAR(s.eigenvalues[0], -1.0, 1e-10);
    EXPECT_NEAR(s.eigenvalues[1], 1.0, 1e-10);
    for (std::size_t k = j + 1; k < 3; ++k) {
      const ComplexMatrix ac = obs.v[j] * obs.v[k] + obs.v[k] * obs.v[j];
      EXPECT_LE(max_abs_diff(ac, ComplexMatrix::zeros(2, 2)), 1e-10);
    }
  }
}

TEST(RotatedObservables, DefaultSettingMatchesExplicitMatrix) {
  const ObservableTriple obs = rotated_observables(0.0, std::numbers::pi / 4);
  const ComplexMatrix v1{{0.0, Complex(kInvSqrt2, -kInvSqrt2)}, {Complex(kInvSqrt2, kInvSqrt2), 0.0}};
  EXPECT_LE(max_abs_diff(obs.v[0], v1), 1e-12);
  EXPECT_LE(max_abs_diff(obs.v[2], pauli_z()), 1e-12);
  EXPECT_EQ(default_observables().v[0], obs.v[0]);
}

TEST(RotatedObservables, ZeroAnglesArePaulis) {
  const ObservableTriple obs = rotated_observables(0.0, 0.0);
  EXPECT_LE(max_abs_diff(obs.v[0], pauli_x()), 1e-12);
  EXPECT_LE(max_abs_diff(obs.v[1], pauli_y()), 1e-12);
  EXPECT_LE(max_abs_diff(obs.v[2], pauli_z()), 1e-12);
}

TEST(RotatedObservables, AlgebraOverAngles) {
  for (double theta : {0.0, 0.4, 1.3, std::numbers::pi, 5.0, -2.0})
    for (double phi : {0.0, 0.7, std::numbers::pi / 4, 3.1, 8.0}) expect_observable_algebra(rotated_observables(theta, phi));
}

TEST(RotatedObservables, AnglesTakenModuloTwoPi) {
  const ObservableTriple a = rotated_observables(0.9, 0.3);
  const ObservableTriple b = rotated_observables(0.9 + 2 * std::numbers::pi, 0.3 - 2 * std::numbers::pi);
  for (std::size_t j = 0; j < 3; ++j) EXPECT_LE(max_abs_diff(a.v[j], b.v[j]), 1e-12);
}

TEST(ReconstructOutputState, PlusInputOfIdealTable) {
  ConditionalProbRow row;
  const double p1 = (1 + kInvSqrt2) / 2, p2 = (1 - kInvSqrt2) / 2;
  row.p = {p1, 1 - p1, p2, 1 - p2, 0.5, 0.5};
  const ComplexMatrix rho = reconstruct_output_state(row, default_observables());
  EXPECT_LE(max_abs_diff(rho, projector(kInvSqrt2, kInvSqrt2)), 1e-12);
}

TEST(ReconstructOutputState, ZeroInputAndMaximallyMixed) {
  ConditionalProbRow zero;
  zero.p = {0.5, 0.5, 0.5, 0.5, 1.0, 0.0};
  EXPECT_LE(max_abs_diff(reconstruct_output_state(zero, default_observables()), projector(1.0, 0.0)), 1e-12);
  ConditionalProbRow half;
  half.p.fill(0.5);
  EXPECT_LE(max_abs_diff(reconstruct_output_state(half, default_observables()),
                         Complex(0.5) * ComplexMatrix::identity(2)),
            1e-15);
}

TEST(ReconstructOutputState, RejectsUnnormalizedRow) {
  ConditionalProbRow row;
  row.p = {0.6, 0.6, 0.5, 0.5, 0.5, 0.5};
  EXPECT_THROW(reconstruct_output_state(row, default_observables()), ValidationError);
}

TEST(AssembleProcessMatrix, IdealOutputsGiveCornerForm) {
  const ProcessMatrix chi = assemble_process_matrix(ideal_outputs());
  EXPECT_EQ(chi, ideal_process_matrix());
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) {
      const bool corner = (r == 0 || r == 3) && (c == 0 || c == 3);
      EXPECT_NEAR(std::abs(chi(r, c) - Complex(corner ? 0.5 : 0.0)), 0.0, 1e-12);
    }
}

TEST(AssembleProcessMatrix, MixedOutputsGiveQuarterIdentity) {
  OutputStateSet s;
  for (auto& r : s.rho) r = Complex(0.5) * ComplexMatrix::identity(2);
  EXPECT_LE(max_abs_diff(assemble_process_matrix(s).matrix(), Complex(0.25) * ComplexMatrix::identity(4)), 1e-15);
}

TEST(AssembleProcessMatrix, OptimalClassicalTableGivesPhaseDampedForm) {
  const ConditionalProbTable table = classical_conditional_probs(JointTransitionMatrix::published_optimum());
  const ProcessMatrix chi = tomograph(table, default_observables());
  EXPECT_NEAR(chi(0, 0).real(), 0.5, 1e-4);
  EXPECT_NEAR(chi(3, 3).real(), 0.5, 1e-4);
  EXPECT_NEAR(chi(0, 3).real(), 0.5 * kInvSqrt2, 1e-4);
  EXPECT_NEAR(chi(3, 0).real(), 0.5 * kInvSqrt2, 1e-4);
  EXPECT_NEAR(std::abs(chi(1, 1)) + std::abs(chi(2, 2)) + std::abs(chi(1, 2)), 0.0, 1e-4);
}

TEST(IdealProcessMatrix, Properties) {
  const ProcessMatrix chi = ideal_process_matrix();
  EXPECT_NEAR(chi.matrix().trace().real(), 1.0, 1e-15);
  EXPECT_TRUE(chi.is_physical());
  EXPECT_DOUBLE_EQ(process_fidelity(chi, chi), 1.0);
}

TEST(ApplyProcess, IdentityActsTrivially) {
  Rng rng(1);
  for (int k = 0; k < 20; ++k) {
    const ComplexMatrix rho = testing::random_density(rng, 2);
    EXPECT_LE(max_abs_diff(apply_process(ideal_process_matrix(), rho), rho), 1e-14);
  }
}

TEST(ApplyProcess, PhaseDampedOnPlusState) {
  ComplexMatrix gc(4, 4);
  gc(0, 0) = gc(3, 3) = 0.5;
  gc(0, 3) = gc(3, 0) = 0.5 * kInvSqrt2;
  const ComplexMatrix plus = projector(kInvSqrt2, kInvSqrt2);
  const ComplexMatrix minus = projector(kInvSqrt2, -kInvSqrt2);
  const ComplexMatrix expected = Complex(0.853553) * plus + Complex(0.146447) * minus;
  EXPECT_LE(max_abs_diff(apply_process(ProcessMatrix(gc), plus), expected), 1e-6);
}

TEST(ApplyProcess, FullyMixingProcess) {
  Rng rng(2);
  const ComplexMatrix mix = Complex(0.25) * ComplexMatrix::identity(4);
  for (int k = 0; k < 20; ++k)
    EXPECT_LE(max_abs_diff(apply_process(mix, testing::random_density(rng, 2)),
                           Complex(0.5) * ComplexMatrix::identity(2)),
              1e-14);
}

TEST(ApplyProcess, AgreesWithKrausOracle) {
  Rng rng(3);
  for (int k = 0; k < 50; ++k) {
    const testing::KrausChannel ch = testing::random_channel(rng);
    const ComplexMatrix rho = testing::random_density(rng, 2);
    EXPECT_LE(max_abs_diff(apply_process(ch.chi(), rho), ch.apply(rho)), 1e-12);
  }
}

TEST(Tomography, RoundTripOnRandomChannels) {
  Rng rng(4);
  for (int k = 0; k < 100; ++k) {
    const testing::KrausChannel ch = testing::random_channel(rng);
    const ProcessMatrix truth(ch.chi());
    const ConditionalProbTable table = measurement_table(outputs_of(ch), rotated_observables(0.3 * k, 0.1 * k));
    const ProcessMatrix recon = tomograph(table, rotated_observables(0.3 * k, 0.1 * k));
    EXPECT_LE(max_abs_diff(recon.matrix(), truth.matrix()), 1e-9);
    EXPECT_NEAR(recon.matrix().trace().real(), 1.0, 1e-12);
  }
}

TEST(Tomography, KrausOracleMatchesDefinition) {
  // E(|a><b|) / 2 laid out in blocks; the identity channel gives the corner form.
  EXPECT_LE(max_abs_diff(testing::identity_channel().chi(), ideal_process_matrix().matrix()), 1e-15);
}

TEST(Tomography, SixInputStatesArePauliEigenstates) {
  const ComplexMatrix* paulis[] = {&pauli_x(), &pauli_y(), &pauli_z()};
  for (std::size_t i = 0; i < 3; ++i)
    for (Sign s : kSigns) {
      const ComplexMatrix rho = tomography_input_state(i, s);
      EXPECT_NEAR((*paulis[i] * rho).trace().real(), sign_value(s), 1e-15);
    }
}

TEST(ProcessMatrix, RejectsBadShapesTraceAndAsymmetry) {
  EXPECT_THROW(ProcessMatrix(ComplexMatrix::identity(2)), ValidationError);
  EXPECT_THROW(ProcessMatrix(ComplexMatrix::identity(4)), ValidationError);
  ComplexMatrix m = ideal_process_matrix().matrix();
  m(0, 1) = 1e-6;
  EXPECT_THROW(ProcessMatrix{m}, ValidationError);
}

TEST(EstimateConditionalProbs, FrequenciesAndErrors) {
  OutcomeCounts counts;
  for (std::size_t i = 0; i < 3; ++i)
    for (Sign s : kSigns)
      for (std::size_t j = 0; j < 3; ++j) {
        counts.at(i, s, j, Sign::Plus) = 50;
        counts.at(i, s, j, Sign::Minus) = 50;
      }
  counts.at(0, Sign::Plus, 0, Sign::Plus) = 75;
  counts.at(0, Sign::Plus, 0, Sign::Minus) = 25;
  const ConditionalProbTable t = estimate_conditional_probs(counts);
  EXPECT_DOUBLE_EQ(t.at(1, Sign::Minus, 2, Sign::Plus), 0.5);
  EXPECT_DOUBLE_EQ(t.at(0, Sign::Plus, 0, Sign::Plus), 0.75);
  ASSERT_TRUE(t.standard_errors().has_value());
  EXPECT_NEAR((*t.standard_errors())[ConditionalProbTable::index(0, Sign::Plus, 0, Sign::Plus)],
              std::sqrt(0.75 * 0.25 / 100), 1e-15);

  counts.at(2, Sign::Minus, 1, Sign::Plus) = 0;
  counts.at(2, Sign::Minus, 1, Sign::Minus) = 0;
  try {
    estimate_conditional_probs(counts);
    FAIL() << "empty cell accepted";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find(cell_name(2, Sign::Minus, 1)), std::string::npos) << e.what();
  }
}

TEST(RenormalizeTable, RescalesPairsAndReports) {
  ConditionalProbTable t = measurement_table(ideal_outputs(), default_observables());
  t.at(0, Sign::Plus, 1, Sign::Plus) *= 1.02;
  NormalizationReport report;
  const ConditionalProbTable fixed = renormalize_table(t, &report);
  EXPECT_NO_THROW(fixed.validate());
  EXPECT_GT(report.max_adjustment, 0.0);
  EXPECT_EQ(report.adjusted_pairs, 1u);
  EXPECT_THROW(t.validate(), ValidationError);
}

TEST(ProjectToPhysical, ClipsAndRenormalizes) {
  ComplexMatrix m = ideal_process_matrix().matrix();
  m(1, 1) = -0.05;
  m(2, 2) = 0.05;
  const ProcessMatrix raw(m);
  EXPECT_FALSE(raw.is_physical());
  const ProcessMatrix fixed = project_to_physical(raw);
  EXPECT_TRUE(fixed.is_physical());
  EXPECT_NEAR(fixed.matrix().trace().real(), 1.0, 1e-12);
}

TEST(PauliWeights, DepolarizingChannel) {
  const ProcessMatrix chi(testing::depolarizing_channel(0.4).chi());
  const auto w = pauli_weights(chi);
  EXPECT_NEAR(w[0], 1 - 0.3, 1e-12);
  for (std::size_t k = 1; k < 4; ++k) EXPECT_NEAR(w[k], 0.1, 1e-12);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(pauli_weights(pauli_process_matrix(k))[k], 1.0, 1e-12);
}

TEST(ImpliedIdentity, IndependentOfInputPropertyForClassicalTables) {
  Rng rng(9);
  const ObservableTriple obs = default_observables();
  for (int k = 0; k < 30; ++k) {
    const JointTransitionMatrix omega(testing::random_joint_matrix(rng));
    const OutputStateSet s = reconstruct_output_states(classical_conditional_probs(omega), obs);
    const ComplexMatrix i3 = s.at(2, Sign::Plus) + s.at(2, Sign::Minus);
    EXPECT_LE(max_abs_diff(i3, s.at(0, Sign::Plus) + s.at(0, Sign::Minus)), 1e-9);
    EXPECT_LE(max_abs_diff(i3, s.at(1, Sign::Plus) + s.at(1, Sign::Minus)), 1e-9);
  }
}

TEST(MeasurementTable, IdealTeleportationStatistics) {
  const ConditionalProbTable t = measurement_table(ideal_outputs(), default_observables());
  const testing::Table6x6 expected = testing::ideal_teleportation_table();
  for (std::size_t r = 0; r < 6; ++r)
    for (std::size_t c = 0; c < 6; ++c)
      EXPECT_NEAR(t.raw()[r * 6 + c], expected[r][c], 1e-12) << "row " << r << " col " << c;
}

TEST(MeasurementTable, ClassicalOptimumStatistics) {
  const ConditionalProbTable t = classical_conditional_probs(JointTransitionMatrix::published_optimum());
  const testing::Table6x6 expected = testing::best_mimicry_table();
  for (std::size_t r = 0; r < 6; ++r)
    for (std::size_t c = 0; c < 6; ++c) EXPECT_NEAR(t.raw()[r * 6 + c], expected[r][c], 1e-12);
}

}  // namespace
}  // namespace gcpcert
