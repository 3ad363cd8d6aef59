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
#include "gcpcert/linear_program.hpp"
#include "oracles.hpp"

namespace gcpcert {
namespace {

using testing::Rng;

std::array<double, 64> diagonal_omega() {
  std::array<double, 64> w{};
  for (std::size_t k = 0; k < 8; ++k) w[k * 8 + k] = 0.25;
  return w;
}

TEST(ClassicalStates, OrderingAndMembership) {
  EXPECT_EQ(classical_value(0, 0), Sign::Plus);
  EXPECT_EQ(classical_value(0, 2), Sign::Plus);
  EXPECT_EQ(classical_value(1, 2), Sign::Minus);
  EXPECT_EQ(classical_value(1, 0), Sign::Plus);
  EXPECT_EQ(classical_value(4, 0), Sign::Minus);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(classical_value(7, k), Sign::Minus);
}

TEST(JointTransitionMatrix, Validation) {
  std::array<double, 64> w{};
  w[0] = 2.0;
  EXPECT_THROW(JointTransitionMatrix{w}, ValidationError);  // marginals broken
  EXPECT_NO_THROW(JointTransitionMatrix(w, MarginalMode::Relaxed));
  w[0] = 1.9;
  EXPECT_THROW(JointTransitionMatrix(w, MarginalMode::Relaxed), ValidationError);
  std::array<double, 64> neg = diagonal_omega();
  neg[0] = 0.5;
  neg[1] = -0.25;
  EXPECT_THROW(JointTransitionMatrix(neg, MarginalMode::Relaxed), ValidationError);
  neg[1] = std::nan("");
  EXPECT_THROW(JointTransitionMatrix(neg, MarginalMode::Relaxed), ValidationError);
  EXPECT_NO_THROW(JointTransitionMatrix{diagonal_omega()});
  EXPECT_LE(JointTransitionMatrix::published_optimum().marginal_deviation(), 1e-12);
}

TEST(ClassicalConditionalProbs, PublishedOptimumTable) {
  const ConditionalProbTable t = classical_conditional_probs(JointTransitionMatrix::published_optimum());
  EXPECT_NEAR(t.at(0, Sign::Plus, 0, Sign::Plus), 0.75, 1e-12);
  EXPECT_NEAR(t.at(2, Sign::Plus, 2, Sign::Plus), 1.0, 1e-12);
  EXPECT_NO_THROW(t.validate());
}

TEST(ClassicalConditionalProbs, UniformIsHalfEverywhere) {
  const ConditionalProbTable t = classical_conditional_probs(JointTransitionMatrix::uniform());
  for (double p : t.raw()) EXPECT_DOUBLE_EQ(p, 0.5);
}

TEST(ClassicalConditionalProbs, MatchesDirectSum) {
  Rng rng(31);
  for (int k = 0; k < 50; ++k) {
    const auto w = testing::random_joint_matrix(rng);
    const auto expected = testing::conditional_probs_by_definition(w);
    const ConditionalProbTable t = classical_conditional_probs(JointTransitionMatrix(w));
    for (std::size_t n = 0; n < 36; ++n) EXPECT_NEAR(t.raw()[n], expected[n], 1e-14);
  }
}

TEST(ClassicalConditionalProbs, RelaxedInputRequiresRenormalization) {
  // States (+,+,+) and (-,-,-) with prior 3/4 and 1/4, both mapped to (+,+,+).
  std::array<double, 64> w{};
  w[0] = 1.5;
  w[7 * 8] = 0.5;
  const JointTransitionMatrix omega(w, MarginalMode::Relaxed);
  EXPECT_THROW(classical_conditional_probs(omega), ValidationError);
  const ConditionalProbTable t = classical_conditional_probs(omega, true);
  EXPECT_NO_THROW(t.validate());
  EXPECT_DOUBLE_EQ(t.at(0, Sign::Plus, 0, Sign::Plus), 1.0);
  EXPECT_DOUBLE_EQ(t.at(1, Sign::Minus, 2, Sign::Plus), 1.0);
  std::array<double, 64> lone{};
  lone[0] = 2.0;
  EXPECT_THROW(classical_conditional_probs(JointTransitionMatrix(lone, MarginalMode::Relaxed), true),
               ValidationError);
}

TEST(GcpProcessMatrix, PublishedOptimumIsPhaseDamped) {
  const ProcessMatrix chi = gcp_process_matrix(JointTransitionMatrix::published_optimum(), default_observables());
  const double anti = 0.5 / std::numbers::sqrt2;
  EXPECT_NEAR(chi(0, 0).real(), 0.5, 1e-12);
  EXPECT_NEAR(chi(3, 3).real(), 0.5, 1e-12);
  EXPECT_NEAR(std::abs(chi(0, 3) - Complex(anti)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(chi(3, 0) - Complex(anti)), 0.0, 1e-12);
  EXPECT_NEAR(process_fidelity(chi, ideal_process_matrix()), (2 + std::numbers::sqrt2) / 4, 1e-12);
}

TEST(GcpProcessMatrix, UniformAndDiagonal) {
  EXPECT_LE(max_abs_diff(gcp_process_matrix(JointTransitionMatrix::uniform(), default_observables()).matrix(),
                         Complex(0.25) * ComplexMatrix::identity(4)),
            1e-14);
  const ProcessMatrix chi = gcp_process_matrix(JointTransitionMatrix(diagonal_omega()), rotated_observables(0, 0));
  EXPECT_LE(max_abs_diff(chi.matrix(), ideal_process_matrix().matrix()), 1e-14);
}

TEST(GcpProcessMatrix, AffineLinearTraceOneHermitian) {
  Rng rng(32);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    const auto a = testing::random_joint_matrix(rng);
    const auto b = testing::random_joint_matrix(rng);
    const double t = unit(rng);
    std::array<double, 64> mix{};
    for (std::size_t n = 0; n < 64; ++n) mix[n] = t * a[n] + (1 - t) * b[n];
    const ObservableTriple obs = rotated_observables(unit(rng) * 6, unit(rng) * 6);
    const ComplexMatrix ca = gcp_process_block(a, obs);
    const ComplexMatrix cb = gcp_process_block(b, obs);
    const ComplexMatrix cm = gcp_process_block(mix, obs);
    EXPECT_LE(max_abs_diff(cm, Complex(t) * ca + Complex(1 - t) * cb), 1e-12);
    EXPECT_NEAR(cm.trace().real(), 1.0, 1e-12);
    EXPECT_LE(cm.hermitian_asymmetry(), 1e-12);
  }
}

TEST(MarginalDistribution, Examples) {
  for (double p : marginal_distribution(JointTransitionMatrix::published_optimum())) EXPECT_NEAR(p, 0.125, 1e-12);
  for (double p : marginal_distribution(JointTransitionMatrix::uniform())) EXPECT_NEAR(p, 0.125, 1e-15);
  std::array<double, 64> w{};
  w[3] = 2.0;
  const auto m = marginal_distribution(JointTransitionMatrix(w, MarginalMode::Relaxed));
  EXPECT_DOUBLE_EQ(m[0], 1.0);
  for (std::size_t k = 1; k < 8; ++k) EXPECT_DOUBLE_EQ(m[k], 0.0);
}

TEST(LhvEquivalence, ExactOnExamplesAndRandomDraws) {
  for (const auto& omega : {JointTransitionMatrix::published_optimum(), JointTransitionMatrix::uniform()}) {
    const ConditionalProbTable lhv = lhv_equivalent_probs(omega);
    const ConditionalProbTable direct = classical_conditional_probs(omega);
    for (std::size_t n = 0; n < 36; ++n) EXPECT_NEAR(lhv.raw()[n], direct.raw()[n], 1e-15);
  }
  Rng rng(33);
  for (int k = 0; k < 100; ++k) {
    const JointTransitionMatrix omega(testing::random_joint_matrix(rng));
    const ConditionalProbTable l = lhv_equivalent_probs(omega);
    const ConditionalProbTable d = classical_conditional_probs(omega);
    for (std::size_t n = 0; n < 36; ++n) EXPECT_NEAR(l.raw()[n], d.raw()[n], 1e-12);
  }
}

TEST(ChiC, PublishedConstant) {
  const ProcessMatrix chi = chi_c_constant();
  EXPECT_NEAR(process_fidelity(chi, ideal_process_matrix()), 0.6830, kChiCTolerance);
  EXPECT_NEAR(chi.matrix().trace().real(), 1.0, 1e-4);
  EXPECT_TRUE(is_psd(chi.matrix(), 1e-4));
  EXPECT_NEAR(chi(0, 3).real(), 0.5 * 0.5774, 1e-12);
}

TEST(LinearProgram, SmallProblems) {
  // max x + 2y s.t. x + y + s = 4, x + 3y + u = 6.
  const std::vector<double> c = {1, 2, 0, 0};
  const std::vector<std::vector<double>> a = {{1, 1, 1, 0}, {1, 3, 0, 1}};
  const std::vector<double> b = {4, 6};
  const LpResult r = maximize_lp(c, a, b);
  ASSERT_EQ(r.status, LpStatus::Optimal);
  EXPECT_NEAR(r.value, 5.0, 1e-12);
  EXPECT_NEAR(r.x[0], 3.0, 1e-12);
  EXPECT_NEAR(r.x[1], 1.0, 1e-12);

  const std::vector<double> c2 = {1, 0};
  const std::vector<std::vector<double>> a2 = {{1, -1}};
  const std::vector<double> b2 = {1};
  EXPECT_EQ(maximize_lp(c2, a2, b2).status, LpStatus::Unbounded);

  const std::vector<std::vector<double>> a3 = {{1, 1}, {1, 1}};
  const std::vector<double> b3 = {1, 2};
  EXPECT_EQ(maximize_lp(c2, a3, b3).status, LpStatus::Infeasible);
}

TEST(LinearProgram, RedundantRowsAreTolerated) {
  const std::vector<double> c = {1, 1, 0};
  const std::vector<std::vector<double>> a = {{1, 1, 1}, {2, 2, 2}};
  const std::vector<double> b = {1, 2};
  const LpResult r = maximize_lp(c, a, b);
  ASSERT_EQ(r.status, LpStatus::Optimal);
  EXPECT_NEAR(r.value, 1.0, 1e-12);
}

}  // namespace
}  // namespace gcpcert
