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

#include "gcpcert/errors.hpp"
#include "gcpcert/grid.hpp"
#include "gcpcert/network.hpp"
#include "gcpcert/simulator.hpp"
#include "oracles.hpp"

namespace gcpcert {
namespace {

using testing::Rng;

double fid(const ProcessMatrix& chi) { return process_fidelity(chi, ideal_process_matrix()); }

TEST(WernerState, Examples) {
  const ComplexMatrix pure = werner_state(0.0);
  EXPECT_NEAR(pure(0, 0).real(), 0.5, 1e-15);
  EXPECT_NEAR(pure(0, 3).real(), 0.5, 1e-15);
  EXPECT_LE(max_abs_diff(werner_state(1.0), Complex(0.25) * ComplexMatrix::identity(4)), 1e-15);
  const auto ev = hermitian_eigen(werner_state(0.5)).eigenvalues;
  EXPECT_NEAR(ev[0], 0.125, 1e-12);
  EXPECT_NEAR(ev[2], 0.125, 1e-12);
  EXPECT_NEAR(ev[3], 0.625, 1e-12);
  EXPECT_THROW(werner_state(1.5), ValidationError);
}

TEST(TeleportChannel, AnalyticWernerFidelity) {
  for (int k = 0; k <= 10; ++k) {
    const double p = 0.1 * k;
    const ProcessMatrix chi = teleport_channel(werner_state(p), default_observables());
    EXPECT_NEAR(fid(chi), testing::depolarizing_fidelity(p), 1e-9) << p;
    EXPECT_LE(max_abs_diff(chi.matrix(), testing::depolarizing_channel(p).chi()), 1e-9);
    EXPECT_TRUE(chi.is_physical(1e-9));
  }
  EXPECT_LE(max_abs_diff(teleport_channel(werner_state(0), default_observables()).matrix(),
                         ideal_process_matrix().matrix()),
            1e-9);
}

TEST(TeleportChannel, RejectsNonPsdResource) {
  ComplexMatrix bad = werner_state(0.0);
  bad(1, 1) = -0.1;
  bad(0, 0) = 0.6;
  EXPECT_THROW(teleport_channel(bad, default_observables()), ValidationError);
}

TEST(TeleportState, PreservesTraceForRandomInputs) {
  Rng rng(61);
  for (int k = 0; k < 30; ++k) {
    const ComplexMatrix rho = testing::random_density(rng, 2);
    const ComplexMatrix out = teleport_state(rho, werner_state(0.3));
    EXPECT_NEAR(out.trace().real(), 1.0, 1e-12);
    EXPECT_LE(max_abs_diff(out, testing::depolarizing_channel(0.3).apply(rho)), 1e-12);
    EXPECT_LE(max_abs_diff(teleport_state(rho, werner_state(0.0)), rho), 1e-12);
  }
}

TEST(NetworkFidelities, TwoLinkExamples) {
  for (double p : {0.0, 0.1, 0.3}) {
    const NetworkReport r = network_fidelities({{p, p}}, default_observables());
    ASSERT_TRUE(r.f_expt12.has_value());
    const double analytic = 0.25 + 0.75 * (1 - p) * (1 - p);
    EXPECT_NEAR(*r.f_expt12, analytic, 1e-9);
    EXPECT_NEAR(r.f_expt1givenN, analytic, 1e-9);
  }
}

TEST(NetworkFidelities, EqualLinksFollowDepolarizingComposition) {
  for (std::size_t n = 1; n <= 5; ++n) {
    const NetworkReport r = network_fidelities({std::vector<double>(n, 0.15)}, default_observables());
    EXPECT_NEAR(r.f_expt1givenN, testing::depolarizing_fidelity(0.15, n), 1e-9);
    EXPECT_EQ(r.f_expt12.has_value(), n == 2);
  }
  const NetworkReport ideal = network_fidelities({{0.0, 0.0, 0.0}}, default_observables());
  EXPECT_NEAR(ideal.f_expt11N, 1.0, 1e-12);
  EXPECT_THROW(network_fidelities({{}}, default_observables()), ValidationError);
  EXPECT_THROW(network_fidelities({{0.1, -0.2}}, default_observables()), ValidationError);
}

TEST(NoiseTolerance, AnalyticCrossings) {
  const NoiseTolerance a = noise_tolerance(NoiseCriterion::Expt1givenN, 2, 0.8536, default_observables());
  ASSERT_TRUE(a.p_star.has_value());
  EXPECT_NEAR(*a.p_star, testing::depolarizing_crossing(0.8536, 2), 1e-7);
  EXPECT_NEAR(*a.p_star, 0.1029, 1e-4);
  const NoiseTolerance b = noise_tolerance(NoiseCriterion::Expt1givenN, 2, 0.75, default_observables());
  ASSERT_TRUE(b.p_star.has_value());
  EXPECT_NEAR(*b.p_star, 0.1835, 1e-4);
  EXPECT_GT(network_fidelity(NoiseCriterion::Expt1givenN, 2, 0.0, default_observables()), 0.8536);
  const NoiseTolerance s = noise_tolerance(NoiseCriterion::Expt1givenN, 2, 0.2, default_observables());
  EXPECT_TRUE(s.saturated);
  EXPECT_FALSE(s.p_star.has_value());
}

TEST(NoiseTolerance, ConcatenatedCriterionIsLessRobust) {
  const auto curve_n = noise_tolerance_curve(NoiseCriterion::Expt1givenN, {1, 2, 3, 10}, default_observables());
  const auto curve_11 = noise_tolerance_curve(NoiseCriterion::Expt11N, {1, 2, 3, 10}, default_observables());
  ASSERT_EQ(curve_n.points.size(), 4u);
  EXPECT_LT(*curve_11.points[3].p_star, *curve_n.points[3].p_star);
  EXPECT_TRUE(curve_n.monotone_nonincreasing);
  EXPECT_TRUE(curve_11.monotone_nonincreasing);
  for (const auto& pt : curve_n.points)
    EXPECT_NEAR(*pt.p_star, testing::depolarizing_crossing(closed_form_f_gc1givenN(pt.n), pt.n), 1e-7);
}

TEST(NoiseCriterion, Parsing) {
  EXPECT_EQ(parse_noise_criterion("exptN"), NoiseCriterion::Expt1givenN);
  EXPECT_EQ(parse_noise_criterion("expt11N"), NoiseCriterion::Expt11N);
  EXPECT_THROW(parse_noise_criterion("bogus"), ValidationError);
}

TEST(Fig3Curves, RowsAreConsistent) {
  const std::vector<double> grid = linspace(0.0, 1.0, 21);
  const auto rows = fig3_curves(grid, default_observables(), ThresholdSet::published(), 2);
  ASSERT_EQ(rows.size(), grid.size());
  EXPECT_NEAR(rows[0].f_expt12, 1.0, 1e-12);
  EXPECT_NEAR(rows[0].f_expt1given2, 1.0, 1e-12);
  EXPECT_NEAR(rows[0].f_expt112, 1.0, 1e-12);
  EXPECT_EQ(rows[0].verdict.band, kBandBell);
  for (std::size_t k = 1; k < rows.size(); ++k) {
    EXPECT_LE(rows[k].f_expt12, rows[k - 1].f_expt12 + 1e-12);
    EXPECT_LE(rows[k].f_expt112, rows[k - 1].f_expt112 + 1e-12);
  }
  const double p_star = *noise_tolerance(NoiseCriterion::Expt1givenN, 2, 0.8536, default_observables()).p_star;
  std::size_t first = 0;
  while (first < rows.size() && rows[first].f_expt12 > 0.8536) ++first;
  ASSERT_LT(first, rows.size());
  EXPECT_LE(std::abs(rows[first].p - p_star), grid[1] - grid[0]);

  const auto serial = fig3_curves(grid, default_observables(), ThresholdSet::published(), 1);
  for (std::size_t k = 0; k < rows.size(); ++k) EXPECT_EQ(serial[k].f_expt112, rows[k].f_expt112);
}

}  // namespace
}  // namespace gcpcert
