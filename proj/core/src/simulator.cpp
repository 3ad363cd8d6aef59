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

#include "gcpcert/simulator.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "gcpcert/errors.hpp"
#include "parallel.hpp"

namespace gcpcert {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void require_noise(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream msg;
    msg << "noise intensity " << p << " is outside [0, 1]";
    throw ValidationError(msg.str());
  }
}

void require_resource(const ComplexMatrix& resource) {
  if (resource.rows() != 4 || resource.cols() != 4) throw ValidationError("resource state must be 4x4");
  if (resource.hermitian_asymmetry() > kHermitianTolerance)
    throw ValidationError("resource state is not Hermitian");
  if (std::abs(resource.trace() - 1.0) > 1e-9) throw ValidationError("resource state must have trace 1");
  if (!is_psd(resource, 1e-9)) throw ValidationError("resource state is not positive semidefinite");
}

struct BellOutcome {
  std::array<Complex, 4> vec;  // amplitudes over |q1 q2>
  ComplexMatrix correction;    // applied to qubit 3
};

// (I x s)|phi+> for s = I, Z, X, XZ, with Bob's correction s^T.
const std::array<BellOutcome, 4>& bell_outcomes() {
  static const std::array<BellOutcome, 4> outcomes = [] {
    const ComplexMatrix id = ComplexMatrix::identity(2);
    const std::array<ComplexMatrix, 4> sigma = {id, pauli_z(), pauli_x(), pauli_x() * pauli_z()};
    std::array<BellOutcome, 4> out;
    for (std::size_t k = 0; k < 4; ++k) {
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) {
          // sum_c |c> (s|c>)
          out[k].vec[2 * a + b] = kInvSqrt2 * sigma[k](b, a);
        }
      out[k].correction = sigma[k].transpose();
    }
    return out;
  }();
  return outcomes;
}

ProcessMatrix tomograph_channel(const OutputStateSet& outputs, const ObservableTriple& obs) {
  return tomograph(measurement_table(outputs, obs), obs);
}

}  // namespace

ComplexMatrix werner_state(double p) {
  require_noise(p);
  ComplexMatrix rho(4, 4);
  const double pure = 1.0 - p;
  rho(0, 0) = 0.5 * pure;
  rho(0, 3) = 0.5 * pure;
  rho(3, 0) = 0.5 * pure;
  rho(3, 3) = 0.5 * pure;
  for (std::size_t d = 0; d < 4; ++d) rho(d, d) += 0.25 * p;
  return rho;
}

ComplexMatrix teleport_state(const ComplexMatrix& rho, const ComplexMatrix& resource) {
  if (rho.rows() != 2 || rho.cols() != 2) throw ValidationError("teleport_state: input must be 2x2");
  const ComplexMatrix total = kron(rho, resource);  // index 4 q1 + 2 q2 + q3
  ComplexMatrix out = ComplexMatrix::zeros(2, 2);
  double prob_sum = 0.0;
  for (const BellOutcome& o : bell_outcomes()) {
    ComplexMatrix bob(2, 2);
    for (std::size_t c = 0; c < 2; ++c)
      for (std::size_t d = 0; d < 2; ++d) {
        Complex s = 0.0;
        for (std::size_t x = 0; x < 4; ++x)
          for (std::size_t y = 0; y < 4; ++y) s += std::conj(o.vec[x]) * total(2 * x + c, 2 * y + d) * o.vec[y];
        bob(c, d) = s;
      }
    prob_sum += bob.trace().real();
    out = out + o.correction * bob * o.correction.adjoint();
  }
  if (std::abs(prob_sum - rho.trace().real()) > 1e-12) {
    std::ostringstream msg;
    msg << "teleport_state: Bell outcome probabilities sum to " << prob_sum;
    throw InvariantError(msg.str());
  }
  return out;
}

ProcessMatrix teleport_channel(const ComplexMatrix& resource, const ObservableTriple& obs) {
  return teleport_chain({resource}, obs);
}

ProcessMatrix teleport_chain(const std::vector<ComplexMatrix>& resources, const ObservableTriple& obs) {
  if (resources.empty()) throw ValidationError("teleport_chain: need at least one resource");
  for (const ComplexMatrix& r : resources) require_resource(r);
  OutputStateSet outputs;
  for (std::size_t i = 0; i < 3; ++i)
    for (Sign s : kSigns) {
      ComplexMatrix state = tomography_input_state(i, s);
      for (const ComplexMatrix& r : resources) state = teleport_state(state, r);
      outputs.at(i, s) = state;
    }
  return tomograph_channel(outputs, obs);
}

void NetworkSpec::validate() const {
  if (links.empty()) throw ValidationError("network needs at least one link");
  for (double p : links) require_noise(p);
}

double f_expt11N_of(const std::vector<ProcessMatrix>& link_chi) {
  if (link_chi.empty()) throw ValidationError("f_expt11N: need at least one link");
  ProcessMatrix prefix = link_chi.front();
  ProcessMatrix acc = prefix;
  for (std::size_t k = 1; k < link_chi.size(); ++k) {
    prefix = compose(prefix, link_chi[k]);
    acc = compose(acc, prefix);
  }
  return process_fidelity(acc, ideal_process_matrix());
}

NetworkReport network_fidelities(const NetworkSpec& spec, const ObservableTriple& obs) {
  spec.validate();
  NetworkReport rep;
  for (double p : spec.links) rep.link_chi.push_back(teleport_channel(werner_state(p), obs));
  ProcessMatrix fold = rep.link_chi.front();
  for (std::size_t k = 1; k < rep.link_chi.size(); ++k) fold = compose(fold, rep.link_chi[k]);
  const ProcessMatrix ideal = ideal_process_matrix();
  rep.f_expt1givenN = process_fidelity(fold, ideal);
  rep.f_expt11N = f_expt11N_of(rep.link_chi);
  if (spec.links.size() == 2) {
    const ProcessMatrix relay = teleport_chain({werner_state(spec.links[0]), werner_state(spec.links[1])}, obs);
    rep.f_expt12 = process_fidelity(relay, ideal);
    rep.f_expt112 = process_fidelity(compose(rep.link_chi.front(), relay), ideal);
  }
  return rep;
}

NoiseCriterion parse_noise_criterion(const std::string& text) {
  if (text == "exptN" || text == "expt1givenN") return NoiseCriterion::Expt1givenN;
  if (text == "expt11N") return NoiseCriterion::Expt11N;
  throw ValidationError("unknown noise criterion '" + text + "' (expected exptN or expt11N)");
}

const char* to_string(NoiseCriterion c) { return c == NoiseCriterion::Expt1givenN ? "exptN" : "expt11N"; }

double network_fidelity(NoiseCriterion criterion, std::size_t n, double p, const ObservableTriple& obs) {
  if (n == 0) throw ValidationError("network_fidelity: N must be at least 1");
  const ProcessMatrix link = teleport_channel(werner_state(p), obs);
  if (criterion == NoiseCriterion::Expt1givenN)
    return process_fidelity(compose_n(link, n), ideal_process_matrix());
  return f_expt11N_of(std::vector<ProcessMatrix>(n, link));
}

NoiseTolerance noise_tolerance(NoiseCriterion criterion, std::size_t n, double threshold,
                               const ObservableTriple& obs) {
  NoiseTolerance out;
  out.n = n;
  out.threshold = threshold;
  const auto excess = [&](double p) { return network_fidelity(criterion, n, p, obs) - threshold; };
  double lo = 0.0;
  double hi = 1.0;
  if (!(excess(lo) > 0.0) || excess(hi) > 0.0) {
    out.saturated = true;
    return out;
  }
  while (hi - lo > kBisectionTolerance) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) > 0.0 ? lo : hi) = mid;
  }
  out.p_star = 0.5 * (lo + hi);
  return out;
}

NoiseToleranceCurve noise_tolerance_curve(NoiseCriterion criterion, const std::vector<std::size_t>& n_values,
                                          const ObservableTriple& obs, const ThresholdSet& thresholds,
                                          unsigned threads) {
  if (n_values.empty()) throw ValidationError("noise_tolerance_curve: empty N range");
  NoiseToleranceCurve curve;
  curve.points.resize(n_values.size());
  detail::parallel_for_index(n_values.size(), threads, [&](std::size_t i) {
    const std::size_t n = n_values[i];
    curve.points[i] = noise_tolerance(criterion, n, thresholds.f_gc1givenN(n), obs);
  });
  std::optional<double> prev;
  for (const NoiseTolerance& pt : curve.points) {
    if (!pt.p_star) continue;
    if (prev && *pt.p_star > *prev) curve.monotone_nonincreasing = false;
    prev = pt.p_star;
  }
  return curve;
}

std::vector<Fig3Row> fig3_curves(const std::vector<double>& p_grid, const ObservableTriple& obs,
                                 const ThresholdSet& thresholds, unsigned threads) {
  for (double p : p_grid) require_noise(p);
  std::vector<Fig3Row> rows(p_grid.size());
  detail::parallel_for_index(p_grid.size(), threads, [&](std::size_t i) {
    const NetworkReport rep = network_fidelities(NetworkSpec{{p_grid[i], p_grid[i]}}, obs);
    Fig3Row& row = rows[i];
    row.p = p_grid[i];
    row.f_expt12 = *rep.f_expt12;
    row.f_expt1given2 = rep.f_expt1givenN;
    row.f_expt112 = *rep.f_expt112;
    // Rounding can push a perfect fidelity a few ulps past 1.
    const auto clamp = [](double f) { return std::min(1.0, std::max(0.0, f)); };
    row.verdict = classify({clamp(row.f_expt12), clamp(row.f_expt1given2), clamp(row.f_expt112)}, thresholds);
  });
  return rows;
}

}  // namespace gcpcert
