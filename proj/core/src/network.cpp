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

#include "gcpcert/network.hpp"

#include <cmath>
#include <sstream>

#include "gcpcert/classical_model.hpp"
#include "gcpcert/errors.hpp"

namespace gcpcert {
namespace {

void require_4x4(const ComplexMatrix& m, const char* where) {
  if (m.rows() != 4 || m.cols() != 4) {
    std::ostringstream msg;
    msg << where << ": expected a 4x4 matrix, got " << m.rows() << "x" << m.cols();
    throw ValidationError(msg.str());
  }
}

void require_fidelity(const std::optional<double>& f, const char* name) {
  if (f && !(*f >= 0.0 && *f <= 1.0)) {
    std::ostringstream msg;
    msg << "classify: " << name << " = " << *f << " is outside [0, 1]";
    throw ValidationError(msg.str());
  }
}

}  // namespace

ComplexMatrix compose_matrices(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_4x4(a, "compose");
  require_4x4(b, "compose");
  ComplexMatrix out(4, 4);
  for (std::size_t ia = 0; ia < 2; ++ia)
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t ib = 0; ib < 2; ++ib)
        for (std::size_t c = 0; c < 2; ++c) {
          Complex sum = 0.0;
          for (std::size_t s = 0; s < 2; ++s)
            for (std::size_t t = 0; t < 2; ++t) sum += a(2 * ia + s, 2 * ib + t) * b(2 * s + r, 2 * t + c);
          out(2 * ia + r, 2 * ib + c) = 2.0 * sum;
        }
  return out;
}

ProcessMatrix compose(const ProcessMatrix& a, const ProcessMatrix& b) {
  return ProcessMatrix(compose_matrices(a.matrix(), b.matrix()), kComposeTraceTolerance);
}

ProcessMatrix compose_n(const ProcessMatrix& chi, std::size_t n) {
  if (n == 0) throw ValidationError("compose_n: need at least one factor");
  ProcessMatrix acc = chi;
  for (std::size_t k = 1; k < n; ++k) acc = compose(acc, chi);
  return acc;
}

ComplexMatrix compose_oracle_matrices(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_4x4(a, "compose_oracle");
  require_4x4(b, "compose_oracle");
  OutputStateSet outputs;
  for (std::size_t i = 0; i < 3; ++i)
    for (Sign s : kSigns) outputs.at(i, s) = apply_process(b, apply_process(a, tomography_input_state(i, s)));
  return assemble_process_block(outputs);
}

ProcessMatrix compose_oracle(const ProcessMatrix& a, const ProcessMatrix& b) {
  return ProcessMatrix(compose_oracle_matrices(a.matrix(), b.matrix()), kComposeTraceTolerance);
}

double closed_form_f_gc1givenN(std::size_t n) {
  if (n == 0) throw ValidationError("f_gc1givenN: N must be at least 1");
  return 0.5 * (1.0 + std::pow(2.0, -0.5 * static_cast<double>(n)));
}

ThresholdSet ThresholdSet::published() { return ThresholdSet{}; }

ThresholdSet ThresholdSet::from_chi_gc(const ProcessMatrix& chi_gc) {
  const ProcessMatrix ideal = ideal_process_matrix();
  ThresholdSet t;
  t.mode = ThresholdMode::Recomputed;
  t.chi_gc = chi_gc;
  t.f_gc12 = process_fidelity(chi_gc, ideal);
  t.f_gc1given2 = process_fidelity(compose(chi_gc, chi_gc), ideal);
  t.f_c12 = process_fidelity(chi_c_constant(), ideal);
  t.f_gc1givenC2 = process_fidelity(compose(chi_gc, chi_c_constant()), ideal);
  return t;
}

ThresholdSet ThresholdSet::recomputed(const ObservableTriple& obs, const SolverConfig& cfg) {
  const SolverResult r = maximize_gcp_fidelity(obs, cfg);
  if (!r.certified) throw InvariantError("thresholds: optimizer did not certify its optimum");
  return from_chi_gc(r.chi);
}

double ThresholdSet::f_gc1givenN(std::size_t n) const {
  if (n == 0) throw ValidationError("f_gc1givenN: N must be at least 1");
  if (mode == ThresholdMode::Published || !chi_gc) return closed_form_f_gc1givenN(n);
  return process_fidelity(compose_n(*chi_gc, n), ideal_process_matrix());
}

ThresholdSet threshold_table(std::size_t n_max, ThresholdSet base) {
  if (n_max == 0) throw ValidationError("threshold_table: n_max must be at least 1");
  base.f_gc1givenN_table.clear();
  if (base.mode == ThresholdMode::Recomputed && base.chi_gc) {
    const ProcessMatrix ideal = ideal_process_matrix();
    ProcessMatrix acc = *base.chi_gc;
    base.f_gc1givenN_table.push_back(process_fidelity(acc, ideal));
    for (std::size_t n = 2; n <= n_max; ++n) {
      acc = compose(acc, *base.chi_gc);
      base.f_gc1givenN_table.push_back(process_fidelity(acc, ideal));
    }
  } else {
    for (std::size_t n = 1; n <= n_max; ++n) base.f_gc1givenN_table.push_back(closed_form_f_gc1givenN(n));
  }
  return base;
}

const char* to_string(ThresholdMode mode) {
  return mode == ThresholdMode::Published ? "published" : "recomputed";
}

CorrelationVerdict classify(const FidelityInputs& inputs, const ThresholdSet& th) {
  if (!inputs.f_expt12 && !inputs.f_expt1given2 && !inputs.f_expt112)
    throw ValidationError("classify: supply at least one fidelity");
  require_fidelity(inputs.f_expt12, "f_expt12");
  require_fidelity(inputs.f_expt1given2, "f_expt1given2");
  require_fidelity(inputs.f_expt112, "f_expt112");

  CorrelationVerdict v;
  v.inputs = inputs;
  v.thresholds = th;
  const auto above = [](const std::optional<double>& f, double bound) { return f && *f > bound; };
  v.bell_nonlocal = above(inputs.f_expt12, th.f_gc12);
  v.steering = above(inputs.f_expt12, th.f_c12);
  v.nonbilocal = above(inputs.f_expt1given2, th.f_gc1given2) || above(inputs.f_expt112, th.f_gc1given2);
  v.nonlocality_steering =
      above(inputs.f_expt1given2, th.f_gc1givenC2) || above(inputs.f_expt112, th.f_gc1givenC2);

  struct Row {
    const std::optional<double>* value;
    double lower;
    double upper;
    const char* label;
  };
  const Row rows[] = {
      {&inputs.f_expt12, th.f_gc12, 1.0, kBandBell},
      {&inputs.f_expt1given2, th.f_gc1given2, th.f_gc12, kBandNonbilocal},
      {&inputs.f_expt12, th.f_c12, th.f_gc1given2, kBandSteering},
      {&inputs.f_expt1given2, th.f_gc1givenC2, th.f_c12, kBandHybrid},
  };
  for (const Row& row : rows) {
    const std::optional<double>& f = *row.value;
    if (f && *f > row.lower && *f <= row.upper) v.bands.emplace_back(row.label);
  }
  if (!v.bands.empty()) v.band = v.bands.front();
  return v;
}

double measure_prepare_conversion(double f_process) {
  if (!(f_process >= 0.0 && f_process <= 1.0)) {
    std::ostringstream msg;
    msg << "measure_prepare_conversion: fidelity " << f_process << " is outside [0, 1]";
    throw ValidationError(msg.str());
  }
  return (2.0 * f_process + 1.0) / 3.0;
}

}  // namespace gcpcert
