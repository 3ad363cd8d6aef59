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

#include "gcpcert/tomography.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "gcpcert/errors.hpp"

namespace gcpcert {

namespace {

constexpr double kNormalizationTolerance = 1e-9;

const char* sign_char(Sign s) { return s == Sign::Plus ? "+" : "-"; }

double wrap_angle(double a) {
  const double two_pi = 2.0 * std::numbers::pi;
  double w = std::fmod(a, two_pi);
  if (w < 0.0) w += two_pi;
  return w;
}

ComplexMatrix block(const ComplexMatrix& chi, std::size_t a, std::size_t b) {
  return ComplexMatrix{{chi(2 * a, 2 * b), chi(2 * a, 2 * b + 1)},
                       {chi(2 * a + 1, 2 * b), chi(2 * a + 1, 2 * b + 1)}};
}

void require_density_shape(const ComplexMatrix& rho, const char* op) {
  if (rho.rows() != 2 || rho.cols() != 2) {
    std::ostringstream msg;
    msg << op << ": expected a 2x2 density matrix, got " << rho.rows() << "x" << rho.cols();
    throw ValidationError(msg.str());
  }
}

}  // namespace

const ComplexMatrix& pauli_x() {
  static const ComplexMatrix m{{0.0, 1.0}, {1.0, 0.0}};
  return m;
}

const ComplexMatrix& pauli_y() {
  static const ComplexMatrix m{{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}};
  return m;
}

const ComplexMatrix& pauli_z() {
  static const ComplexMatrix m{{1.0, 0.0}, {0.0, -1.0}};
  return m;
}

ComplexMatrix rotation_unitary(double theta, double phi) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const Complex em = std::polar(1.0, -phi / 2.0);
  const Complex ep = std::polar(1.0, phi / 2.0);
  return ComplexMatrix{{em * c, em * s}, {-ep * s, ep * c}};
}

ObservableTriple rotated_observables(double theta, double phi) {
  ObservableTriple obs;
  obs.theta = wrap_angle(theta);
  obs.phi = wrap_angle(phi);
  const ComplexMatrix u = rotation_unitary(obs.theta, obs.phi);
  const ComplexMatrix ud = u.adjoint();
  const std::array<const ComplexMatrix*, 3> paulis = {&pauli_x(), &pauli_y(), &pauli_z()};
  for (std::size_t j = 0; j < 3; ++j) {
    ComplexMatrix v = u * *paulis[j] * ud;
    // Exact Hermitian form; rounding in the products is ~1e-16.
    v(0, 0) = v(0, 0).real();
    v(1, 1) = v(1, 1).real();
    const Complex off = 0.5 * (v(0, 1) + std::conj(v(1, 0)));
    v(0, 1) = off;
    v(1, 0) = std::conj(off);
    obs.v[j] = std::move(v);
  }
  return obs;
}

ObservableTriple default_observables() { return rotated_observables(0.0, std::numbers::pi / 4.0); }

std::string cell_name(std::size_t i, Sign s, std::size_t j) {
  std::ostringstream out;
  out << "P(V" << (j + 1) << " | V" << (i + 1) << "=" << sign_char(s) << "1)";
  return out.str();
}

void ConditionalProbTable::validate() const {
  for (std::size_t i = 0; i < 3; ++i)
    for (Sign s : kSigns)
      for (std::size_t j = 0; j < 3; ++j) {
        const double pp = at(i, s, j, Sign::Plus);
        const double pm = at(i, s, j, Sign::Minus);
        for (double p : {pp, pm}) {
          if (!std::isfinite(p) || p < -kNormalizationTolerance || p > 1.0 + kNormalizationTolerance) {
            std::ostringstream msg;
            msg << "conditional probability out of [0,1] in " << cell_name(i, s, j) << ": " << p;
            throw ValidationError(msg.str());
          }
        }
        if (std::abs(pp + pm - 1.0) > kNormalizationTolerance) {
          std::ostringstream msg;
          msg << "unnormalized row " << cell_name(i, s, j) << ": P(+) + P(-) = " << (pp + pm);
          throw ValidationError(msg.str());
        }
      }
}

ConditionalProbRow table_row(const ConditionalProbTable& table, std::size_t i, Sign s) {
  ConditionalProbRow row;
  for (std::size_t j = 0; j < 3; ++j)
    for (Sign t : kSigns) row.p[j * 2 + sign_index(t)] = table.at(i, s, j, t);
  return row;
}

ProcessMatrix::ProcessMatrix(ComplexMatrix m, double trace_tolerance) : chi_(std::move(m)) {
  if (chi_.rows() != 4 || chi_.cols() != 4) {
    std::ostringstream msg;
    msg << "process matrix must be 4x4, got " << chi_.rows() << "x" << chi_.cols();
    throw ValidationError(msg.str());
  }
  const double asym = chi_.hermitian_asymmetry();
  if (!(asym <= kHermitianTolerance)) {
    std::ostringstream msg;
    msg << "process matrix is not Hermitian, max |chi - chi^dagger| = " << asym;
    throw ValidationError(msg.str());
  }
  const Complex tr = chi_.trace();
  if (!(std::abs(tr - 1.0) <= trace_tolerance)) {
    std::ostringstream msg;
    msg << "process matrix trace must be 1, got " << tr.real();
    throw ValidationError(msg.str());
  }
}

double process_fidelity(const ProcessMatrix& a, const ProcessMatrix& b) {
  return process_fidelity(a.matrix(), b.matrix());
}

ComplexMatrix reconstruct_output_state_unchecked(const ConditionalProbRow& row,
                                                 const ObservableTriple& obs) {
  ComplexMatrix rho = ComplexMatrix::identity(2);
  for (std::size_t j = 0; j < 3; ++j) {
    const double bloch = row.at(j, Sign::Plus) - row.at(j, Sign::Minus);
    rho = rho + Complex(bloch) * obs.v[j];
  }
  return Complex(0.5) * rho;
}

ComplexMatrix reconstruct_output_state(const ConditionalProbRow& row, const ObservableTriple& obs) {
  for (std::size_t j = 0; j < 3; ++j) {
    const double sum = row.at(j, Sign::Plus) + row.at(j, Sign::Minus);
    if (!std::isfinite(sum) || std::abs(sum - 1.0) > kNormalizationTolerance) {
      std::ostringstream msg;
      msg << "reconstruct_output_state: unnormalized probabilities for V" << (j + 1)
          << ", P(+) + P(-) = " << sum;
      throw ValidationError(msg.str());
    }
  }
  return reconstruct_output_state_unchecked(row, obs);
}

ComplexMatrix assemble_process_block(const OutputStateSet& states) {
  const ComplexMatrix ident = states.at(2, Sign::Plus) + states.at(2, Sign::Minus);
  const ComplexMatrix v1 = states.at(0, Sign::Plus) - states.at(0, Sign::Minus);
  const ComplexMatrix v2 = states.at(1, Sign::Plus) - states.at(1, Sign::Minus);
  const ComplexMatrix v3 = states.at(2, Sign::Plus) - states.at(2, Sign::Minus);
  const Complex i(0.0, 1.0);
  const std::array<ComplexMatrix, 4> blocks = {ident + v3, v1 + i * v2, v1 - i * v2, ident - v3};
  ComplexMatrix chi(4, 4);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) {
      const ComplexMatrix& blk = blocks[a * 2 + b];
      for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) chi(2 * a + r, 2 * b + c) = 0.25 * blk(r, c);
    }
  return chi;
}

ProcessMatrix assemble_process_matrix(const OutputStateSet& states) {
  for (std::size_t k = 0; k < states.rho.size(); ++k) {
    const ComplexMatrix& rho = states.rho[k];
    require_density_shape(rho, "assemble_process_matrix");
    if (rho.hermitian_asymmetry() > kHermitianTolerance ||
        std::abs(rho.trace() - 1.0) > kNormalizationTolerance) {
      std::ostringstream msg;
      msg << "assemble_process_matrix: output state " << k
          << " is not a Hermitian trace-one matrix";
      throw ValidationError(msg.str());
    }
  }
  return ProcessMatrix(assemble_process_block(states));
}

OutputStateSet reconstruct_output_states(const ConditionalProbTable& table,
                                         const ObservableTriple& obs) {
  OutputStateSet states;
  for (std::size_t i = 0; i < 3; ++i)
    for (Sign s : kSigns) states.at(i, s) = reconstruct_output_state(table_row(table, i, s), obs);
  return states;
}

ProcessMatrix tomograph(const ConditionalProbTable& table, const ObservableTriple& obs) {
  table.validate();
  return assemble_process_matrix(reconstruct_output_states(table, obs));
}

ProcessMatrix ideal_process_matrix() {
  ComplexMatrix chi(4, 4);
  chi(0, 0) = chi(0, 3) = chi(3, 0) = chi(3, 3) = 0.5;
  return ProcessMatrix(std::move(chi));
}

ComplexMatrix tomography_input_state(std::size_t i, Sign s) {
  if (i >= 3) throw ValidationError("tomography_input_state: property index out of range");
  const std::array<const ComplexMatrix*, 3> paulis = {&pauli_x(), &pauli_y(), &pauli_z()};
  return Complex(0.5) * (ComplexMatrix::identity(2) + Complex(sign_value(s)) * *paulis[i]);
}

ComplexMatrix apply_process(const ComplexMatrix& chi, const ComplexMatrix& rho) {
  require_density_shape(rho, "apply_process");
  if (chi.rows() != 4 || chi.cols() != 4) throw ValidationError("apply_process: chi must be 4x4");
  ComplexMatrix out = ComplexMatrix::zeros(2, 2);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) {
      const Complex w = 2.0 * rho(a, b);
      if (w == Complex{}) continue;
      out = out + w * block(chi, a, b);
    }
  return out;
}

ComplexMatrix apply_process(const ProcessMatrix& chi, const ComplexMatrix& rho) {
  return apply_process(chi.matrix(), rho);
}

ConditionalProbTable measurement_table(const OutputStateSet& outputs, const ObservableTriple& obs) {
  ConditionalProbTable table;
  for (std::size_t i = 0; i < 3; ++i)
    for (Sign s : kSigns) {
      const ComplexMatrix& rho = outputs.at(i, s);
      const double tr = rho.trace().real();
      for (std::size_t j = 0; j < 3; ++j) {
        const double expect = trace_product(rho, obs.v[j]).real;
        for (Sign t : kSigns) table.at(i, s, j, t) = 0.5 * (tr + sign_value(t) * expect);
      }
    }
  return table;
}

ConditionalProbTable estimate_conditional_probs(const OutcomeCounts& counts) {
  ConditionalProbTable table;
  std::array<double, 36> se{};
  for (std::size_t i = 0; i < 3; ++i)
    for (Sign s : kSigns)
      for (std::size_t j = 0; j < 3; ++j) {
        const std::uint64_t np = counts.at(i, s, j, Sign::Plus);
        const std::uint64_t nm = counts.at(i, s, j, Sign::Minus);
        const std::uint64_t total = np + nm;
        if (total == 0) {
          throw ValidationError("estimate_conditional_probs: empty cell " + cell_name(i, s, j));
        }
        const double n = static_cast<double>(total);
        for (Sign t : kSigns) {
          const double p = static_cast<double>(t == Sign::Plus ? np : nm) / n;
          table.at(i, s, j, t) = p;
          se[ConditionalProbTable::index(i, s, j, t)] = std::sqrt(p * (1.0 - p) / n);
        }
      }
  table.set_standard_errors(se);
  return table;
}

ConditionalProbTable renormalize_table(const ConditionalProbTable& raw, NormalizationReport* report) {
  ConditionalProbTable out = raw;
  NormalizationReport rep;
  for (std::size_t i = 0; i < 3; ++i)
    for (Sign s : kSigns)
      for (std::size_t j = 0; j < 3; ++j) {
        const double pp = raw.at(i, s, j, Sign::Plus);
        const double pm = raw.at(i, s, j, Sign::Minus);
        if (!std::isfinite(pp) || !std::isfinite(pm) || pp < 0.0 || pm < 0.0 || !(pp + pm > 0.0)) {
          throw ValidationError("renormalize_table: cannot renormalize " + cell_name(i, s, j));
        }
        const double sum = pp + pm;
        const double dev = std::abs(sum - 1.0);
        if (dev > 0.0) {
          rep.max_adjustment = std::max(rep.max_adjustment, dev);
          ++rep.adjusted_pairs;
          out.at(i, s, j, Sign::Plus) = pp / sum;
          out.at(i, s, j, Sign::Minus) = pm / sum;
        }
      }
  if (report != nullptr) *report = rep;
  return out;
}

ProcessMatrix project_to_physical(const ProcessMatrix& chi) {
  ComplexMatrix p = project_psd(chi.matrix());
  const double tr = p.trace().real();
  if (!(tr > 0.0)) throw ValidationError("project_to_physical: projection has zero trace");
  return ProcessMatrix(Complex(1.0 / tr) * p);
}

namespace {

std::array<Complex, 4> pauli_bell_vector(std::size_t pauli) {
  const std::array<const ComplexMatrix*, 4> ops = {nullptr, &pauli_x(), &pauli_y(), &pauli_z()};
  const ComplexMatrix sigma = pauli == 0 ? ComplexMatrix::identity(2) : *ops.at(pauli);
  std::array<Complex, 4> v{};
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t r = 0; r < 2; ++r) v[2 * a + r] = sigma(r, a) / std::numbers::sqrt2;
  return v;
}

}  // namespace

std::array<double, 4> pauli_weights(const ProcessMatrix& chi) {
  std::array<double, 4> w{};
  for (std::size_t k = 0; k < 4; ++k) {
    const auto v = pauli_bell_vector(k);
    Complex s = 0.0;
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) s += std::conj(v[r]) * chi(r, c) * v[c];
    w[k] = s.real();
  }
  return w;
}

ProcessMatrix pauli_process_matrix(std::size_t pauli) {
  if (pauli >= 4) throw ValidationError("pauli_process_matrix: index must be 0..3");
  const auto v = pauli_bell_vector(pauli);
  ComplexMatrix chi(4, 4);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) chi(r, c) = v[r] * std::conj(v[c]);
  return ProcessMatrix(std::move(chi));
}

}  // namespace gcpcert
