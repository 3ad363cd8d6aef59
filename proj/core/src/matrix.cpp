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

#include "gcpcert/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "gcpcert/errors.hpp"

namespace gcpcert {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream msg;
    msg << op << ": shape mismatch " << a.rows() << "x" << a.cols() << " vs " << b.rows()
        << "x" << b.cols();
    throw ValidationError(msg.str());
  }
}

void require_hermitian(const ComplexMatrix& m, const char* op) {
  if (!m.is_square()) {
    std::ostringstream msg;
    msg << op << ": matrix is not square (" << m.rows() << "x" << m.cols() << ")";
    throw ValidationError(msg.str());
  }
  const double asym = m.hermitian_asymmetry();
  if (!(asym <= kHermitianTolerance)) {
    std::ostringstream msg;
    msg << op << ": matrix is not Hermitian, max |M - M^dagger| = " << asym;
    throw ValidationError(msg.str());
  }
}

// Cholesky factor L (lower, real positive diagonal) with m = L L^dagger.
// Returns false on a non-positive pivot.
bool cholesky(const ComplexMatrix& m, ComplexMatrix& l) {
  const std::size_t n = m.rows();
  l = ComplexMatrix::zeros(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double diag = m(j, j).real();
    for (std::size_t k = 0; k < j; ++k) diag -= std::norm(l(j, k));
    if (!(diag > 0.0)) return false;
    const double ljj = std::sqrt(diag);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      Complex s = m(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
      l(i, j) = s / ljj;
    }
  }
  return true;
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
  if (rows == 0 || cols == 0) throw ValidationError("ComplexMatrix: dimensions must be positive");
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (rows == 0 || cols == 0) throw ValidationError("ComplexMatrix: dimensions must be positive");
  if (data_.size() != rows * cols) {
    throw ValidationError("ComplexMatrix: entry count does not match rows*cols");
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  if (rows_ == 0 || cols_ == 0) throw ValidationError("ComplexMatrix: dimensions must be positive");
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw ValidationError("ComplexMatrix: ragged initializer");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::zeros(std::size_t rows, std::size_t cols) {
  return ComplexMatrix(rows, cols);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

Complex ComplexMatrix::trace() const {
  if (!is_square()) throw ValidationError("trace: matrix is not square");
  Complex t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

double ComplexMatrix::hermitian_asymmetry() const {
  if (!is_square()) throw ValidationError("hermitian_asymmetry: matrix is not square");
  double worst = 0.0;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = r; c < cols_; ++c)
      worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
  return worst;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "operator+");
  ComplexMatrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
  return out;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "operator-");
  ComplexMatrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
  return out;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols_ != b.rows_) throw ValidationError("operator*: inner dimensions differ");
  ComplexMatrix out(a.rows_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Complex ark = a(r, k);
      if (ark == Complex{}) continue;
      for (std::size_t c = 0; c < b.cols_; ++c) out(r, c) += ark * b(k, c);
    }
  return out;
}

ComplexMatrix operator*(Complex s, const ComplexMatrix& m) {
  ComplexMatrix out = m;
  for (auto& z : out.data_) z *= s;
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double worst = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) worst = std::max(worst, std::abs(a(r, c) - b(r, c)));
  return worst;
}

ComplexMatrix HermitianSpectrum::reconstruct() const {
  const std::size_t n = eigenvalues.size();
  ComplexMatrix out(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      Complex s = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        s += eigenvectors(r, k) * eigenvalues[k] * std::conj(eigenvectors(c, k));
      out(r, c) = s;
    }
  return out;
}

HermitianSpectrum hermitian_eigen(const ComplexMatrix& m) {
  require_hermitian(m, "hermitian_eigen");
  const std::size_t n = m.rows();

  // Work on the exact Hermitian part; the residual asymmetry is below tolerance.
  ComplexMatrix a(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    a(r, r) = m(r, r).real();
    for (std::size_t c = r + 1; c < n; ++c) {
      const Complex z = 0.5 * (m(r, c) + std::conj(m(c, r)));
      a(r, c) = z;
      a(c, r) = std::conj(z);
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double stop = 1e-14 * std::max(1.0, a.frobenius_norm());

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        if (r != c) off += std::norm(a(r, c));
    if (std::sqrt(off) < stop) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double b = std::abs(apq);
        if (b == 0.0) continue;
        const Complex phase = apq / b;  // e^{i alpha}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * b);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double cs = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = t * cs;
        // W = diag(1, e^{-i alpha}) * [[c, s], [-s, c]] on the (p, q) plane.
        const Complex wpp = cs;
        const Complex wpq = sn;
        const Complex wqp = -sn * std::conj(phase);
        const Complex wqq = cs * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * wpp + akq * wqp;
          a(k, q) = akp * wpq + akq * wqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(wpp) * apk + std::conj(wqp) * aqk;
          a(q, k) = std::conj(wpq) * apk + std::conj(wqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * wpp + vkq * wqp;
          v(k, q) = vkp * wpq + vkq * wqq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  HermitianSpectrum out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    out.eigenvalues[k] = a(src, src).real();
    // Fix the phase: largest-modulus component real and positive.
    std::size_t pivot = 0;
    for (std::size_t r = 1; r < n; ++r)
      if (std::abs(v(r, src)) > std::abs(v(pivot, src)) + 1e-12) pivot = r;
    const Complex z = v(pivot, src);
    const Complex fix = std::abs(z) > 0.0 ? std::conj(z) / std::abs(z) : Complex{1.0};
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, k) = v(r, src) * fix;
  }
  return out;
}

double min_eigenvalue(const ComplexMatrix& m) { return hermitian_eigen(m).eigenvalues.front(); }

bool is_psd(const ComplexMatrix& m, double tol) { return min_eigenvalue(m) >= -tol; }

ComplexMatrix project_psd(const ComplexMatrix& m) {
  HermitianSpectrum spec = hermitian_eigen(m);
  for (auto& ev : spec.eigenvalues) ev = std::max(ev, 0.0);
  ComplexMatrix out = spec.reconstruct();
  const std::size_t n = out.rows();
  for (std::size_t r = 0; r < n; ++r) {
    out(r, r) = out(r, r).real();
    for (std::size_t c = r + 1; c < n; ++c) {
      const Complex z = 0.5 * (out(r, c) + std::conj(out(c, r)));
      out(r, c) = z;
      out(c, r) = std::conj(z);
    }
  }
  return out;
}

bool is_positive_definite(const ComplexMatrix& m) {
  if (!m.is_square()) return false;
  ComplexMatrix l;
  return cholesky(m, l);
}

ComplexMatrix hpd_inverse(const ComplexMatrix& m) {
  require_hermitian(m, "hpd_inverse");
  const std::size_t n = m.rows();
  ComplexMatrix l;
  if (!cholesky(m, l)) throw ValidationError("hpd_inverse: matrix is not positive definite");
  // Solve L Y = I, then L^dagger X = Y.
  ComplexMatrix y(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    for (std::size_t i = 0; i < n; ++i) {
      Complex s = i == col ? 1.0 : 0.0;
      for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * y(k, col);
      y(i, col) = s / l(i, i);
    }
  }
  ComplexMatrix x(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    for (std::size_t ii = n; ii-- > 0;) {
      Complex s = y(ii, col);
      for (std::size_t k = ii + 1; k < n; ++k) s -= std::conj(l(k, ii)) * x(k, col);
      x(ii, col) = s / l(ii, ii);
    }
  }
  return x;
}

double hpd_log_det(const ComplexMatrix& m) {
  ComplexMatrix l;
  if (!m.is_square() || !cholesky(m, l))
    throw ValidationError("hpd_log_det: matrix is not positive definite");
  double s = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) s += std::log(l(i, i).real());
  return 2.0 * s;
}

TraceProduct trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (!a.is_square() || !b.is_square() || a.rows() != b.rows())
    throw ValidationError("trace_product: shape mismatch");
  TraceProduct out;
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Complex x = a(i, j);
      const Complex y = b(i, j);
      out.real += x.real() * y.real() + x.imag() * y.imag();
      out.imag += (x * b(j, i)).imag();
    }
  return out;
}

FidelityReport fidelity_report(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != 4 || a.cols() != 4 || b.rows() != 4 || b.cols() != 4) {
    std::ostringstream msg;
    msg << "process_fidelity: expected 4x4 process matrices, got " << a.rows() << "x" << a.cols()
        << " and " << b.rows() << "x" << b.cols();
    throw ValidationError(msg.str());
  }
  require_hermitian(a, "process_fidelity");
  require_hermitian(b, "process_fidelity");
  const TraceProduct tp = trace_product(a, b);
  return {tp.real, tp.imag, std::abs(tp.imag) > 1e-9};
}

double process_fidelity(const ComplexMatrix& a, const ComplexMatrix& b) {
  return fidelity_report(a, b).value;
}

}  // namespace gcpcert
