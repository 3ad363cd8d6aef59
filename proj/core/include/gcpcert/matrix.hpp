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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace gcpcert {

using Complex = std::complex<double>;

// Global Hermiticity tolerance. Inputs outside it are rejected, never
// silently symmetrized.
inline constexpr double kHermitianTolerance = 1e-9;

// Dense row-major complex matrix for the small (<= 8x8) operators used
// throughout: density matrices, observables and process matrices.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix zeros(std::size_t rows, std::size_t cols);
  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  std::span<const Complex> entries() const { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  Complex trace() const;
  double frobenius_norm() const;
  // max |M - M^dagger|; throws for non-square input.
  double hermitian_asymmetry() const;

  friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(Complex s, const ComplexMatrix& m);
  friend ComplexMatrix operator*(const ComplexMatrix& m, Complex s) { return s * m; }
  friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Largest entrywise modulus of a - b. Shapes must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// Eigen-decomposition M = Q diag(eigenvalues) Q^dagger with eigenvalues in
// ascending order and orthonormal eigenvector columns.
struct HermitianSpectrum {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;

  ComplexMatrix reconstruct() const;
};

// Cyclic Jacobi rotations; stops once the off-diagonal Frobenius mass falls
// below 1e-14 (relative to max(1, |M|_F)). Deterministic for a fixed input.
// Throws ValidationError for non-square input or asymmetry above
// kHermitianTolerance.
HermitianSpectrum hermitian_eigen(const ComplexMatrix& m);

double min_eigenvalue(const ComplexMatrix& m);

// true iff the smallest eigenvalue is >= -tol.
bool is_psd(const ComplexMatrix& m, double tol);

// Nearest positive semidefinite matrix in Frobenius norm (eigenvalue clip).
ComplexMatrix project_psd(const ComplexMatrix& m);

// Cholesky test for strict positive definiteness; used on hot paths where a
// full eigen-decomposition is unnecessary.
bool is_positive_definite(const ComplexMatrix& m);

// Inverse of a Hermitian positive definite matrix via Cholesky. Throws
// ValidationError if the matrix is not positive definite.
ComplexMatrix hpd_inverse(const ComplexMatrix& m);

// log det of a Hermitian positive definite matrix via Cholesky.
double hpd_log_det(const ComplexMatrix& m);

// tr(a b) split into parts. `real` is accumulated row-major from the
// per-entry terms Re(a_ij) Re(b_ij) + Im(a_ij) Im(b_ij), which are symmetric in
// (a, b), so swapping the arguments is bit-identical. `imag` is the imaginary
// residue of the full trace and is ~0 for Hermitian inputs.
struct TraceProduct {
  double real = 0.0;
  double imag = 0.0;
};

TraceProduct trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

struct FidelityReport {
  double value = 0.0;
  double imaginary_residue = 0.0;
  // |imaginary_residue| > 1e-9: the inputs are mutually inconsistent.
  bool inconsistent = false;
};

// Process fidelity Re tr(a b) of two 4x4 Hermitian matrices. Throws
// ValidationError on shape mismatch or asymmetry above kHermitianTolerance.
FidelityReport fidelity_report(const ComplexMatrix& a, const ComplexMatrix& b);
double process_fidelity(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace gcpcert
