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

#include "gcpcert/mimicry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gcpcert/errors.hpp"
#include "gcpcert/linear_program.hpp"
#include "parallel.hpp"

namespace gcpcert {
namespace {

constexpr std::size_t kVars = 64;

// Dense 4x4 complex scratch type for the inner loops.
using M4 = std::array<Complex, 16>;

M4 to_m4(const ComplexMatrix& m) {
  M4 out{};
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) out[r * 4 + c] = m(r, c);
  return out;
}

ComplexMatrix from_m4(const M4& m) {
  ComplexMatrix out(4, 4);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) out(r, c) = m[r * 4 + c];
  return out;
}

M4 mul4(const M4& a, const M4& b) {
  M4 out{};
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t k = 0; k < 4; ++k) {
      const Complex a_rk = a[r * 4 + k];
      for (std::size_t c = 0; c < 4; ++c) out[r * 4 + c] += a_rk * b[k * 4 + c];
    }
  return out;
}

// Lower Cholesky factor; false unless strictly positive definite.
bool chol4(const M4& a, M4& l) {
  l.fill(Complex(0.0));
  for (std::size_t j = 0; j < 4; ++j) {
    double d = a[j * 4 + j].real();
    for (std::size_t k = 0; k < j; ++k) d -= std::norm(l[j * 4 + k]);
    if (!(d > 0.0) || !std::isfinite(d)) return false;
    const double ljj = std::sqrt(d);
    l[j * 4 + j] = ljj;
    for (std::size_t i = j + 1; i < 4; ++i) {
      Complex s = a[i * 4 + j];
      for (std::size_t k = 0; k < j; ++k) s -= l[i * 4 + k] * std::conj(l[j * 4 + k]);
      l[i * 4 + j] = s / ljj;
    }
  }
  return true;
}

double chol_log_det(const M4& l) {
  double s = 0.0;
  for (std::size_t i = 0; i < 4; ++i) s += std::log(l[i * 4 + i].real());
  return 2.0 * s;
}

M4 chol_inverse(const M4& l) {
  M4 y{};
  for (std::size_t col = 0; col < 4; ++col)
    for (std::size_t i = 0; i < 4; ++i) {
      Complex s = i == col ? 1.0 : 0.0;
      for (std::size_t k = 0; k < i; ++k) s -= l[i * 4 + k] * y[k * 4 + col];
      y[i * 4 + col] = s / l[i * 4 + i];
    }
  M4 x{};
  for (std::size_t col = 0; col < 4; ++col)
    for (std::size_t ii = 4; ii-- > 0;) {
      Complex s = y[ii * 4 + col];
      for (std::size_t k = ii + 1; k < 4; ++k) s -= std::conj(l[k * 4 + ii]) * x[k * 4 + col];
      x[ii * 4 + col] = s / l[ii * 4 + ii];
    }
  // Symmetrize away rounding so later traces stay real.
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = r; c < 4; ++c) {
      const Complex avg = 0.5 * (x[r * 4 + c] + std::conj(x[c * 4 + r]));
      x[r * 4 + c] = avg;
      x[c * 4 + r] = std::conj(avg);
    }
  return x;
}

// Re tr(a b).
double re_trace_product(const M4& a, const M4& b) {
  double s = 0.0;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) s += (a[r * 4 + c] * b[c * 4 + r]).real();
  return s;
}

// In-place Cholesky of a dense SPD matrix (n x n, row-major). On success the
// lower triangle holds L.
bool real_cholesky(std::vector<double>& a, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    double d = a[j * n + j];
    for (std::size_t k = 0; k < j; ++k) d -= a[j * n + k] * a[j * n + k];
    if (!(d > 0.0) || !std::isfinite(d)) return false;
    const double ljj = std::sqrt(d);
    a[j * n + j] = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a[i * n + j];
      for (std::size_t k = 0; k < j; ++k) s -= a[i * n + k] * a[j * n + k];
      a[i * n + j] = s / ljj;
    }
  }
  return true;
}

void cholesky_solve(const std::vector<double>& l, std::size_t n, std::vector<double>& rhs) {
  for (std::size_t i = 0; i < n; ++i) {
    double s = rhs[i];
    for (std::size_t k = 0; k < i; ++k) s -= l[i * n + k] * rhs[k];
    rhs[i] = s / l[i * n + i];
  }
  for (std::size_t ii = n; ii-- > 0;) {
    double s = rhs[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= l[k * n + ii] * rhs[k];
    rhs[ii] = s / l[ii * n + ii];
  }
}

// Small dense solve with partial pivoting (the Schur complement has at most
// four rows).
std::vector<double> lu_solve(std::vector<double> a, std::vector<double> b, std::size_t n) {
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
    if (a[piv * n + col] == 0.0) throw InvariantError("mimicry: singular constraint system");
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[col * n + c], a[piv * n + c]);
      std::swap(b[col], b[piv]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r * n + col] / a[col * n + col];
      for (std::size_t c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = b[ii];
    for (std::size_t c = ii + 1; c < n; ++c) s -= a[ii * n + c] * x[c];
    x[ii] = s / a[ii * n + ii];
  }
  return x;
}

// Householder QR of a tall n x m matrix (row-major), kept in factored form.
class Householder {
 public:
  Householder(std::vector<double> a, std::size_t n, std::size_t m) : n_(n), m_(m), v_(m), beta_(m, 0.0) {
    for (std::size_t j = 0; j < m; ++j) {
      double norm = 0.0;
      for (std::size_t i = j; i < n; ++i) norm += a[i * m + j] * a[i * m + j];
      norm = std::sqrt(norm);
      std::vector<double>& v = v_[j];
      v.assign(n, 0.0);
      if (norm == 0.0) continue;
      const double alpha = a[j * m + j] > 0.0 ? -norm : norm;
      for (std::size_t i = j; i < n; ++i) v[i] = a[i * m + j];
      v[j] -= alpha;
      double vv = 0.0;
      for (std::size_t i = j; i < n; ++i) vv += v[i] * v[i];
      if (vv == 0.0) continue;
      beta_[j] = 2.0 / vv;
      for (std::size_t c = j; c < m; ++c) {
        double d = 0.0;
        for (std::size_t i = j; i < n; ++i) d += v[i] * a[i * m + c];
        d *= beta_[j];
        for (std::size_t i = j; i < n; ++i) a[i * m + c] -= d * v[i];
      }
    }
  }

  // w <- Q^T w
  void apply_transpose(std::vector<double>& w) const {
    for (std::size_t j = 0; j < m_; ++j) reflect(j, w.data(), 1);
  }
  // w <- Q w
  void apply(std::vector<double>& w) const {
    for (std::size_t j = m_; j-- > 0;) reflect(j, w.data(), 1);
  }
  // Symmetric n x n h <- Q^T h Q.
  void apply_transpose_rows_cols(std::vector<double>& h) const {
    for (std::size_t j = 0; j < m_; ++j)
      for (std::size_t c = 0; c < n_; ++c) reflect(j, h.data() + c, n_);
    for (std::size_t j = 0; j < m_; ++j)
      for (std::size_t r = 0; r < n_; ++r) reflect(j, h.data() + r * n_, 1);
  }

 private:
  void reflect(std::size_t j, double* w, std::size_t stride) const {
    if (beta_[j] == 0.0) return;
    const std::vector<double>& v = v_[j];
    double d = 0.0;
    for (std::size_t i = j; i < n_; ++i) d += v[i] * w[i * stride];
    d *= beta_[j];
    for (std::size_t i = j; i < n_; ++i) w[i * stride] -= d * v[i];
  }

  std::size_t n_;
  std::size_t m_;
  std::vector<std::vector<double>> v_;
  std::vector<double> beta_;
};

struct Evaluation {
  bool feasible = false;
  double value = 0.0;  // barrier objective to be minimized
  M4 chol{};
};

class BarrierSolver {
 public:
  BarrierSolver(const MimicryProblem& p, const SolverConfig& cfg) : p_(p), cfg_(cfg) {
    for (std::size_t k = 0; k < kVars; ++k) b_[k] = to_m4(p.basis[k]);
    const std::size_t rows = p.equality_rows.size();
    gram_.resize(rows * rows);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t q = 0; q < rows; ++q) {
        double s = 0.0;
        for (std::size_t k = 0; k < kVars; ++k) s += p.equality_rows[r][k] * p.equality_rows[q][k];
        gram_[r * rows + q] = s;
      }
  }

  SolverResult run() {
    SolverResult out;
    std::array<double, kVars> x;
    x.fill(2.0 / static_cast<double>(kVars));
    const std::size_t rows = p_.equality_rows.size();
    const double barrier_params = static_cast<double>(kVars + 4);
    double t = 1.0;
    std::size_t newton = 0;
    bool budget_exhausted = false;

    double last_centered_value = linear(x);
    double last_centered_t = 0.0;
    while (true) {
      const std::array<double, kVars> before = x;
      const Centering status = center(x, t, newton);
      if (status == Centering::BudgetExhausted) {
        budget_exhausted = true;
        break;
      }
      if (status == Centering::Stalled) {
        // Rounding stopped progress before the centering criterion was met,
        // so the m/t bound does not apply here. Fall back to the previous
        // centered point when there is one.
        if (last_centered_t > 0.0) {
          if (linear(x) < linear(before)) x = before;
          break;
        }
      }
      last_centered_value = linear(x);
      last_centered_t = t;
      out.trajectory.push_back(last_centered_value);
      if (barrier_params / t <= cfg_.tolerance) break;
      t *= cfg_.barrier_growth;
    }

    out.iterations = newton;
    // Optimum <= value at the last centered point + m / t there.
    out.duality_gap = last_centered_t > 0.0
                          ? barrier_params / last_centered_t + last_centered_value - linear(x)
                          : std::numeric_limits<double>::infinity();
    out.converged = !budget_exhausted && out.duality_gap <= cfg_.tolerance;
    out.value = linear(x);

    const M4 g = chi_of(x);
    out.psd_residual = std::max(0.0, -min_eigenvalue(from_m4(g)));
    double poly = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
      double s = 0.0;
      for (std::size_t k = 0; k < kVars; ++k) s += p_.equality_rows[r][k] * x[k];
      poly = std::max(poly, std::abs(s - p_.equality_rhs[r]));
    }
    for (double v : x) poly = std::max(poly, -v);
    out.polytope_residual = poly;

    // The barrier keeps x strictly positive; clamp rounding-level negatives
    // before handing the point to the validating constructor.
    std::array<double, kVars> clean = x;
    for (double& v : clean) v = std::max(v, 0.0);
    out.omega_star = JointTransitionMatrix(clean, p_.marginals);
    out.chi = ProcessMatrix(from_m4(g), 1e-9);
    return out;
  }

 private:
  double linear(const std::array<double, kVars>& x) const {
    double s = 0.0;
    for (std::size_t k = 0; k < kVars; ++k) s += p_.objective[k] * x[k];
    return s;
  }

  M4 chi_of(const std::array<double, kVars>& x) const {
    M4 g{};
    for (std::size_t k = 0; k < kVars; ++k)
      for (std::size_t e = 0; e < 16; ++e) g[e] += x[k] * b_[k][e];
    return g;
  }

  Evaluation evaluate(const std::array<double, kVars>& x, double t) const {
    Evaluation ev;
    double logs = 0.0;
    for (double v : x) {
      if (!(v > 0.0)) return ev;
      logs += std::log(v);
    }
    const M4 g = chi_of(x);
    if (!chol4(g, ev.chol)) return ev;
    ev.feasible = true;
    ev.value = -t * linear(x) - logs - chol_log_det(ev.chol);
    return ev;
  }

  enum class Centering { Centered, Stalled, BudgetExhausted };

  // Newton centering at barrier weight t.
  Centering center(std::array<double, kVars>& x, double t, std::size_t& newton) const {
    const std::size_t rows = p_.equality_rows.size();
    Evaluation ev = evaluate(x, t);
    if (!ev.feasible) throw InvariantError("mimicry: iterate left the interior");
    int flat_steps = 0;

    for (;;) {
      if (newton >= cfg_.max_iterations) return Centering::BudgetExhausted;
      ++newton;

      const M4 ginv = chol_inverse(ev.chol);
      std::array<M4, kVars> c;
      std::array<double, kVars> grad;
      for (std::size_t k = 0; k < kVars; ++k) {
        c[k] = mul4(ginv, b_[k]);
        double tr = 0.0;
        for (std::size_t d = 0; d < 4; ++d) tr += c[k][d * 4 + d].real();
        grad[k] = -t * p_.objective[k] - 1.0 / x[k] - tr;
      }

      // Scaled variables dx = X dy: Hessian I + X P X, gradient X g.
      std::vector<double> h(kVars * kVars);
      for (std::size_t k = 0; k < kVars; ++k)
        for (std::size_t l = 0; l <= k; ++l) {
          const double v = x[k] * x[l] * re_trace_product(c[k], c[l]);
          h[k * kVars + l] = v;
          h[l * kVars + k] = v;
        }
      for (std::size_t k = 0; k < kVars; ++k) h[k * kVars + k] += 1.0;

      std::vector<double> gs(kVars);
      for (std::size_t k = 0; k < kVars; ++k) gs[k] = x[k] * grad[k];

      // Restrict to the null space of the scaled constraints A X: with
      // (A X)^T = Q R, the trailing columns of Q span it orthonormally, so
      // the reduced Hessian keeps the conditioning of the scaled one.
      std::vector<double> ax(kVars * rows);
      for (std::size_t k = 0; k < kVars; ++k)
        for (std::size_t r = 0; r < rows; ++r) ax[k * rows + r] = p_.equality_rows[r][k] * x[k];
      const Householder q(ax, kVars, rows);
      q.apply_transpose_rows_cols(h);
      std::vector<double> qg = gs;
      q.apply_transpose(qg);

      const std::size_t free = kVars - rows;
      std::vector<double> hz(free * free);
      for (std::size_t i = 0; i < free; ++i)
        for (std::size_t j = 0; j < free; ++j) hz[i * free + j] = h[(rows + i) * kVars + rows + j];
      factor_regularized(hz, free);
      std::vector<double> z(free);
      for (std::size_t i = 0; i < free; ++i) z[i] = -qg[rows + i];
      cholesky_solve(hz, free, z);

      std::vector<double> dyv(kVars, 0.0);
      for (std::size_t i = 0; i < free; ++i) dyv[rows + i] = z[i];
      q.apply(dyv);

      std::array<double, kVars> dx;
      double decrement = 0.0;
      for (std::size_t k = 0; k < kVars; ++k) {
        decrement -= gs[k] * dyv[k];
        dx[k] = x[k] * dyv[k];
      }
      if (decrement * 0.5 <= cfg_.centering_tolerance) return Centering::Centered;
      remove_constraint_drift(dx);

      double slope = 0.0;
      for (std::size_t k = 0; k < kVars; ++k) slope += grad[k] * dx[k];

      double step = 1.0;
      for (std::size_t k = 0; k < kVars; ++k)
        if (dx[k] < 0.0) step = std::min(step, -0.99 * x[k] / dx[k]);

      bool moved = false;
      for (int bt = 0; bt < 80; ++bt) {
        std::array<double, kVars> trial;
        for (std::size_t k = 0; k < kVars; ++k) trial[k] = x[k] + step * dx[k];
        Evaluation tr = evaluate(trial, t);
        if (tr.feasible && tr.value <= ev.value + 0.01 * step * slope) {
          moved = trial != x;
          flat_steps = tr.value < ev.value ? 0 : flat_steps + 1;
          x = trial;
          ev = tr;
          break;
        }
        step *= 0.5;
      }
      if (!moved || flat_steps > 20) return Centering::Stalled;
    }
  }

  // Far along the central path the scaled Hessian is I plus a term of size
  // ~t^2, and rounding can defeat a plain Cholesky. Retry with a growing
  // diagonal shift; the line search absorbs the slightly damped direction.
  static void factor_regularized(std::vector<double>& h, std::size_t n) {
    double scale = 0.0;
    for (std::size_t k = 0; k < n; ++k) scale = std::max(scale, h[k * n + k]);
    std::vector<double> work = h;
    double shift = 0.0;
    for (int attempt = 0; attempt < 20; ++attempt) {
      if (real_cholesky(work, n)) {
        h = std::move(work);
        return;
      }
      shift = shift == 0.0 ? 1e-14 * scale : shift * 100.0;
      work = h;
      for (std::size_t k = 0; k < n; ++k) work[k * n + k] += shift;
    }
    throw InvariantError("mimicry: Newton system not positive definite");
  }

  // Rounding in an ill-conditioned Newton solve leaves A dx slightly off
  // zero; project it out so the iterates stay on the constraint set.
  void remove_constraint_drift(std::array<double, kVars>& dx) const {
    const std::size_t rows = p_.equality_rows.size();
    std::vector<double> res(rows);
    for (std::size_t r = 0; r < rows; ++r) {
      double s = 0.0;
      for (std::size_t k = 0; k < kVars; ++k) s += p_.equality_rows[r][k] * dx[k];
      res[r] = s;
    }
    const std::vector<double> lam = lu_solve(gram_, res, rows);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t k = 0; k < kVars; ++k) dx[k] -= p_.equality_rows[r][k] * lam[r];
  }

  const MimicryProblem& p_;
  const SolverConfig& cfg_;
  std::vector<double> gram_;
  std::array<M4, kVars> b_;
};

}  // namespace

MimicryProblem MimicryProblem::build(const ObservableTriple& obs, MarginalMode marginals) {
  MimicryProblem p;
  p.obs = obs;
  p.marginals = marginals;
  const ComplexMatrix ideal = ideal_process_matrix().matrix();
  for (std::size_t k = 0; k < kVars; ++k) {
    std::array<double, 64> e{};
    e[k] = 2.0;
    ComplexMatrix b = gcp_process_block(e, obs);
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) b(r, c) *= 0.5;
    p.objective[k] = trace_product(b, ideal).real;
    p.basis[k] = std::move(b);
  }
  p.equality_rows.push_back(std::vector<double>(kVars, 1.0));
  p.equality_rhs.push_back(2.0);
  if (marginals == MarginalMode::Uniform) {
    for (std::size_t i = 0; i < 3; ++i) {
      std::vector<double> row(kVars, 0.0);
      for (std::size_t xi = 0; xi < 8; ++xi)
        if (classical_value(xi, i) == Sign::Plus)
          for (std::size_t mu = 0; mu < 8; ++mu) row[xi * 8 + mu] = 1.0;
      p.equality_rows.push_back(std::move(row));
      p.equality_rhs.push_back(1.0);
    }
  }
  return p;
}

double MimicryProblem::fidelity(const std::array<double, 64>& omega) const {
  double s = 0.0;
  for (std::size_t k = 0; k < kVars; ++k) s += objective[k] * omega[k];
  return s;
}

ComplexMatrix MimicryProblem::chi(const std::array<double, 64>& omega) const {
  ComplexMatrix g(4, 4);
  for (std::size_t k = 0; k < kVars; ++k)
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) g(r, c) += omega[k] * basis[k](r, c);
  return g;
}

std::array<double, 64> objective_coefficients(const ObservableTriple& obs) {
  return MimicryProblem::build(obs, MarginalMode::Relaxed).objective;
}

SolverResult maximize_gcp_fidelity(const MimicryProblem& problem, const SolverConfig& cfg) {
  if (!(cfg.tolerance > 0.0) || !(cfg.barrier_growth > 1.0) || cfg.max_iterations == 0)
    throw ValidationError("maximize_gcp_fidelity: invalid solver configuration");
  BarrierSolver solver(problem, cfg);
  SolverResult out = solver.run();
  const LpBound lp = lp_relaxation(problem.obs, problem.marginals);
  out.lp_bound = lp.value;
  out.lp_gap = lp.value - out.value;
  out.certified = out.psd_residual <= cfg.tolerance && out.polytope_residual <= 1e-9 &&
                  (out.duality_gap <= cfg.certify_gap || std::abs(out.lp_gap) <= cfg.certify_gap);
  return out;
}

SolverResult maximize_gcp_fidelity(const ObservableTriple& obs, const SolverConfig& cfg) {
  return maximize_gcp_fidelity(MimicryProblem::build(obs, cfg.marginals), cfg);
}

LpBound lp_relaxation(const ObservableTriple& obs, MarginalMode marginals) {
  const MimicryProblem p = MimicryProblem::build(obs, marginals);
  const LpResult r = maximize_lp(p.objective, p.equality_rows, p.equality_rhs);
  if (r.status != LpStatus::Optimal) throw InvariantError("lp_relaxation: simplex did not reach an optimum");
  LpBound out;
  out.value = r.value;
  std::copy(r.x.begin(), r.x.end(), out.omega.begin());
  return out;
}

double lp_upper_bound(const ObservableTriple& obs, MarginalMode marginals) {
  return lp_relaxation(obs, marginals).value;
}

ThresholdSurface scan_thresholds(const std::vector<double>& thetas, const std::vector<double>& phis,
                                 const SolverConfig& cfg, unsigned threads) {
  if (thetas.empty() || phis.empty()) throw ValidationError("scan_thresholds: empty grid");
  const std::size_t total = thetas.size() * phis.size();
  ThresholdSurface out;
  out.points.resize(total);

  detail::parallel_for_index(total, threads, [&](std::size_t idx) {
    ScanPoint pt;
    pt.theta = thetas[idx / phis.size()];
    pt.phi = phis[idx % phis.size()];
    const SolverResult r = maximize_gcp_fidelity(rotated_observables(pt.theta, pt.phi), cfg);
    pt.f_gc = r.value;
    pt.certified = r.certified;
    out.points[idx] = pt;
  });

  out.minimum = std::numeric_limits<double>::infinity();
  for (const ScanPoint& pt : out.points) {
    out.minimum = std::min(out.minimum, pt.f_gc);
    if (!pt.certified) ++out.uncertified;
  }
  for (const ScanPoint& pt : out.points)
    if (pt.f_gc <= out.minimum + 1e-6) out.minimizers.push_back(pt);
  std::stable_sort(out.minimizers.begin(), out.minimizers.end(), [](const ScanPoint& a, const ScanPoint& b) {
    return a.theta != b.theta ? a.theta < b.theta : a.phi < b.phi;
  });
  return out;
}

std::array<double, 64> project_onto_polytope(const std::array<double, 64>& y, const MimicryProblem& problem,
                                             std::size_t max_iterations, double tolerance) {
  const std::size_t rows = problem.equality_rows.size();
  const auto& a = problem.equality_rows;
  std::vector<double> gram(rows * rows);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t q = 0; q < rows; ++q) {
      double s = 0.0;
      for (std::size_t k = 0; k < kVars; ++k) s += a[r][k] * a[q][k];
      gram[r * rows + q] = s;
    }
  auto affine = [&](std::array<double, 64> v) {
    std::vector<double> res(rows);
    for (std::size_t r = 0; r < rows; ++r) {
      double s = -problem.equality_rhs[r];
      for (std::size_t k = 0; k < kVars; ++k) s += a[r][k] * v[k];
      res[r] = s;
    }
    const std::vector<double> lam = lu_solve(gram, res, rows);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t k = 0; k < kVars; ++k) v[k] -= a[r][k] * lam[r];
    return v;
  };

  // The affine set is a subspace translate, so only the orthant step needs a
  // Dykstra correction term.
  std::array<double, 64> x = y;
  std::array<double, 64> corr{};
  for (std::size_t it = 0; it < max_iterations; ++it) {
    const std::array<double, 64> z = affine(x);
    std::array<double, 64> next;
    double change = 0.0;
    for (std::size_t k = 0; k < kVars; ++k) {
      const double shifted = z[k] + corr[k];
      next[k] = std::max(shifted, 0.0);
      corr[k] = shifted - next[k];
      change = std::max(change, std::abs(next[k] - x[k]));
    }
    x = next;
    if (change <= tolerance) break;
  }
  // Final exact affine step; the orthant violation left is within tolerance.
  x = affine(x);
  for (double& v : x) v = std::max(v, 0.0);
  return x;
}

NearestGcp nearest_gcp(const ProcessMatrix& target, const ObservableTriple& obs, MarginalMode marginals,
                       std::size_t max_iterations, double tolerance) {
  const MimicryProblem p = MimicryProblem::build(obs, marginals);
  double lipschitz = 0.0;
  for (std::size_t k = 0; k < kVars; ++k) {
    double s = 0.0;
    for (std::size_t l = 0; l < kVars; ++l) s += std::abs(trace_product(p.basis[k], p.basis[l]).real);
    lipschitz = std::max(lipschitz, s);
  }
  const double step = 1.0 / lipschitz;
  const ComplexMatrix& t = target.matrix();

  auto gradient = [&](const std::array<double, 64>& x) {
    const ComplexMatrix diff = p.chi(x) - t;
    std::array<double, 64> g;
    for (std::size_t k = 0; k < kVars; ++k) g[k] = trace_product(p.basis[k], diff).real;
    return g;
  };

  std::array<double, 64> x;
  x.fill(2.0 / 64.0);
  std::array<double, 64> y = x;
  double momentum = 1.0;
  NearestGcp out;
  std::size_t it = 0;
  for (; it < max_iterations; ++it) {
    const std::array<double, 64> g = gradient(y);
    std::array<double, 64> trial;
    for (std::size_t k = 0; k < kVars; ++k) trial[k] = y[k] - step * g[k];
    const std::array<double, 64> xn = project_onto_polytope(trial, p, 500, 1e-15);
    const double mn = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
    double change = 0.0;
    for (std::size_t k = 0; k < kVars; ++k) {
      y[k] = xn[k] + ((momentum - 1.0) / mn) * (xn[k] - x[k]);
      change = std::max(change, std::abs(xn[k] - x[k]));
    }
    x = xn;
    momentum = mn;
    if (change <= tolerance || (p.chi(x) - t).frobenius_norm() <= tolerance) break;
  }
  out.iterations = it;
  out.omega = JointTransitionMatrix(x, marginals);
  const ComplexMatrix fit = p.chi(x);
  out.chi = ProcessMatrix(fit, 1e-6);
  out.residual = (fit - t).frobenius_norm();
  return out;
}

}  // namespace gcpcert
