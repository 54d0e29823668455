// Copyright 2026 The qinfo Authors
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

#ifndef QINFO_DECOMP_HPP
#define QINFO_DECOMP_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "qinfo/matrix.hpp"

namespace qinfo {

/// Eigendecomposition of a Hermitian matrix: m = V diag(lambda) V^dagger,
/// eigenvalues sorted descending (ties keep their original diagonal order).
struct EigResult {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;  // columns, aligned with eigenvalues
};

/// Singular value decomposition m = U diag(s) V^dagger with s descending,
/// all s >= 0. U is rows x k and V is cols x k with k = min(rows, cols);
/// both have orthonormal columns.
struct SvdResult {
  ComplexMatrix u;
  std::vector<double> singular_values;
  ComplexMatrix v;
};

namespace detail {

constexpr double kHermitianTol = 1e-10;
constexpr double kJacobiOffNorm = 1e-12;
constexpr int kJacobiMaxSweeps = 100;

/// Unitary 2x2 block that diagonalizes the Hermitian block
/// [[alpha, beta], [conj(beta), gamma]]. Returned as entries
/// (gpp, gpq, gqp, gqq); the phase of beta is folded into the second column
/// so only a real Givens rotation remains.
struct JacobiRotation {
  Complex gpp, gpq, gqp, gqq;
};

inline JacobiRotation jacobi_rotation(double alpha, double gamma, Complex beta) {
  const double abs_beta = std::abs(beta);
  const Complex phase = beta / abs_beta;  // e^{i arg(beta)}
  const double tau = (gamma - alpha) / (2.0 * abs_beta);
  double t;
  if (tau >= 0.0) {
    t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
  } else {
    t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
  }
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  // G = diag(1, conj(phase)) * [[c, s], [-s, c]]
  JacobiRotation g;
  g.gpp = Complex(c, 0.0);
  g.gpq = Complex(s, 0.0);
  g.gqp = -s * std::conj(phase);
  g.gqq = c * std::conj(phase);
  return g;
}

/// In-place column update M <- M * G on columns (p, q).
inline void apply_rotation_columns(ComplexMatrix& m, std::size_t p, std::size_t q,
                                   const JacobiRotation& g) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const Complex mp = m(i, p);
    const Complex mq = m(i, q);
    m(i, p) = mp * g.gpp + mq * g.gqp;
    m(i, q) = mp * g.gpq + mq * g.gqq;
  }
}

/// In-place row update M <- G^dagger * M on rows (p, q).
inline void apply_rotation_rows(ComplexMatrix& m, std::size_t p, std::size_t q,
                                const JacobiRotation& g) {
  for (std::size_t j = 0; j < m.cols(); ++j) {
    const Complex mp = m(p, j);
    const Complex mq = m(q, j);
    m(p, j) = std::conj(g.gpp) * mp + std::conj(g.gqp) * mq;
    m(q, j) = std::conj(g.gpq) * mp + std::conj(g.gqq) * mq;
  }
}

inline double off_diagonal_norm(const ComplexMatrix& m) {
  double s = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (r != c) s += std::norm(m(r, c));
    }
  }
  return std::sqrt(s);
}

/// Descending stable order of values; ties keep lower original index first.
inline std::vector<std::size_t> descending_order(const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  return order;
}

/// Fill any near-zero columns of u (flagged in `degenerate`) with an
/// orthonormal completion drawn from the standard basis.
inline void orthonormal_completion(ComplexMatrix& u, const std::vector<bool>& degenerate) {
  const std::size_t m = u.rows();
  const std::size_t k = u.cols();
  for (std::size_t j = 0; j < k; ++j) {
    if (!degenerate[j]) continue;
    for (std::size_t cand = 0; cand < m; ++cand) {
      std::vector<Complex> v(m, Complex(0.0, 0.0));
      v[cand] = Complex(1.0, 0.0);
      // Remove projections onto all other (already valid) columns.
      for (std::size_t c = 0; c < k; ++c) {
        if (c == j || (degenerate[c] && c > j)) continue;
        Complex proj(0.0, 0.0);
        for (std::size_t i = 0; i < m; ++i) proj += std::conj(u(i, c)) * v[i];
        for (std::size_t i = 0; i < m; ++i) v[i] -= proj * u(i, c);
      }
      double nrm = 0.0;
      for (const Complex& z : v) nrm += std::norm(z);
      nrm = std::sqrt(nrm);
      if (nrm > 0.5) {
        for (std::size_t i = 0; i < m; ++i) u(i, j) = v[i] / nrm;
        break;
      }
    }
  }
}

}  // namespace detail

/// Cyclic Jacobi eigendecomposition for Hermitian matrices. Deterministic and
/// dependency-free; converges when the off-diagonal norm drops below 1e-12 or
/// after 100 sweeps. Input must be Hermitian within 1e-10 (max entrywise
/// |m - m^dagger|); anything worse is an error, not silently symmetrized.
inline EigResult hermitian_eig(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("hermitian_eig: matrix not square");
  }
  if (!m.is_hermitian(detail::kHermitianTol)) {
    throw std::invalid_argument("hermitian_eig: matrix not Hermitian within 1e-10");
  }
  const std::size_t n = m.rows();
  ComplexMatrix a = m;
  ComplexMatrix v = ComplexMatrix::identity(n);

  for (int sweep = 0; sweep < detail::kJacobiMaxSweeps; ++sweep) {
    if (detail::off_diagonal_norm(a) <= detail::kJacobiOffNorm) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex beta = a(p, q);
        if (std::abs(beta) < 1e-300) continue;
        const detail::JacobiRotation g =
            detail::jacobi_rotation(a(p, p).real(), a(q, q).real(), beta);
        detail::apply_rotation_columns(a, p, q, g);
        detail::apply_rotation_rows(a, p, q, g);
        detail::apply_rotation_columns(v, p, q, g);
        a(p, q) = Complex(0.0, 0.0);
        a(q, p) = Complex(0.0, 0.0);
      }
    }
  }

  std::vector<double> eigvals(n);
  for (std::size_t i = 0; i < n; ++i) eigvals[i] = a(i, i).real();
  const std::vector<std::size_t> order = detail::descending_order(eigvals);

  EigResult out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.eigenvalues[j] = eigvals[order[j]];
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, j) = v(i, order[j]);
  }
  return out;
}

/// One-sided Jacobi SVD. Columns of a working copy are rotated pairwise until
/// mutually orthogonal; the accumulated rotations form V and the normalized
/// columns form U. Handles rectangular input (either orientation) and
/// rank-deficient matrices.
inline SvdResult svd(const ComplexMatrix& m) {
  if (m.rows() < m.cols()) {
    // Decompose the adjoint and swap factors: m = (V) s (U)^dagger.
    SvdResult t = svd(m.dagger());
    return SvdResult{std::move(t.v), std::move(t.singular_values), std::move(t.u)};
  }
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  ComplexMatrix w = m;
  ComplexMatrix v = ComplexMatrix::identity(cols);

  const double scale = std::max(1.0, w.frobenius_norm());
  const double tol = 1e-14 * scale * scale;

  for (int sweep = 0; sweep < detail::kJacobiMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < cols; ++p) {
      for (std::size_t q = p + 1; q < cols; ++q) {
        double app = 0.0, aqq = 0.0;
        Complex apq(0.0, 0.0);
        for (std::size_t i = 0; i < rows; ++i) {
          app += std::norm(w(i, p));
          aqq += std::norm(w(i, q));
          apq += std::conj(w(i, p)) * w(i, q);
        }
        if (std::abs(apq) <= tol * 1e-2 ||
            std::abs(apq) <= 1e-15 * std::sqrt(app * aqq)) {
          continue;
        }
        const detail::JacobiRotation g = detail::jacobi_rotation(app, aqq, apq);
        detail::apply_rotation_columns(w, p, q, g);
        detail::apply_rotation_columns(v, p, q, g);
        rotated = true;
      }
    }
    if (!rotated) break;
  }

  std::vector<double> sigmas(cols);
  for (std::size_t j = 0; j < cols; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < rows; ++i) s += std::norm(w(i, j));
    sigmas[j] = std::sqrt(s);
  }
  const std::vector<std::size_t> order = detail::descending_order(sigmas);

  SvdResult out;
  out.singular_values.resize(cols);
  out.u = ComplexMatrix(rows, cols);
  out.v = ComplexMatrix(cols, cols);
  std::vector<bool> degenerate(cols, false);
  const double sigma_floor = 1e-13 * std::max(1.0, scale);
  for (std::size_t j = 0; j < cols; ++j) {
    const std::size_t src = order[j];
    out.singular_values[j] = sigmas[src];
    for (std::size_t i = 0; i < cols; ++i) out.v(i, j) = v(i, src);
    if (sigmas[src] > sigma_floor) {
      for (std::size_t i = 0; i < rows; ++i) out.u(i, j) = w(i, src) / sigmas[src];
    } else {
      degenerate[j] = true;
    }
  }
  detail::orthonormal_completion(out.u, degenerate);
  return out;
}

}  // namespace qinfo

#endif  // QINFO_DECOMP_HPP
