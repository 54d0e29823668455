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

#ifndef QINFO_INFO_HPP
#define QINFO_INFO_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "qinfo/decomp.hpp"
#include "qinfo/matrix.hpp"
#include "qinfo/state.hpp"

namespace qinfo {

// Eigenvalues in [-1e-9, 0] are treated as exact zeros when evaluating
// entropies; anything more negative is a corrupt state and a hard error.
constexpr double kEigenClamp = 1e-9;

// Schmidt coefficients below 1e-9 relative to the largest one do not count
// towards the Schmidt rank. This is the separability cutoff.
constexpr double kSchmidtRankTol = 1e-9;

/// A weighted set of density operators over a common register: the model of
/// an information source emitting state rho_i with probability p_i.
struct Ensemble {
  std::vector<DensityOperator> states;
  std::vector<double> probabilities;

  Ensemble(std::vector<DensityOperator> s, std::vector<double> p)
      : states(std::move(s)), probabilities(std::move(p)) {
    if (states.empty() || states.size() != probabilities.size()) {
      throw std::invalid_argument("Ensemble: need matching nonempty states/probabilities");
    }
    double total = 0.0;
    for (double q : probabilities) {
      if (q <= 0.0) throw std::invalid_argument("Ensemble: probabilities must be > 0");
      total += q;
    }
    if (std::abs(total - 1.0) > kNormTol) {
      throw std::invalid_argument("Ensemble: probabilities sum to " + std::to_string(total));
    }
    for (const DensityOperator& rho : states) {
      if (rho.num_qubits() != states.front().num_qubits()) {
        throw std::invalid_argument("Ensemble: states must share the qubit count");
      }
    }
  }

  std::size_t num_qubits() const { return states.front().num_qubits(); }
};

/// Biorthogonal expansion of a bipartite pure state: coefficients are the
/// positive Schmidt coefficients in descending order (squares sum to 1), and
/// basis_a / basis_b hold the matching orthonormal columns. The number of
/// stored coefficients is the Schmidt rank.
struct SchmidtDecomposition {
  std::vector<double> coefficients;
  ComplexMatrix basis_a;
  ComplexMatrix basis_b;

  std::size_t rank() const { return coefficients.size(); }
};

/// H = -sum p_i log2 p_i with 0 log 0 := 0. Input must be a probability
/// distribution (entries >= 0, sum 1 within 1e-10).
inline double shannon_entropy(const std::vector<double>& probabilities) {
  double total = 0.0;
  for (double p : probabilities) {
    if (p < 0.0 || !std::isfinite(p)) {
      throw std::invalid_argument("shannon_entropy: invalid probability");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kNormTol) {
    throw std::invalid_argument("shannon_entropy: probabilities sum to " +
                                std::to_string(total));
  }
  double h = 0.0;
  for (double p : probabilities) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

/// S(rho) = -sum lambda_i log2 lambda_i over the eigenvalues.
inline double von_neumann_entropy(const DensityOperator& rho) {
  const EigResult eig = hermitian_eig(rho.matrix());
  double s = 0.0;
  for (double lambda : eig.eigenvalues) {
    if (lambda < -kEigenClamp) {
      throw std::invalid_argument("von_neumann_entropy: eigenvalue " +
                                  std::to_string(lambda) + " below clamp range");
    }
    if (lambda > 0.0) s -= lambda * std::log2(lambda);
  }
  return s;
}

namespace detail {

inline void check_cut(const PureState& state, std::size_t cut) {
  if (cut == 0 || cut >= state.num_qubits()) {
    throw std::invalid_argument("bipartition must leave qubits on both sides");
  }
}

}  // namespace detail

/// Amplitudes of `state` reshaped into a 2^cut x 2^(n-cut) coefficient
/// matrix across the (first cut qubits | rest) bipartition.
inline ComplexMatrix coefficient_matrix(const PureState& state, std::size_t cut) {
  detail::check_cut(state, cut);
  const std::size_t rows = std::size_t{1} << cut;
  const std::size_t cols = std::size_t{1} << (state.num_qubits() - cut);
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < state.dim(); ++i) {
    m(i / cols, i % cols) = state.amplitude(i);
  }
  return m;
}

/// Schmidt decomposition across the (first cut qubits | rest) bipartition,
/// computed as the SVD of the reshaped amplitude matrix.
inline SchmidtDecomposition schmidt_decompose(const PureState& state, std::size_t cut) {
  const ComplexMatrix coeff = coefficient_matrix(state, cut);
  SvdResult s = svd(coeff);

  std::size_t rank = 0;
  const double cutoff = kSchmidtRankTol * std::max(s.singular_values[0], 1e-300);
  for (double sv : s.singular_values) {
    if (sv > cutoff) ++rank;
  }

  SchmidtDecomposition out;
  out.coefficients.assign(s.singular_values.begin(), s.singular_values.begin() + rank);
  out.basis_a = ComplexMatrix(s.u.rows(), rank);
  out.basis_b = ComplexMatrix(s.v.rows(), rank);
  for (std::size_t j = 0; j < rank; ++j) {
    for (std::size_t i = 0; i < s.u.rows(); ++i) out.basis_a(i, j) = s.u(i, j);
    // A = U S V^dagger means the B-side vectors are the conjugated V columns.
    for (std::size_t i = 0; i < s.v.rows(); ++i) out.basis_b(i, j) = std::conj(s.v(i, j));
  }
  return out;
}

inline bool is_entangled_pure(const PureState& state, std::size_t cut) {
  return schmidt_decompose(state, cut).rank() >= 2;
}

/// Entanglement entropy in ebits across the (first cut qubits | rest)
/// bipartition: the von Neumann entropy of either reduced state.
inline double entanglement_entropy(const PureState& state, std::size_t cut) {
  detail::check_cut(state, cut);
  std::vector<std::size_t> keep(cut);
  for (std::size_t i = 0; i < cut; ++i) keep[i] = i;
  return von_neumann_entropy(reduced_density(state, keep));
}

/// Peres-Horodecki test for 2-qubit density operators. Transposes the second
/// qubit (the choice of side does not change the spectrum) and reports the
/// minimum eigenvalue; separable iff it is >= -1e-9, which is an exact
/// criterion at 2x2 dimensions only.
struct PptResult {
  bool is_separable;
  double min_eigenvalue;
};

inline PptResult ppt_check(const DensityOperator& rho) {
  if (rho.num_qubits() != 2) {
    throw std::invalid_argument("ppt_check: defined for 2-qubit states");
  }
  ComplexMatrix pt(4, 4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l)
          pt(2 * i + j, 2 * k + l) = rho.matrix()(2 * i + l, 2 * k + j);
  const EigResult eig = hermitian_eig(pt);
  const double min_eig = eig.eigenvalues.back();
  return PptResult{min_eig >= -kPsdTol, min_eig};
}

/// Holevo quantity chi = S(sum p_i rho_i) - sum p_i S(rho_i): the ceiling on
/// classical information extractable from the ensemble by any measurement.
inline double holevo_chi(const Ensemble& ensemble) {
  const std::size_t dim = ensemble.states.front().dim();
  ComplexMatrix avg(dim, dim);
  double mean_entropy = 0.0;
  for (std::size_t i = 0; i < ensemble.states.size(); ++i) {
    avg = avg + ensemble.states[i].matrix() * Complex(ensemble.probabilities[i], 0.0);
    mean_entropy += ensemble.probabilities[i] * von_neumann_entropy(ensemble.states[i]);
  }
  const DensityOperator avg_state(ensemble.num_qubits(), std::move(avg));
  return von_neumann_entropy(avg_state) - mean_entropy;
}

/// log2(dimension): the maximum information obtainable from measurements on
/// a system with that many orthogonal states.
inline double max_accessible_info(std::size_t dimension) {
  if (dimension < 1) throw std::invalid_argument("max_accessible_info: dimension >= 1");
  return std::log2(static_cast<double>(dimension));
}

/// The cloning identity <a|b> = <a|b>^2 admits only |<a|b>| in {0, 1}: a
/// pair of states is jointly clonable iff orthogonal or identical.
struct CloningConsistency {
  Complex overlap;
  bool clonable_pair;
};

inline CloningConsistency cloning_consistency(const PureState& alpha,
                                              const PureState& beta) {
  const Complex overlap = inner_product(alpha, beta);
  const double mag = std::abs(overlap);
  const bool clonable = mag <= 1e-9 || std::abs(mag - 1.0) <= 1e-9;
  return CloningConsistency{overlap, clonable};
}

/// States can be broadcast iff they commute: checks the commutator entrywise.
inline bool broadcastable(const DensityOperator& rho_a, const DensityOperator& rho_b) {
  if (rho_a.dim() != rho_b.dim()) {
    throw std::invalid_argument("broadcastable: dimension mismatch");
  }
  const ComplexMatrix comm =
      rho_a.matrix() * rho_b.matrix() - rho_b.matrix() * rho_a.matrix();
  return comm.max_abs() <= 1e-9;
}

}  // namespace qinfo

#endif  // QINFO_INFO_HPP
