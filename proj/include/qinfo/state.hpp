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

#ifndef QINFO_STATE_HPP
#define QINFO_STATE_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "qinfo/decomp.hpp"
#include "qinfo/matrix.hpp"
#include "qinfo/rng.hpp"

namespace qinfo {

// Qubit ordering convention, used everywhere in this library:
// qubit 0 is the leftmost tensor factor and the most significant bit of a
// computational basis index. |01> is basis index 1 of a 2-qubit register.

constexpr double kNormTol = 1e-10;
constexpr double kUnitaryTol = 1e-10;
constexpr double kPsdTol = 1e-9;

/// Pure state of an n-qubit register. Amplitudes are stored as a 2^n x 1
/// column and must be normalized within 1e-10.
class PureState {
 public:
  PureState(std::size_t num_qubits, ComplexMatrix amplitudes)
      : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
    if (num_qubits_ == 0) {
      throw std::invalid_argument("PureState: need at least one qubit");
    }
    const std::size_t dim = std::size_t{1} << num_qubits_;
    if (amplitudes_.rows() != dim || amplitudes_.cols() != 1) {
      throw std::invalid_argument("PureState: amplitude column must have length 2^n");
    }
    double n2 = 0.0;
    for (const Complex& z : amplitudes_.entries()) n2 += std::norm(z);
    if (std::abs(n2 - 1.0) > kNormTol) {
      throw std::invalid_argument("PureState: squared amplitudes sum to " +
                                  std::to_string(n2) + ", not 1");
    }
  }

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return amplitudes_.rows(); }
  const ComplexMatrix& amplitudes() const { return amplitudes_; }
  const Complex& amplitude(std::size_t i) const { return amplitudes_(i, 0); }

 private:
  std::size_t num_qubits_;
  ComplexMatrix amplitudes_;
};

/// Density operator of an n-qubit register: Hermitian within 1e-10, unit
/// trace within 1e-10, and positive semidefinite (min eigenvalue >= -1e-9).
/// All three invariants are checked at construction.
class DensityOperator {
 public:
  DensityOperator(std::size_t num_qubits, ComplexMatrix matrix)
      : num_qubits_(num_qubits), matrix_(std::move(matrix)) {
    if (num_qubits_ == 0) {
      throw std::invalid_argument("DensityOperator: need at least one qubit");
    }
    const std::size_t dim = std::size_t{1} << num_qubits_;
    if (matrix_.rows() != dim || matrix_.cols() != dim) {
      throw std::invalid_argument("DensityOperator: matrix must be 2^n x 2^n");
    }
    if (!matrix_.is_hermitian(kNormTol)) {
      throw std::invalid_argument("DensityOperator: matrix not Hermitian within 1e-10");
    }
    if (std::abs(matrix_.trace().real() - 1.0) > kNormTol ||
        std::abs(matrix_.trace().imag()) > kNormTol) {
      throw std::invalid_argument("DensityOperator: trace is not 1");
    }
    const EigResult eig = hermitian_eig(matrix_);
    if (eig.eigenvalues.back() < -kPsdTol) {
      throw std::invalid_argument("DensityOperator: negative eigenvalue " +
                                  std::to_string(eig.eigenvalues.back()));
    }
  }

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  std::size_t num_qubits_;
  ComplexMatrix matrix_;
};

/// One projective measurement: the outcome index over the measured targets
/// (first target = most significant bit), its Born probability, and the
/// renormalized post-measurement state of the full register.
struct MeasurementRecord {
  std::size_t outcome_index;
  double probability;
  PureState post_state;
};

enum class BellState { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

inline const char* bell_name(BellState s) {
  switch (s) {
    case BellState::PhiPlus: return "phi+";
    case BellState::PhiMinus: return "phi-";
    case BellState::PsiPlus: return "psi+";
    case BellState::PsiMinus: return "psi-";
  }
  return "?";
}

inline PureState computational_basis_state(std::size_t num_qubits, std::size_t index) {
  const std::size_t dim = std::size_t{1} << num_qubits;
  if (index >= dim) {
    throw std::invalid_argument("computational_basis_state: index out of range");
  }
  ComplexMatrix amps(dim, 1);
  amps(index, 0) = Complex(1.0, 0.0);
  return PureState(num_qubits, std::move(amps));
}

inline PureState bell_state(BellState which) {
  const double r = 1.0 / std::sqrt(2.0);
  ComplexMatrix amps(4, 1);
  switch (which) {
    case BellState::PhiPlus:
      amps(0, 0) = r;
      amps(3, 0) = r;
      break;
    case BellState::PhiMinus:
      amps(0, 0) = r;
      amps(3, 0) = -r;
      break;
    case BellState::PsiPlus:
      amps(1, 0) = r;
      amps(2, 0) = r;
      break;
    case BellState::PsiMinus:
      amps(1, 0) = r;
      amps(2, 0) = -r;
      break;
  }
  return PureState(2, std::move(amps));
}

namespace detail {

inline void check_targets(std::size_t num_qubits, const std::vector<std::size_t>& targets) {
  if (targets.empty()) throw std::invalid_argument("no target qubits given");
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] >= num_qubits) {
      throw std::invalid_argument("target qubit " + std::to_string(targets[i]) +
                                  " out of range");
    }
    for (std::size_t j = i + 1; j < targets.size(); ++j) {
      if (targets[i] == targets[j]) {
        throw std::invalid_argument("duplicate target qubit");
      }
    }
  }
}

/// Bit positions (shift amounts) for each target; target j maps to bit
/// j of the local index counted from the most significant local bit.
inline std::vector<int> target_shifts(std::size_t num_qubits,
                                      const std::vector<std::size_t>& targets) {
  std::vector<int> shifts(targets.size());
  for (std::size_t j = 0; j < targets.size(); ++j) {
    shifts[j] = static_cast<int>(num_qubits - 1 - targets[j]);
  }
  return shifts;
}

inline std::size_t gather_bits(std::size_t index, const std::vector<int>& shifts) {
  std::size_t local = 0;
  for (int s : shifts) local = (local << 1) | ((index >> s) & 1u);
  return local;
}

inline std::size_t scatter_bits(std::size_t local, const std::vector<int>& shifts) {
  std::size_t index = 0;
  const std::size_t k = shifts.size();
  for (std::size_t j = 0; j < k; ++j) {
    index |= ((local >> (k - 1 - j)) & 1u) << shifts[j];
  }
  return index;
}

}  // namespace detail

/// Evolve the state by a unitary acting on the listed qubits (in the listed
/// order; the first target is the gate's most significant qubit). The gate is
/// embedded into the register via identity padding and index permutation.
inline PureState apply_gate(const PureState& state, const ComplexMatrix& gate,
                            const std::vector<std::size_t>& targets) {
  detail::check_targets(state.num_qubits(), targets);
  const std::size_t k = targets.size();
  const std::size_t gate_dim = std::size_t{1} << k;
  if (gate.rows() != gate_dim || gate.cols() != gate_dim) {
    throw std::invalid_argument("apply_gate: gate dimension does not match target count");
  }
  if (!gate.is_unitary(kUnitaryTol)) {
    throw std::invalid_argument("apply_gate: gate is not unitary within 1e-10");
  }

  const std::vector<int> shifts = detail::target_shifts(state.num_qubits(), targets);
  std::size_t target_mask = 0;
  for (int s : shifts) target_mask |= std::size_t{1} << s;

  const std::size_t dim = state.dim();
  ComplexMatrix out(dim, 1);
  std::vector<Complex> block(gate_dim);
  for (std::size_t base = 0; base < dim; ++base) {
    if ((base & target_mask) != 0) continue;
    for (std::size_t l = 0; l < gate_dim; ++l) {
      block[l] = state.amplitude(base | detail::scatter_bits(l, shifts));
    }
    for (std::size_t l = 0; l < gate_dim; ++l) {
      Complex acc(0.0, 0.0);
      for (std::size_t l2 = 0; l2 < gate_dim; ++l2) acc += gate(l, l2) * block[l2];
      out(base | detail::scatter_bits(l, shifts), 0) = acc;
    }
  }
  return PureState(state.num_qubits(), std::move(out));
}

/// Born probabilities of each outcome over the listed target qubits.
inline std::vector<double> measurement_probabilities(
    const PureState& state, const std::vector<std::size_t>& targets) {
  detail::check_targets(state.num_qubits(), targets);
  const std::vector<int> shifts = detail::target_shifts(state.num_qubits(), targets);
  std::vector<double> probs(std::size_t{1} << targets.size(), 0.0);
  for (std::size_t i = 0; i < state.dim(); ++i) {
    probs[detail::gather_bits(i, shifts)] += std::norm(state.amplitude(i));
  }
  return probs;
}

/// Projective measurement of the listed qubits in the computational basis.
/// The outcome is drawn from the given generator; the post-state is the
/// renormalized projection, so an immediate repeat reproduces the outcome
/// with probability 1.
inline MeasurementRecord measure_computational(const PureState& state,
                                               const std::vector<std::size_t>& targets,
                                               Rng& rng) {
  const std::vector<double> probs = measurement_probabilities(state, targets);
  const double u = rng.next_double();
  double cumulative = 0.0;
  std::size_t outcome = probs.size() - 1;
  for (std::size_t l = 0; l < probs.size(); ++l) {
    cumulative += probs[l];
    if (u < cumulative) {
      outcome = l;
      break;
    }
  }
  const double p = probs[outcome];

  const std::vector<int> shifts = detail::target_shifts(state.num_qubits(), targets);
  const double scale = 1.0 / std::sqrt(p);
  ComplexMatrix post(state.dim(), 1);
  for (std::size_t i = 0; i < state.dim(); ++i) {
    if (detail::gather_bits(i, shifts) == outcome) {
      post(i, 0) = state.amplitude(i) * scale;
    }
  }
  return MeasurementRecord{outcome, p, PureState(state.num_qubits(), std::move(post))};
}

/// Measurement in the basis given by the columns of `basis_unitary`:
/// equivalent to rotating by U^dagger, reading out computationally, then
/// rotating the post-state back by U.
inline MeasurementRecord measure_in_basis(const PureState& state,
                                          const std::vector<std::size_t>& targets,
                                          const ComplexMatrix& basis_unitary, Rng& rng) {
  const PureState rotated = apply_gate(state, basis_unitary.dagger(), targets);
  MeasurementRecord rec = measure_computational(rotated, targets, rng);
  PureState post = apply_gate(rec.post_state, basis_unitary, targets);
  return MeasurementRecord{rec.outcome_index, rec.probability, std::move(post)};
}

inline Complex inner_product(const PureState& a, const PureState& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("inner_product: dimension mismatch");
  }
  Complex acc(0.0, 0.0);
  for (std::size_t i = 0; i < a.dim(); ++i) {
    acc += std::conj(a.amplitude(i)) * b.amplitude(i);
  }
  return acc;
}

/// |<a|b>|^2. States are compared by fidelity throughout, never
/// amplitude-wise: protocol corrections act up to an unobservable global
/// phase.
inline double fidelity(const PureState& a, const PureState& b) {
  return std::norm(inner_product(a, b));
}

inline DensityOperator to_density(const PureState& state) {
  const std::size_t dim = state.dim();
  ComplexMatrix rho(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      rho(r, c) = state.amplitude(r) * std::conj(state.amplitude(c));
    }
  }
  return DensityOperator(state.num_qubits(), std::move(rho));
}

/// Reduced state of the listed qubits (order preserved).
inline DensityOperator reduced_density(const PureState& state,
                                       const std::vector<std::size_t>& keep) {
  const DensityOperator rho = to_density(state);
  const std::vector<std::size_t> dims(state.num_qubits(), 2);
  ComplexMatrix reduced = partial_trace(rho.matrix(), dims, keep);
  return DensityOperator(keep.size(), std::move(reduced));
}

/// Purification: a 2n-qubit pure state (system qubits first, ancilla qubits
/// second) built as sum_i sqrt(lambda_i) |v_i> (x) |i> from the
/// eigendecomposition, whose partial trace over the ancilla returns rho.
inline PureState purify(const DensityOperator& rho) {
  const EigResult eig = hermitian_eig(rho.matrix());
  const std::size_t dim = rho.dim();
  ComplexMatrix amps(dim * dim, 1);
  double total = 0.0;
  for (std::size_t j = 0; j < dim; ++j) {
    double lambda = eig.eigenvalues[j];
    if (lambda < -kPsdTol) {
      throw std::invalid_argument("purify: input has negative eigenvalue");
    }
    if (lambda < 0.0) lambda = 0.0;
    total += lambda;
    const double root = std::sqrt(lambda);
    for (std::size_t a = 0; a < dim; ++a) {
      amps(a * dim + j, 0) = root * eig.eigenvectors(a, j);
    }
  }
  // Renormalize away eigenvalue rounding drift.
  const double scale = 1.0 / std::sqrt(total);
  for (Complex& z : amps.entries()) z *= scale;
  return PureState(2 * rho.num_qubits(), std::move(amps));
}

/// Unitary permutation exchanging two equal-sized disjoint groups of qubits
/// (pairwise: subsystem_a[i] <-> subsystem_b[i]).
inline PureState swap_states(const PureState& joint,
                             const std::vector<std::size_t>& subsystem_a,
                             const std::vector<std::size_t>& subsystem_b) {
  if (subsystem_a.size() != subsystem_b.size()) {
    throw std::invalid_argument("swap_states: subsystems must have equal qubit count");
  }
  std::vector<std::size_t> all = subsystem_a;
  all.insert(all.end(), subsystem_b.begin(), subsystem_b.end());
  detail::check_targets(joint.num_qubits(), all);

  const std::size_t n = joint.num_qubits();
  ComplexMatrix out(joint.dim(), 1);
  for (std::size_t i = 0; i < joint.dim(); ++i) {
    std::size_t j = i;
    for (std::size_t k = 0; k < subsystem_a.size(); ++k) {
      const int sa = static_cast<int>(n - 1 - subsystem_a[k]);
      const int sb = static_cast<int>(n - 1 - subsystem_b[k]);
      const std::size_t ba = (i >> sa) & 1u;
      const std::size_t bb = (i >> sb) & 1u;
      j = (j & ~(std::size_t{1} << sa) & ~(std::size_t{1} << sb)) | (bb << sa) | (ba << sb);
    }
    out(j, 0) = joint.amplitude(i);
  }
  return PureState(n, std::move(out));
}

/// State of the remaining qubits, given that the listed qubits hold the
/// computational value `outcome` (e.g. after measuring them).
inline PureState drop_qubits(const PureState& state,
                             const std::vector<std::size_t>& targets,
                             std::size_t outcome) {
  detail::check_targets(state.num_qubits(), targets);
  if (targets.size() >= state.num_qubits()) {
    throw std::invalid_argument("drop_qubits: nothing would remain");
  }
  const std::vector<int> shifts = detail::target_shifts(state.num_qubits(), targets);

  std::vector<std::size_t> remaining;
  for (std::size_t q = 0; q < state.num_qubits(); ++q) {
    bool is_target = false;
    for (std::size_t t : targets) {
      if (t == q) is_target = true;
    }
    if (!is_target) remaining.push_back(q);
  }
  const std::vector<int> rem_shifts = detail::target_shifts(state.num_qubits(), remaining);

  ComplexMatrix out(std::size_t{1} << remaining.size(), 1);
  double norm2 = 0.0;
  for (std::size_t i = 0; i < state.dim(); ++i) {
    if (detail::gather_bits(i, shifts) != outcome) continue;
    const Complex z = state.amplitude(i);
    out(detail::gather_bits(i, rem_shifts), 0) = z;
    norm2 += std::norm(z);
  }
  if (norm2 < 1e-24) {
    throw std::invalid_argument("drop_qubits: conditional state has zero weight");
  }
  const double scale = 1.0 / std::sqrt(norm2);
  for (Complex& z : out.entries()) z *= scale;
  return PureState(remaining.size(), std::move(out));
}

}  // namespace qinfo

#endif  // QINFO_STATE_HPP
