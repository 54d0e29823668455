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

#ifndef QINFO_RANDOM_HPP
#define QINFO_RANDOM_HPP

#include <cmath>
#include <numbers>

#include "qinfo/matrix.hpp"
#include "qinfo/rng.hpp"
#include "qinfo/state.hpp"

namespace qinfo {

/// Single-qubit state uniform on the Bloch sphere:
/// cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
inline PureState random_qubit_state(Rng& rng) {
  const double theta = std::acos(1.0 - 2.0 * rng.next_double());
  const double phi = 2.0 * std::numbers::pi * rng.next_double();
  ComplexMatrix amps(2, 1);
  amps(0, 0) = Complex(std::cos(theta / 2.0), 0.0);
  amps(1, 0) = std::polar(std::sin(theta / 2.0), phi);
  return PureState(1, std::move(amps));
}

/// Haar-ish random n-qubit pure state: normalized complex Gaussian vector.
inline PureState random_pure_state(std::size_t num_qubits, Rng& rng) {
  const std::size_t dim = std::size_t{1} << num_qubits;
  ComplexMatrix amps(dim, 1);
  double norm2 = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    const Complex z(rng.next_gaussian(), rng.next_gaussian());
    amps(i, 0) = z;
    norm2 += std::norm(z);
  }
  const double scale = 1.0 / std::sqrt(norm2);
  for (Complex& z : amps.entries()) z *= scale;
  return PureState(num_qubits, std::move(amps));
}

/// Haar-ish random unitary: Gram-Schmidt on a complex Gaussian matrix.
inline ComplexMatrix random_unitary(std::size_t dim, Rng& rng) {
  ComplexMatrix m(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      m(r, c) = Complex(rng.next_gaussian(), rng.next_gaussian());
    }
  }
  for (std::size_t c = 0; c < dim; ++c) {
    for (int pass = 0; pass < 2; ++pass) {  // re-orthogonalize for stability
      for (std::size_t prev = 0; prev < c; ++prev) {
        Complex proj(0.0, 0.0);
        for (std::size_t r = 0; r < dim; ++r) proj += std::conj(m(r, prev)) * m(r, c);
        for (std::size_t r = 0; r < dim; ++r) m(r, c) -= proj * m(r, prev);
      }
    }
    double norm2 = 0.0;
    for (std::size_t r = 0; r < dim; ++r) norm2 += std::norm(m(r, c));
    const double scale = 1.0 / std::sqrt(norm2);
    for (std::size_t r = 0; r < dim; ++r) m(r, c) *= scale;
  }
  return m;
}

/// Random mixed state: a Haar-ish pure state on twice the qubits, reduced to
/// the first n.
inline DensityOperator random_density(std::size_t num_qubits, Rng& rng) {
  const PureState big = random_pure_state(2 * num_qubits, rng);
  std::vector<std::size_t> keep(num_qubits);
  for (std::size_t i = 0; i < num_qubits; ++i) keep[i] = i;
  return reduced_density(big, keep);
}

}  // namespace qinfo

#endif  // QINFO_RANDOM_HPP
