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

#ifndef QINFO_GATES_HPP
#define QINFO_GATES_HPP

#include <cmath>
#include <numbers>

#include "qinfo/matrix.hpp"

namespace qinfo::gates {

inline ComplexMatrix identity2() { return ComplexMatrix::identity(2); }

inline ComplexMatrix pauli_x() {
  return ComplexMatrix(2, 2, {{0, 0}, {1, 0}, {1, 0}, {0, 0}});
}

inline ComplexMatrix pauli_y() {
  return ComplexMatrix(2, 2, {{0, 0}, {0, -1}, {0, 1}, {0, 0}});
}

inline ComplexMatrix pauli_z() {
  return ComplexMatrix(2, 2, {{1, 0}, {0, 0}, {0, 0}, {-1, 0}});
}

inline ComplexMatrix hadamard() {
  const double h = 1.0 / std::sqrt(2.0);
  return ComplexMatrix(2, 2, {{h, 0}, {h, 0}, {h, 0}, {-h, 0}});
}

/// Phase gate S = diag(1, i).
inline ComplexMatrix phase_s() {
  return ComplexMatrix(2, 2, {{1, 0}, {0, 0}, {0, 0}, {0, 1}});
}

/// CNOT with the first of the two targets as control (flip when control = 1).
inline ComplexMatrix cnot() {
  ComplexMatrix m(4, 4);
  m(0, 0) = 1.0;
  m(1, 1) = 1.0;
  m(2, 3) = 1.0;
  m(3, 2) = 1.0;
  return m;
}

/// Rotation about the y axis: Ry(theta)|0> is the +1 eigenvector of
/// cos(theta) sigma_z + sin(theta) sigma_x. Used for measuring spin along an
/// angle in the z-x plane.
inline ComplexMatrix rotation_y(double theta) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  return ComplexMatrix(2, 2, {{c, 0}, {-s, 0}, {s, 0}, {c, 0}});
}

/// Basis unitary for sigma_x measurements: columns are (|0>+|1>)/sqrt(2) and
/// (|0>-|1>)/sqrt(2).
inline ComplexMatrix x_basis() { return hadamard(); }

/// Basis unitary for sigma_y measurements: columns are (|0>+i|1>)/sqrt(2)
/// and (|0>-i|1>)/sqrt(2).
inline ComplexMatrix y_basis() { return phase_s() * hadamard(); }

}  // namespace qinfo::gates

#endif  // QINFO_GATES_HPP
