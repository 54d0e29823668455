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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "qinfo/gates.hpp"
#include "qinfo/random.hpp"
#include "qinfo/state.hpp"

using namespace qinfo;
using Catch::Approx;

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

TEST_CASE("computational basis states follow the qubit-0-is-MSB convention") {
  const PureState zero = computational_basis_state(1, 0);
  REQUIRE(zero.amplitude(0) == Complex(1, 0));

  // |01> of a 2-qubit register is index 1: (0,1,0,0)^T.
  const PureState s01 = computational_basis_state(2, 1);
  REQUIRE(s01.amplitude(1) == Complex(1, 0));
  REQUIRE(std::abs(s01.amplitude(0)) + std::abs(s01.amplitude(2)) +
              std::abs(s01.amplitude(3)) == 0.0);

  // |101> is index 5.
  const PureState s101 = computational_basis_state(3, 5);
  REQUIRE(s101.amplitude(5) == Complex(1, 0));

  REQUIRE_THROWS_AS(computational_basis_state(2, 4), std::invalid_argument);
}

TEST_CASE("PureState validates normalization") {
  REQUIRE_THROWS_AS(PureState(1, ComplexMatrix::column({{0.5, 0}, {0.5, 0}})),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(PureState(2, ComplexMatrix::column({{1, 0}, {0, 0}})),
                    std::invalid_argument);
}

TEST_CASE("Bell states match their table entries") {
  const PureState psi_minus = bell_state(BellState::PsiMinus);
  REQUIRE(psi_minus.amplitude(1).real() == Approx(kInvSqrt2).margin(1e-15));
  REQUIRE(psi_minus.amplitude(2).real() == Approx(-kInvSqrt2).margin(1e-15));

  const PureState phi_plus = bell_state(BellState::PhiPlus);
  REQUIRE(phi_plus.amplitude(0).real() == Approx(kInvSqrt2).margin(1e-15));
  REQUIRE(phi_plus.amplitude(3).real() == Approx(kInvSqrt2).margin(1e-15));

  SECTION("local Paulis on the first half map psi- across the Bell basis") {
    // (sigma_z (x) 1)|psi-> = |psi+> exactly.
    const PureState rotated = apply_gate(psi_minus, gates::pauli_z(), {0});
    REQUIRE(rotated.amplitudes().max_abs_diff(bell_state(BellState::PsiPlus).amplitudes()) <=
            1e-15);
    // (-i sigma_y (x) 1)|psi-> = |phi+>, (-sigma_x (x) 1)|psi-> = |phi->.
    const PureState to_phi_plus =
        apply_gate(psi_minus, gates::pauli_y() * Complex(0, -1), {0});
    REQUIRE(to_phi_plus.amplitudes().max_abs_diff(phi_plus.amplitudes()) <= 1e-15);
    const PureState to_phi_minus =
        apply_gate(psi_minus, gates::pauli_x() * Complex(-1, 0), {0});
    REQUIRE(to_phi_minus.amplitudes().max_abs_diff(
                bell_state(BellState::PhiMinus).amplitudes()) <= 1e-15);
  }

  SECTION("pairwise orthogonal, each side maximally mixed") {
    const std::vector<BellState> all{BellState::PhiPlus, BellState::PhiMinus,
                                     BellState::PsiPlus, BellState::PsiMinus};
    const ComplexMatrix half = ComplexMatrix::identity(2) * Complex(0.5, 0);
    for (std::size_t i = 0; i < all.size(); ++i) {
      const PureState a = bell_state(all[i]);
      for (std::size_t j = i + 1; j < all.size(); ++j) {
        REQUIRE(std::abs(inner_product(a, bell_state(all[j]))) <= 1e-15);
      }
      REQUIRE(reduced_density(a, {0}).matrix().max_abs_diff(half) <= 1e-12);
      REQUIRE(reduced_density(a, {1}).matrix().max_abs_diff(half) <= 1e-12);
    }
  }
}

TEST_CASE("apply_gate basics") {
  const PureState zero = computational_basis_state(1, 0);
  const PureState plus = apply_gate(zero, gates::hadamard(), {0});
  REQUIRE(plus.amplitude(0).real() == Approx(kInvSqrt2).margin(1e-15));
  REQUIRE(plus.amplitude(1).real() == Approx(kInvSqrt2).margin(1e-15));

  // H on qubit 0 then CNOT produces phi+.
  PureState two = computational_basis_state(2, 0);
  two = apply_gate(two, gates::hadamard(), {0});
  two = apply_gate(two, gates::cnot(), {0, 1});
  REQUIRE(fidelity(two, bell_state(BellState::PhiPlus)) == Approx(1.0).margin(1e-12));

  // X on qubit 1 of |00> -> |01>.
  const PureState flipped =
      apply_gate(computational_basis_state(2, 0), gates::pauli_x(), {1});
  REQUIRE(flipped.amplitude(1) == Complex(1, 0));

  SECTION("input validation") {
    ComplexMatrix not_unitary = ComplexMatrix::identity(2);
    not_unitary(0, 0) = Complex(2, 0);
    REQUIRE_THROWS_AS(apply_gate(zero, not_unitary, {0}), std::invalid_argument);
    REQUIRE_THROWS_AS(apply_gate(two, gates::cnot(), {0, 0}), std::invalid_argument);
    REQUIRE_THROWS_AS(apply_gate(two, gates::cnot(), {0, 2}), std::invalid_argument);
    REQUIRE_THROWS_AS(apply_gate(two, gates::hadamard(), {0, 1}), std::invalid_argument);
  }

  SECTION("norm preservation under random unitaries") {
    Rng rng(61);
    for (int t = 0; t < 15; ++t) {
      const PureState s = random_pure_state(3, rng);
      const ComplexMatrix u = random_unitary(4, rng);
      const PureState evolved = apply_gate(s, u, {2, 0});
      double n2 = 0.0;
      for (std::size_t i = 0; i < evolved.dim(); ++i) n2 += std::norm(evolved.amplitude(i));
      REQUIRE(n2 == Approx(1.0).margin(1e-10));
    }
  }
}

TEST_CASE("computational measurement") {
  Rng rng(5);
  SECTION("eigenstate outcome is certain and repeatable") {
    const PureState one = computational_basis_state(1, 1);
    const MeasurementRecord rec = measure_computational(one, {0}, rng);
    REQUIRE(rec.outcome_index == 1);
    REQUIRE(rec.probability == Approx(1.0).margin(1e-12));
    const MeasurementRecord again = measure_computational(rec.post_state, {0}, rng);
    REQUIRE(again.outcome_index == 1);
    REQUIRE(again.probability == Approx(1.0).margin(1e-12));
  }

  SECTION("Born frequencies for an equal superposition") {
    const PureState plus =
        apply_gate(computational_basis_state(1, 0), gates::hadamard(), {0});
    std::size_t ones = 0;
    const std::size_t trials = 10000;
    for (std::size_t t = 0; t < trials; ++t) {
      Rng trial_rng(1000 + t);
      ones += measure_computational(plus, {0}, trial_rng).outcome_index;
    }
    // 3 sigma = 3 * sqrt(0.25/10^4) = 0.015
    REQUIRE(static_cast<double>(ones) / trials == Approx(0.5).margin(0.015));
  }

  SECTION("singlet anticorrelation: qubit 0 read 0 forces qubit 1 to 1") {
    int conditioned = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      Rng r(seed);
      const MeasurementRecord first =
          measure_computational(bell_state(BellState::PsiMinus), {0}, r);
      if (first.outcome_index != 0) continue;
      ++conditioned;
      const MeasurementRecord second = measure_computational(first.post_state, {1}, r);
      REQUIRE(second.outcome_index == 1);
      REQUIRE(second.probability == Approx(1.0).margin(1e-12));
    }
    REQUIRE(conditioned > 50);
  }

  SECTION("record probability equals the Born weight of the outcome") {
    Rng r(77);
    const PureState s = random_pure_state(3, r);
    const MeasurementRecord rec = measure_computational(s, {0, 1, 2}, r);
    REQUIRE(rec.probability == Approx(std::norm(s.amplitude(rec.outcome_index))).margin(1e-10));
  }

  SECTION("outcome probabilities sum to one") {
    Rng r(78);
    for (int t = 0; t < 10; ++t) {
      const PureState s = random_pure_state(4, r);
      const std::vector<double> probs = measurement_probabilities(s, {1, 3});
      double sum = 0.0;
      for (double p : probs) sum += p;
      REQUIRE(sum == Approx(1.0).margin(1e-10));
    }
  }
}

TEST_CASE("measurement in a rotated basis") {
  Rng rng(9);
  const PureState plus =
      apply_gate(computational_basis_state(1, 0), gates::hadamard(), {0});

  SECTION("|+> in the X basis is deterministic") {
    for (int t = 0; t < 20; ++t) {
      const MeasurementRecord rec = measure_in_basis(plus, {0}, gates::x_basis(), rng);
      REQUIRE(rec.outcome_index == 0);
      REQUIRE(rec.probability == Approx(1.0).margin(1e-12));
    }
  }

  SECTION("|0> in the X basis is a fair coin") {
    std::size_t ones = 0;
    const std::size_t trials = 10000;
    const PureState zero = computational_basis_state(1, 0);
    for (std::size_t t = 0; t < trials; ++t) {
      Rng trial_rng(40000 + t);
      ones += measure_in_basis(zero, {0}, gates::x_basis(), trial_rng).outcome_index;
    }
    REQUIRE(static_cast<double>(ones) / trials == Approx(0.5).margin(0.015));
  }

  SECTION("Bell measurement via the disentangling circuit is deterministic") {
    const std::vector<std::pair<BellState, std::size_t>> expected{
        {BellState::PhiPlus, 0},
        {BellState::PsiPlus, 1},
        {BellState::PhiMinus, 2},
        {BellState::PsiMinus, 3},
    };
    for (const auto& [bell, outcome] : expected) {
      PureState s = bell_state(bell);
      s = apply_gate(s, gates::cnot(), {0, 1});
      s = apply_gate(s, gates::hadamard(), {0});
      const MeasurementRecord rec = measure_computational(s, {0, 1}, rng);
      REQUIRE(rec.outcome_index == outcome);
      REQUIRE(rec.probability == Approx(1.0).margin(1e-12));
    }
  }
}

TEST_CASE("measurement traces are bit-exact under a fixed seed") {
  auto run = [](std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::pair<std::size_t, double>> trace;
    PureState s = random_pure_state(3, rng);
    for (int i = 0; i < 5; ++i) {
      const MeasurementRecord rec = measure_in_basis(s, {static_cast<std::size_t>(i % 3)},
                                                     gates::x_basis(), rng);
      trace.push_back({rec.outcome_index, rec.probability});
      s = rec.post_state;
    }
    return std::pair{trace, s};
  };
  const auto [trace_a, final_a] = run(321);
  const auto [trace_b, final_b] = run(321);
  REQUIRE(trace_a == trace_b);
  REQUIRE(final_a.amplitudes().max_abs_diff(final_b.amplitudes()) == 0.0);
}

TEST_CASE("to_density") {
  const DensityOperator zero = to_density(computational_basis_state(1, 0));
  REQUIRE(zero.matrix()(0, 0) == Complex(1, 0));
  REQUIRE(zero.matrix()(1, 1) == Complex(0, 0));

  const PureState plus =
      apply_gate(computational_basis_state(1, 0), gates::hadamard(), {0});
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c)
      REQUIRE(to_density(plus).matrix()(r, c).real() == Approx(0.5).margin(1e-12));

  // psi- projector: 1/2 at (1,1),(2,2), -1/2 at (1,2),(2,1).
  const ComplexMatrix rho = to_density(bell_state(BellState::PsiMinus)).matrix();
  REQUIRE(rho(1, 1).real() == Approx(0.5).margin(1e-12));
  REQUIRE(rho(2, 2).real() == Approx(0.5).margin(1e-12));
  REQUIRE(rho(1, 2).real() == Approx(-0.5).margin(1e-12));
  REQUIRE(rho(2, 1).real() == Approx(-0.5).margin(1e-12));
  REQUIRE(rho(0, 0) == Complex(0, 0));
}

TEST_CASE("DensityOperator validates its invariants") {
  ComplexMatrix not_unit_trace = ComplexMatrix::identity(2);
  REQUIRE_THROWS_AS(DensityOperator(1, not_unit_trace), std::invalid_argument);

  ComplexMatrix not_hermitian(2, 2, {{0.5, 0}, {0.3, 0.1}, {0.3, 0.1}, {0.5, 0}});
  REQUIRE_THROWS_AS(DensityOperator(1, not_hermitian), std::invalid_argument);

  // Hermitian, unit trace, but indefinite.
  ComplexMatrix indefinite(2, 2, {{1.5, 0}, {0, 0}, {0, 0}, {-0.5, 0}});
  REQUIRE_THROWS_AS(DensityOperator(1, indefinite), std::invalid_argument);
}

TEST_CASE("purification") {
  SECTION("maximally mixed qubit purifies to a maximally entangled pair") {
    const DensityOperator mixed(1, ComplexMatrix::identity(2) * Complex(0.5, 0));
    const PureState psi = purify(mixed);
    REQUIRE(psi.num_qubits() == 2);
    REQUIRE(reduced_density(psi, {0}).matrix().max_abs_diff(mixed.matrix()) <= 1e-9);
  }

  SECTION("pure input purifies to a product") {
    const PureState psi = purify(to_density(computational_basis_state(1, 0)));
    REQUIRE(fidelity(psi, computational_basis_state(2, 0)) == Approx(1.0).margin(1e-12));
  }

  SECTION("diag(3/4, 1/4) purifies to sqrt(3/4)|00> + sqrt(1/4)|11>") {
    ComplexMatrix d(2, 2);
    d(0, 0) = 0.75;
    d(1, 1) = 0.25;
    const PureState psi = purify(DensityOperator(1, d));
    ComplexMatrix expected(4, 1);
    expected(0, 0) = std::sqrt(0.75);
    expected(3, 0) = std::sqrt(0.25);
    REQUIRE(fidelity(psi, PureState(2, expected)) == Approx(1.0).margin(1e-12));
    REQUIRE(reduced_density(psi, {0}).matrix().max_abs_diff(d) <= 1e-9);
  }

  SECTION("purify-then-trace is the identity on random mixed states") {
    Rng rng(93);
    for (int t = 0; t < 8; ++t) {
      const DensityOperator rho = random_density(2, rng);
      const PureState psi = purify(rho);
      REQUIRE(psi.num_qubits() == 4);
      REQUIRE(reduced_density(psi, {0, 1}).matrix().max_abs_diff(rho.matrix()) <= 1e-9);
    }
  }
}

TEST_CASE("swap_states") {
  // |01> -> |10>
  const PureState swapped = swap_states(computational_basis_state(2, 1), {0}, {1});
  REQUIRE(swapped.amplitude(2) == Complex(1, 0));

  SECTION("product states exchange factors") {
    Rng rng(15);
    const PureState a = random_qubit_state(rng);
    const PureState b = random_qubit_state(rng);
    const PureState ab(2, tensor(a.amplitudes(), b.amplitudes()));
    const PureState ba(2, tensor(b.amplitudes(), a.amplitudes()));
    REQUIRE(fidelity(swap_states(ab, {0}, {1}), ba) == Approx(1.0).margin(1e-12));
  }

  SECTION("involution on a random register") {
    Rng rng(16);
    const PureState s = random_pure_state(4, rng);
    const PureState twice = swap_states(swap_states(s, {0, 1}, {2, 3}), {0, 1}, {2, 3});
    REQUIRE(twice.amplitudes().max_abs_diff(s.amplitudes()) <= 1e-15);
  }

  REQUIRE_THROWS_AS(swap_states(computational_basis_state(3, 0), {0, 1}, {2}),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(swap_states(computational_basis_state(2, 0), {0}, {0}),
                    std::invalid_argument);
}

TEST_CASE("drop_qubits extracts the conditional state") {
  Rng rng(55);
  const MeasurementRecord rec =
      measure_computational(computational_basis_state(2, 1), {0}, rng);
  const PureState rest = drop_qubits(rec.post_state, {0}, rec.outcome_index);
  REQUIRE(rest.num_qubits() == 1);
  REQUIRE(fidelity(rest, computational_basis_state(1, 1)) == Approx(1.0).margin(1e-12));

  REQUIRE_THROWS_AS(drop_qubits(computational_basis_state(2, 0), {0, 1}, 0),
                    std::invalid_argument);
  // Conditioning on a zero-amplitude branch is an error.
  REQUIRE_THROWS_AS(drop_qubits(computational_basis_state(2, 0), {0}, 1),
                    std::invalid_argument);
}
