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

#ifndef QINFO_PROTOCOLS_HPP
#define QINFO_PROTOCOLS_HPP

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qinfo/gates.hpp"
#include "qinfo/matrix.hpp"
#include "qinfo/random.hpp"
#include "qinfo/rng.hpp"
#include "qinfo/state.hpp"

namespace qinfo {

/// Ordered record of everything a protocol run did: preparations, gates,
/// measurements and classical messages. Events are append-only and
/// timestamped by step index.
class ProtocolTranscript {
 public:
  enum class Kind { Prepare, Gate, Measure, ClassicalMessage };

  struct Event {
    std::size_t step;
    Kind kind;
    std::string label;                  // state label / gate name / basis name
    std::vector<std::size_t> targets;   // gate and measure events
    std::size_t outcome = 0;            // measure events
    std::string sender, receiver;       // classical messages
    std::vector<int> bits;              // classical messages
  };

  void prepare(std::string label) {
    Event e;
    e.step = events_.size();
    e.kind = Kind::Prepare;
    e.label = std::move(label);
    events_.push_back(std::move(e));
  }

  void gate(std::string name, std::vector<std::size_t> targets) {
    Event e;
    e.step = events_.size();
    e.kind = Kind::Gate;
    e.label = std::move(name);
    e.targets = std::move(targets);
    events_.push_back(std::move(e));
  }

  void measure(std::string basis, std::vector<std::size_t> targets, std::size_t outcome) {
    Event e;
    e.step = events_.size();
    e.kind = Kind::Measure;
    e.label = std::move(basis);
    e.targets = std::move(targets);
    e.outcome = outcome;
    events_.push_back(std::move(e));
  }

  void classical_message(std::string sender, std::string receiver, std::vector<int> bits) {
    Event e;
    e.step = events_.size();
    e.kind = Kind::ClassicalMessage;
    e.sender = std::move(sender);
    e.receiver = std::move(receiver);
    e.bits = std::move(bits);
    events_.push_back(std::move(e));
  }

  const std::vector<Event>& events() const { return events_; }
  std::size_t size() const { return events_.size(); }

 private:
  std::vector<Event> events_;
};

/// Outcome bits of the disentangling Bell measurement (CNOT then H then
/// computational readout) name the Bell states in this fixed order.
inline BellState bell_from_outcome(std::size_t outcome) {
  switch (outcome) {
    case 0: return BellState::PhiPlus;
    case 1: return BellState::PsiPlus;
    case 2: return BellState::PhiMinus;
    case 3: return BellState::PsiMinus;
  }
  throw std::invalid_argument("bell_from_outcome: outcome must be 2 bits");
}

/// Correction the receiving side applies in teleportation, keyed by the
/// sender's Bell outcome. Kept as data, not code branches, so tests can
/// check the table directly against the four-branch relative-state algebra:
/// phi+ -> i sigma_y, phi- -> sigma_x, psi+ -> -sigma_z, psi- -> -1.
struct TeleportCorrection {
  BellState outcome;
  const char* label;
  ComplexMatrix unitary;
};

inline const std::array<TeleportCorrection, 4>& teleport_correction_table() {
  static const std::array<TeleportCorrection, 4> table = [] {
    const Complex i(0.0, 1.0);
    return std::array<TeleportCorrection, 4>{
        TeleportCorrection{BellState::PhiPlus, "iY", gates::pauli_y() * i},
        TeleportCorrection{BellState::PhiMinus, "X", gates::pauli_x()},
        TeleportCorrection{BellState::PsiPlus, "-Z", gates::pauli_z() * Complex(-1.0, 0.0)},
        TeleportCorrection{BellState::PsiMinus, "-I",
                           ComplexMatrix::identity(2) * Complex(-1.0, 0.0)},
    };
  }();
  return table;
}

inline const TeleportCorrection& teleport_correction(BellState outcome) {
  for (const TeleportCorrection& c : teleport_correction_table()) {
    if (c.outcome == outcome) return c;
  }
  throw std::logic_error("teleport_correction: unreachable");
}

struct TeleportOutcome {
  std::size_t bell_outcome;      // 2 bits, first measured qubit is the MSB
  std::string correction_applied;
  PureState bob_state;
  double fidelity_to_input;
  ProtocolTranscript transcript;
};

/// Teleport a single-qubit state through a shared singlet pair.
///
/// Register layout: qubit 0 carries the input, qubits 1 and 2 hold the
/// psi- pair (1 with Alice, 2 with Bob). Alice Bell-measures (0,1) with the
/// disentangling circuit, sends the two outcome bits, and Bob applies the
/// tabled correction.
inline TeleportOutcome teleport(const PureState& chi, Rng& rng) {
  if (chi.num_qubits() != 1) {
    throw std::invalid_argument("teleport: input must be a single qubit");
  }
  ProtocolTranscript transcript;
  transcript.prepare("chi");
  transcript.prepare("psi- pair (qubits 1,2)");
  PureState state(3, tensor(chi.amplitudes(), bell_state(BellState::PsiMinus).amplitudes()));

  state = apply_gate(state, gates::cnot(), {0, 1});
  transcript.gate("CNOT", {0, 1});
  state = apply_gate(state, gates::hadamard(), {0});
  transcript.gate("H", {0});

  const MeasurementRecord rec = measure_computational(state, {0, 1}, rng);
  transcript.measure("computational", {0, 1}, rec.outcome_index);

  const int b0 = static_cast<int>((rec.outcome_index >> 1) & 1u);
  const int b1 = static_cast<int>(rec.outcome_index & 1u);
  transcript.classical_message("alice", "bob", {b0, b1});

  const TeleportCorrection& corr = teleport_correction(bell_from_outcome(rec.outcome_index));
  const PureState corrected = apply_gate(rec.post_state, corr.unitary, {2});
  transcript.gate(corr.label, {2});

  PureState bob = drop_qubits(corrected, {0, 1}, rec.outcome_index);
  const double f = fidelity(chi, bob);
  return TeleportOutcome{rec.outcome_index, corr.label, std::move(bob), f,
                         std::move(transcript)};
}

/// Bob's reduced density operator at the point where Alice has measured but
/// her two classical bits have not arrived: the average over her outcomes,
/// which carries no dependence on the input state.
inline DensityOperator teleport_bob_state_before_message(const PureState& chi) {
  if (chi.num_qubits() != 1) {
    throw std::invalid_argument("teleport: input must be a single qubit");
  }
  PureState state(3, tensor(chi.amplitudes(), bell_state(BellState::PsiMinus).amplitudes()));
  state = apply_gate(state, gates::cnot(), {0, 1});
  state = apply_gate(state, gates::hadamard(), {0});
  return reduced_density(state, {2});
}

/// Alice's encoding operation in superdense coding, keyed by the 2-bit
/// message: the second bit selects sigma_x, the first sigma_z.
struct SuperdenseEncoding {
  std::size_t message;
  const char* label;
  ComplexMatrix unitary;
};

inline const std::array<SuperdenseEncoding, 4>& superdense_encoding_table() {
  static const std::array<SuperdenseEncoding, 4> table = [] {
    return std::array<SuperdenseEncoding, 4>{
        SuperdenseEncoding{0, "I", ComplexMatrix::identity(2)},
        SuperdenseEncoding{1, "X", gates::pauli_x()},
        SuperdenseEncoding{2, "Z", gates::pauli_z()},
        SuperdenseEncoding{3, "XZ", gates::pauli_x() * gates::pauli_z()},
    };
  }();
  return table;
}

struct SuperdenseResult {
  std::size_t decoded;
  ProtocolTranscript transcript;
};

/// Two classical bits through one transmitted qubit plus a shared pair.
/// Bob prepares phi+ with H then CNOT and hands qubit 0 to Alice; she
/// applies the tabled Pauli for her message; Bob reads out in the Bell
/// basis (CNOT then H then computational). Decoding is deterministic.
inline SuperdenseResult superdense_encode_decode(std::size_t message, Rng& rng) {
  if (message > 3) {
    throw std::invalid_argument("superdense_encode_decode: message must be 2 bits");
  }
  ProtocolTranscript transcript;
  transcript.prepare("00");
  PureState state = computational_basis_state(2, 0);
  state = apply_gate(state, gates::hadamard(), {0});
  transcript.gate("H", {0});
  state = apply_gate(state, gates::cnot(), {0, 1});
  transcript.gate("CNOT", {0, 1});

  const SuperdenseEncoding& enc = superdense_encoding_table()[message];
  if (message != 0) {  // the 00 branch applies no operation
    state = apply_gate(state, enc.unitary, {0});
    transcript.gate(enc.label, {0});
  }

  state = apply_gate(state, gates::cnot(), {0, 1});
  transcript.gate("CNOT", {0, 1});
  state = apply_gate(state, gates::hadamard(), {0});
  transcript.gate("H", {0});
  const MeasurementRecord rec = measure_computational(state, {0, 1}, rng);
  transcript.measure("computational", {0, 1}, rec.outcome_index);

  return SuperdenseResult{rec.outcome_index, std::move(transcript)};
}

/// Correction mapping each Bell state onto psi- by a Pauli on the first
/// qubit (phases drop out of fidelities).
inline const std::array<std::pair<BellState, const char*>, 4>& swap_correction_table() {
  static const std::array<std::pair<BellState, const char*>, 4> table{
      std::pair<BellState, const char*>{BellState::PhiPlus, "Y"},
      {BellState::PhiMinus, "X"},
      {BellState::PsiPlus, "Z"},
      {BellState::PsiMinus, "I"},
  };
  return table;
}

struct EntanglementSwapResult {
  PureState final_state;        // qubits (B, C) after correction
  std::size_t alice_outcome;    // 2 bits from the Bell measurement on (A1, A2)
  ProtocolTranscript transcript;
  double fidelity_to_psi_minus;
};

/// Entanglement swapping: two independent psi- pairs (A1,B) and (A2,C); a
/// Bell measurement on (A1,A2) leaves (B,C) in a definite Bell state, which
/// the tabled correction returns to psi-. B and C end up sharing one ebit
/// although they never interacted.
inline EntanglementSwapResult entanglement_swap(Rng& rng) {
  // Register layout: A1=0, B=1, A2=2, C=3.
  ProtocolTranscript transcript;
  transcript.prepare("psi- pair (A1,B)");
  transcript.prepare("psi- pair (A2,C)");
  PureState state(4, tensor(bell_state(BellState::PsiMinus).amplitudes(),
                            bell_state(BellState::PsiMinus).amplitudes()));

  state = apply_gate(state, gates::cnot(), {0, 2});
  transcript.gate("CNOT", {0, 2});
  state = apply_gate(state, gates::hadamard(), {0});
  transcript.gate("H", {0});
  const MeasurementRecord rec = measure_computational(state, {0, 2}, rng);
  transcript.measure("computational", {0, 2}, rec.outcome_index);
  transcript.classical_message("alice", "bob", {static_cast<int>((rec.outcome_index >> 1) & 1u),
                                                static_cast<int>(rec.outcome_index & 1u)});

  PureState bc = drop_qubits(rec.post_state, {0, 2}, rec.outcome_index);

  const BellState observed = bell_from_outcome(rec.outcome_index);
  const char* label = "I";
  for (const auto& [bell, pauli] : swap_correction_table()) {
    if (bell == observed) label = pauli;
  }
  ComplexMatrix unitary = ComplexMatrix::identity(2);
  if (std::string(label) == "X") unitary = gates::pauli_x();
  if (std::string(label) == "Y") unitary = gates::pauli_y();
  if (std::string(label) == "Z") unitary = gates::pauli_z();
  if (std::string(label) != "I") {
    bc = apply_gate(bc, unitary, {0});
    transcript.gate(label, {1});  // acts on B
  }

  const double f = fidelity(bc, bell_state(BellState::PsiMinus));
  return EntanglementSwapResult{std::move(bc), rec.outcome_index, std::move(transcript), f};
}

/// Frequency plug-in Bloch vector estimate from measurements in the z, x and
/// y bases. No maximum-likelihood correction is applied: the raw estimate
/// may leave the Bloch ball, which the flag reports.
struct BlochEstimate {
  double x, y, z;
  bool outside_ball;
};

/// Number of operator expectation values needed to fix a state of the given
/// dimension: dim^2 - 1 (three for a qubit: sigma_x, sigma_y, sigma_z).
constexpr std::size_t tomography_observable_count(std::size_t dimension) {
  return dimension * dimension - 1;
}

inline BlochEstimate tomography_single_qubit(const PureState& unknown,
                                             std::size_t shots_per_basis, Rng& rng) {
  if (unknown.num_qubits() != 1) {
    throw std::invalid_argument("tomography_single_qubit: input must be a single qubit");
  }
  if (shots_per_basis < 1) {
    throw std::invalid_argument("tomography_single_qubit: need at least one shot");
  }
  const std::array<ComplexMatrix, 3> bases{gates::identity2(), gates::x_basis(),
                                           gates::y_basis()};
  double estimates[3];
  for (int b = 0; b < 3; ++b) {
    std::size_t zeros = 0;
    for (std::size_t s = 0; s < shots_per_basis; ++s) {
      const MeasurementRecord rec = measure_in_basis(unknown, {0}, bases[b], rng);
      if (rec.outcome_index == 0) ++zeros;
    }
    estimates[b] = 2.0 * static_cast<double>(zeros) / static_cast<double>(shots_per_basis) - 1.0;
  }
  const double z = estimates[0], x = estimates[1], y = estimates[2];
  return BlochEstimate{x, y, z, x * x + y * y + z * z > 1.0};
}

/// Exact Bloch vector of a single-qubit pure state, for comparing estimates.
inline std::array<double, 3> bloch_vector(const PureState& state) {
  if (state.num_qubits() != 1) {
    throw std::invalid_argument("bloch_vector: input must be a single qubit");
  }
  const Complex a = state.amplitude(0), b = state.amplitude(1);
  const Complex cross = std::conj(a) * b;
  return {2.0 * cross.real(), 2.0 * cross.imag(), std::norm(a) - std::norm(b)};
}

struct CloneAttemptReport {
  std::vector<double> fidelities;  // one per test state
  double max_infidelity;           // worst shortfall from perfect cloning
};

/// Drive a candidate 2-qubit unitary as a cloner: for each test state |s>,
/// compare U(|s> (x) |0>) against |s> (x) |s>. A genuine cloner would reach
/// fidelity 1 on every state; linearity forbids that for any set containing
/// a non-orthogonal, non-identical pair.
inline CloneAttemptReport attempt_general_clone(const ComplexMatrix& candidate_cloner,
                                                const std::vector<PureState>& test_states) {
  if (candidate_cloner.rows() != 4 || candidate_cloner.cols() != 4) {
    throw std::invalid_argument("attempt_general_clone: cloner must act on 2 qubits");
  }
  if (!candidate_cloner.is_unitary(kUnitaryTol)) {
    throw std::invalid_argument("attempt_general_clone: candidate is not unitary");
  }
  const PureState blank = computational_basis_state(1, 0);
  CloneAttemptReport report;
  report.max_infidelity = 0.0;
  for (const PureState& s : test_states) {
    if (s.num_qubits() != 1) {
      throw std::invalid_argument("attempt_general_clone: test states must be single qubits");
    }
    PureState in(2, tensor(s.amplitudes(), blank.amplitudes()));
    const PureState out = apply_gate(in, candidate_cloner, {0, 1});
    const PureState target(2, tensor(s.amplitudes(), s.amplitudes()));
    const double f = fidelity(target, out);
    report.fidelities.push_back(f);
    report.max_infidelity = std::max(report.max_infidelity, 1.0 - f);
  }
  return report;
}

}  // namespace qinfo

#endif  // QINFO_PROTOCOLS_HPP
