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

#ifndef QINFO_QKD_HPP
#define QINFO_QKD_HPP

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qinfo/gates.hpp"
#include "qinfo/protocols.hpp"
#include "qinfo/rng.hpp"
#include "qinfo/state.hpp"

namespace qinfo {

enum class Basis : int { Z = 0, X = 1 };

/// Channel adversary for a key-distribution run. Exactly one kind is active.
struct AdversaryModel {
  enum class Kind { None, InterceptResendZX, InterceptResendFixed, DepolarizingNoise };

  Kind kind = Kind::None;
  Basis fixed_basis = Basis::Z;  // InterceptResendFixed only
  double depolarize_p = 0.0;     // DepolarizingNoise only

  static AdversaryModel none() { return AdversaryModel{}; }

  static AdversaryModel intercept_resend_zx() {
    AdversaryModel m;
    m.kind = Kind::InterceptResendZX;
    return m;
  }

  static AdversaryModel intercept_resend_fixed(Basis basis) {
    AdversaryModel m;
    m.kind = Kind::InterceptResendFixed;
    m.fixed_basis = basis;
    return m;
  }

  static AdversaryModel depolarizing(double p) {
    if (p < 0.0 || p > 1.0) {
      throw std::invalid_argument("depolarizing: probability must be in [0,1]");
    }
    AdversaryModel m;
    m.kind = Kind::DepolarizingNoise;
    m.depolarize_p = p;
    return m;
  }

  std::string name() const {
    switch (kind) {
      case Kind::None: return "none";
      case Kind::InterceptResendZX: return "intercept-zx";
      case Kind::InterceptResendFixed:
        return fixed_basis == Basis::Z ? "intercept-fixed:z" : "intercept-fixed:x";
      case Kind::DepolarizingNoise: return "depolarize:" + std::to_string(depolarize_p);
    }
    return "?";
  }
};

struct Bb84Config {
  std::size_t num_qubits_sent = 10000;
  double check_fraction = 0.25;     // fraction of the sifted key sacrificed
  double qber_abort_threshold = 0.11;
  AdversaryModel adversary;
  RngSeed seed;

  void validate() const {
    if (num_qubits_sent == 0) {
      throw std::invalid_argument("Bb84Config: num_qubits_sent must be positive");
    }
    if (check_fraction <= 0.0 || check_fraction >= 1.0) {
      throw std::invalid_argument("Bb84Config: check_fraction must be in (0,1)");
    }
    if (check_fraction * static_cast<double>(num_qubits_sent) < 1.0) {
      throw std::invalid_argument("Bb84Config: expected check bits below 1");
    }
    if (qber_abort_threshold <= 0.0 || qber_abort_threshold >= 1.0) {
      throw std::invalid_argument("Bb84Config: qber_abort_threshold must be in (0,1)");
    }
  }
};

/// Ground-truth record of the adversary's interaction with one transmitted
/// qubit. Oracle-only: real protocol parties never see this; it exists so the
/// simulation can measure information leakage exactly.
struct EveRecord {
  bool intercepted = false;
  Basis basis = Basis::Z;
  int bit = 0;
};

enum class Bb84Verdict { Completed, Aborted };

struct Bb84Session {
  Bb84Config config;
  std::vector<int> alice_bits, alice_bases;
  std::vector<int> bob_bases, bob_bits;
  std::vector<int> sifted_alice, sifted_bob;
  std::vector<std::size_t> retained_indices;  // transmission positions kept by sifting
  std::vector<std::size_t> check_indices;     // positions within the sifted key
  double qber_estimate = 0.0;
  Bb84Verdict verdict = Bb84Verdict::Aborted;
  std::vector<int> raw_key_alice, raw_key_bob;  // unchecked sifted remainder
  std::vector<EveRecord> eve;                   // oracle-only
  // The transcript records the public classical channel (basis announcements
  // and the check-round exchange); per-qubit quantum operations are already
  // captured by the bit/basis arrays above.
  ProtocolTranscript transcript;

  double sift_fraction() const {
    return alice_bits.empty() ? 0.0
                              : static_cast<double>(sifted_alice.size()) /
                                    static_cast<double>(alice_bits.size());
  }
};

inline const ComplexMatrix& basis_unitary(Basis b) {
  static const ComplexMatrix z = gates::identity2();
  static const ComplexMatrix x = gates::hadamard();
  return b == Basis::Z ? z : x;
}

namespace detail {

inline int measure_qubit(PureState& state, std::size_t qubit, Basis basis, Rng& rng) {
  MeasurementRecord rec =
      basis == Basis::Z ? measure_computational(state, {qubit}, rng)
                        : measure_in_basis(state, {qubit}, gates::hadamard(), rng);
  state = std::move(rec.post_state);
  return static_cast<int>(rec.outcome_index);
}

/// Channel action on a transit qubit. Interception records Eve's ground
/// truth; depolarizing noise applies a uniformly random Pauli with
/// probability p (the exact maximally-mixing twirl at the ensemble level).
/// p = 0 consumes no randomness, so depolarize(0) reproduces the clean
/// channel trace bit-for-bit.
inline void channel_apply(const AdversaryModel& adversary, PureState& state,
                          std::size_t qubit, Rng& rng, EveRecord& eve) {
  switch (adversary.kind) {
    case AdversaryModel::Kind::None:
      return;
    case AdversaryModel::Kind::InterceptResendZX: {
      eve.intercepted = true;
      eve.basis = rng.next_bit() ? Basis::X : Basis::Z;
      eve.bit = measure_qubit(state, qubit, eve.basis, rng);
      return;
    }
    case AdversaryModel::Kind::InterceptResendFixed: {
      eve.intercepted = true;
      eve.basis = adversary.fixed_basis;
      eve.bit = measure_qubit(state, qubit, eve.basis, rng);
      return;
    }
    case AdversaryModel::Kind::DepolarizingNoise: {
      if (adversary.depolarize_p > 0.0 && rng.next_double() < adversary.depolarize_p) {
        switch (rng.next_below(4)) {
          case 0: break;  // identity
          case 1: state = apply_gate(state, gates::pauli_x(), {qubit}); break;
          case 2: state = apply_gate(state, gates::pauli_y(), {qubit}); break;
          case 3: state = apply_gate(state, gates::pauli_z(), {qubit}); break;
        }
      }
      return;
    }
  }
}

/// Uniform sample of k positions out of n without replacement, returned in
/// ascending order (partial Fisher-Yates).
inline std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k,
                                                           Rng& rng) {
  std::vector<std::size_t> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = i;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + rng.next_below(n - i);
    std::swap(pool[i], pool[j]);
  }
  std::vector<std::size_t> chosen(pool.begin(), pool.begin() + k);
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

}  // namespace detail

struct SiftResult {
  std::vector<int> sifted_alice, sifted_bob;
  std::vector<std::size_t> retained_indices;
};

/// Keep exactly the positions where both parties used the same basis,
/// preserving order.
inline SiftResult sift(const std::vector<int>& alice_bases, const std::vector<int>& bob_bases,
                       const std::vector<int>& alice_bits, const std::vector<int>& bob_bits) {
  if (alice_bases.size() != bob_bases.size() || alice_bases.size() != alice_bits.size() ||
      alice_bases.size() != bob_bits.size()) {
    throw std::invalid_argument("sift: input lists must have equal length");
  }
  SiftResult out;
  for (std::size_t i = 0; i < alice_bases.size(); ++i) {
    if (alice_bases[i] == bob_bases[i]) {
      out.sifted_alice.push_back(alice_bits[i]);
      out.sifted_bob.push_back(bob_bits[i]);
      out.retained_indices.push_back(i);
    }
  }
  return out;
}

struct QberResult {
  double qber;
  std::vector<int> remaining_alice, remaining_bob;
};

/// Error rate over the publicly compared check subset; checked bits are
/// discarded from both keys.
inline QberResult estimate_qber(const std::vector<int>& sifted_alice,
                                const std::vector<int>& sifted_bob,
                                const std::vector<std::size_t>& check_indices) {
  if (sifted_alice.size() != sifted_bob.size()) {
    throw std::invalid_argument("estimate_qber: key length mismatch");
  }
  std::vector<bool> checked(sifted_alice.size(), false);
  std::size_t mismatches = 0;
  for (std::size_t idx : check_indices) {
    if (idx >= sifted_alice.size()) {
      throw std::invalid_argument("estimate_qber: check index out of range");
    }
    if (checked[idx]) {
      throw std::invalid_argument("estimate_qber: duplicate check index");
    }
    checked[idx] = true;
    if (sifted_alice[idx] != sifted_bob[idx]) ++mismatches;
  }
  QberResult out;
  out.qber = check_indices.empty()
                 ? 0.0
                 : static_cast<double>(mismatches) / static_cast<double>(check_indices.size());
  for (std::size_t i = 0; i < sifted_alice.size(); ++i) {
    if (!checked[i]) {
      out.remaining_alice.push_back(sifted_alice[i]);
      out.remaining_bob.push_back(sifted_bob[i]);
    }
  }
  return out;
}

namespace detail {

/// Shared tail of both BB84 variants: sift, compare a random check subset,
/// decide the verdict, keep the remainder as the raw key.
inline void finish_session(Bb84Session& session, Rng& rng) {
  const SiftResult sifted =
      sift(session.alice_bases, session.bob_bases, session.alice_bits, session.bob_bits);
  session.sifted_alice = sifted.sifted_alice;
  session.sifted_bob = sifted.sifted_bob;
  session.retained_indices = sifted.retained_indices;

  session.transcript.classical_message("alice", "bob", session.alice_bases);
  session.transcript.classical_message("bob", "alice", session.bob_bases);

  const std::size_t sift_len = session.sifted_alice.size();
  std::size_t check_count = static_cast<std::size_t>(
      session.config.check_fraction * static_cast<double>(sift_len));
  if (check_count == 0 && sift_len > 0) check_count = 1;
  session.check_indices = detail::sample_without_replacement(sift_len, check_count, rng);

  std::vector<int> check_values;
  check_values.reserve(check_count);
  for (std::size_t idx : session.check_indices) {
    check_values.push_back(session.sifted_alice[idx]);
  }
  session.transcript.classical_message("alice", "bob", check_values);

  const QberResult q = estimate_qber(session.sifted_alice, session.sifted_bob,
                                     session.check_indices);
  session.qber_estimate = q.qber;
  if (q.qber > session.config.qber_abort_threshold) {
    session.verdict = Bb84Verdict::Aborted;
    session.transcript.classical_message("bob", "alice", {0});
  } else {
    session.verdict = Bb84Verdict::Completed;
    session.raw_key_alice = q.remaining_alice;
    session.raw_key_bob = q.remaining_bob;
    session.transcript.classical_message("bob", "alice", {1});
  }
}

}  // namespace detail

/// Prepare-and-measure BB84. Alice sends random bits in random Z/X bases;
/// the channel adversary acts per qubit; Bob measures in random bases; the
/// bases are announced and mismatched rounds discarded; a random check
/// subset estimates the error rate and the session aborts if it exceeds the
/// configured threshold. The unchecked remainder is the raw key.
inline Bb84Session bb84_run(const Bb84Config& config) {
  config.validate();
  Bb84Session session;
  session.config = config;
  const std::size_t n = config.num_qubits_sent;
  session.alice_bits.reserve(n);
  session.alice_bases.reserve(n);
  session.bob_bases.reserve(n);
  session.bob_bits.reserve(n);
  session.eve.resize(n);

  Rng rng(config.seed);
  for (std::size_t i = 0; i < n; ++i) {
    const int bit = rng.next_bit();
    const Basis basis = rng.next_bit() ? Basis::X : Basis::Z;
    session.alice_bits.push_back(bit);
    session.alice_bases.push_back(static_cast<int>(basis));

    PureState qubit = computational_basis_state(1, static_cast<std::size_t>(bit));
    if (basis == Basis::X) qubit = apply_gate(qubit, gates::hadamard(), {0});

    detail::channel_apply(config.adversary, qubit, 0, rng, session.eve[i]);

    const Basis bob_basis = rng.next_bit() ? Basis::X : Basis::Z;
    session.bob_bases.push_back(static_cast<int>(bob_basis));
    session.bob_bits.push_back(detail::measure_qubit(qubit, 0, bob_basis, rng));
  }

  detail::finish_session(session, rng);
  return session;
}

/// Entanglement-based variant: a source emits singlet pairs; Alice and Bob
/// measure their halves in random Z/X bases; same-basis rounds are kept and
/// Bob bit-flips every retained bit (singlet outcomes are anticorrelated).
/// The adversary, when present, acts on Bob's half in transit.
inline Bb84Session bb84_entangled_run(const Bb84Config& config) {
  config.validate();
  Bb84Session session;
  session.config = config;
  const std::size_t n = config.num_qubits_sent;
  session.eve.resize(n);

  Rng rng(config.seed);
  for (std::size_t i = 0; i < n; ++i) {
    PureState pair = bell_state(BellState::PsiMinus);

    detail::channel_apply(config.adversary, pair, 1, rng, session.eve[i]);

    const Basis alice_basis = rng.next_bit() ? Basis::X : Basis::Z;
    const Basis bob_basis = rng.next_bit() ? Basis::X : Basis::Z;
    session.alice_bases.push_back(static_cast<int>(alice_basis));
    session.bob_bases.push_back(static_cast<int>(bob_basis));
    session.alice_bits.push_back(detail::measure_qubit(pair, 0, alice_basis, rng));
    session.bob_bits.push_back(detail::measure_qubit(pair, 1, bob_basis, rng));
  }

  // Bob flips every retained bit to undo the singlet anticorrelation. The
  // flip is applied to the sifted copy; bob_bits keeps the raw outcomes.
  SiftResult sifted = sift(session.alice_bases, session.bob_bases, session.alice_bits,
                           session.bob_bits);
  std::vector<int> flipped_bob = session.bob_bits;
  for (std::size_t idx : sifted.retained_indices) flipped_bob[idx] = 1 - flipped_bob[idx];

  Bb84Session tail = session;
  tail.bob_bits = flipped_bob;
  detail::finish_session(tail, rng);
  tail.bob_bits = session.bob_bits;  // expose raw (pre-flip) outcomes
  return tail;
}

/// Oracle measurement of the adversary's knowledge: over intercepted sifted
/// positions, how often her recorded bit equals Alice's sifted bit.
inline double eve_sifted_agreement(const Bb84Session& session) {
  std::size_t intercepted = 0, agree = 0;
  for (std::size_t k = 0; k < session.retained_indices.size(); ++k) {
    const std::size_t i = session.retained_indices[k];
    if (!session.eve[i].intercepted) continue;
    ++intercepted;
    if (session.eve[i].bit == session.alice_bits[i]) ++agree;
  }
  if (intercepted == 0) return 0.0;
  return static_cast<double>(agree) / static_cast<double>(intercepted);
}

struct ReconciliationResult {
  std::vector<int> corrected_alice, corrected_bob;
  std::size_t bits_disclosed = 0;    // announced parity bits
  std::size_t residual_mismatch = 0; // ground-truth oracle, simulator-only
};

/// Parity-pair information reconciliation. Each round pairs the remaining
/// bits at random, announces per-pair parities, discards both bits of
/// unequal-parity pairs and keeps the first bit of equal-parity pairs. An
/// unpaired leftover bit (odd length) is discarded: it would otherwise pass
/// through every round unchecked.
inline ReconciliationResult reconcile_parity(const std::vector<int>& alice_key,
                                             const std::vector<int>& bob_key, Rng& rng,
                                             int rounds = 4) {
  if (alice_key.size() != bob_key.size()) {
    throw std::invalid_argument("reconcile_parity: key length mismatch");
  }
  if (rounds < 0) {
    throw std::invalid_argument("reconcile_parity: rounds must be >= 0");
  }
  ReconciliationResult out;
  out.corrected_alice = alice_key;
  out.corrected_bob = bob_key;

  for (int round = 0; round < rounds; ++round) {
    const std::size_t len = out.corrected_alice.size();
    if (len < 2) break;
    std::vector<std::size_t> order(len);
    for (std::size_t i = 0; i < len; ++i) order[i] = i;
    for (std::size_t i = 0; i + 1 < len; ++i) {
      const std::size_t j = i + rng.next_below(len - i);
      std::swap(order[i], order[j]);
    }
    std::vector<int> next_alice, next_bob;
    next_alice.reserve(len / 2);
    next_bob.reserve(len / 2);
    for (std::size_t p = 0; p + 1 < len; p += 2) {
      const std::size_t i = order[p], j = order[p + 1];
      const int pa = out.corrected_alice[i] ^ out.corrected_alice[j];
      const int pb = out.corrected_bob[i] ^ out.corrected_bob[j];
      ++out.bits_disclosed;
      if (pa == pb) {
        next_alice.push_back(out.corrected_alice[i]);
        next_bob.push_back(out.corrected_bob[i]);
      }
    }
    out.corrected_alice = std::move(next_alice);
    out.corrected_bob = std::move(next_bob);
  }

  out.residual_mismatch = 0;
  for (std::size_t i = 0; i < out.corrected_alice.size(); ++i) {
    if (out.corrected_alice[i] != out.corrected_bob[i]) ++out.residual_mismatch;
  }
  return out;
}

/// Multiply an explicit GF(2) matrix (rows of 0/1) into a key. Test hook for
/// the amplification step: the identity matrix returns the key unchanged.
inline std::vector<int> apply_gf2_matrix(const std::vector<std::vector<int>>& rows,
                                         const std::vector<int>& key) {
  std::vector<int> out;
  out.reserve(rows.size());
  for (const std::vector<int>& row : rows) {
    if (row.size() != key.size()) {
      throw std::invalid_argument("apply_gf2_matrix: row length mismatch");
    }
    int acc = 0;
    for (std::size_t j = 0; j < key.size(); ++j) acc ^= (row[j] & key[j]);
    out.push_back(acc);
  }
  return out;
}

/// Privacy amplification: final_key = R * key over GF(2), where R is a
/// seeded random binary matrix streamed from the generator (a 2-universal
/// hash). Both parties derive the identical R by running identical
/// generator states. Rows are drawn as packed 64-bit words, so large keys
/// never materialize the matrix.
inline std::vector<int> privacy_amplify(const std::vector<int>& key,
                                        std::size_t output_length, Rng& rng) {
  if (output_length > key.size()) {
    throw std::invalid_argument("privacy_amplify: output longer than input");
  }
  const std::size_t words = (key.size() + 63) / 64;
  std::vector<std::uint64_t> packed(words, 0);
  for (std::size_t j = 0; j < key.size(); ++j) {
    if (key[j]) packed[j / 64] |= std::uint64_t{1} << (j % 64);
  }
  std::vector<int> out;
  out.reserve(output_length);
  for (std::size_t r = 0; r < output_length; ++r) {
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < words; ++w) {
      acc ^= rng.next_u64() & packed[w];  // key bits beyond the end are zero
    }
    out.push_back(static_cast<int>(std::popcount(acc) & 1u));
  }
  return out;
}

inline double binary_entropy(double q) {
  if (q < 0.0 || q > 1.0) {
    throw std::invalid_argument("binary_entropy: argument must be in [0,1]");
  }
  double h = 0.0;
  if (q > 0.0) h -= q * std::log2(q);
  if (q < 1.0) h -= (1.0 - q) * std::log2(1.0 - q);
  return h;
}

/// Post-amplification length heuristic: floor(len * (1 - 2 h2(qber))),
/// clamped at zero. A conventional leakage allowance, configurable and
/// non-normative.
inline std::size_t recommended_final_length(std::size_t key_length, double qber) {
  const double factor = 1.0 - 2.0 * binary_entropy(qber);
  if (factor <= 0.0) return 0;
  return static_cast<std::size_t>(static_cast<double>(key_length) * factor);
}

struct Bb84PipelinePolicy {
  int reconciliation_rounds = 4;
  // Error rate used by the amplification length rule; when unset, the
  // session's own estimate is used.
  std::optional<double> design_qber;
  std::optional<std::size_t> final_length_override;
};

struct Bb84PipelineResult {
  Bb84Session session;
  ReconciliationResult reconciliation;
  std::vector<int> final_alice, final_bob;
  bool keys_identical = false;
};

/// Full pipeline: session, then parity reconciliation, then privacy
/// amplification with a shared streamed matrix. All public randomness comes
/// from one generator continued across the stages, so the whole pipeline is
/// reproducible from the session seed.
inline Bb84PipelineResult run_bb84_pipeline(const Bb84Config& config,
                                            const Bb84PipelinePolicy& policy,
                                            bool entangled = false) {
  Bb84PipelineResult out;
  out.session = entangled ? bb84_entangled_run(config) : bb84_run(config);
  if (out.session.verdict == Bb84Verdict::Aborted) return out;

  // Post-processing randomness: a generator derived from the session seed.
  Rng pub(RngSeed{config.seed.value ^ 0xA5A5A5A5A5A5A5A5ULL});
  out.reconciliation =
      reconcile_parity(out.session.raw_key_alice, out.session.raw_key_bob, pub,
                       policy.reconciliation_rounds);

  const std::size_t corrected_len = out.reconciliation.corrected_alice.size();
  std::size_t final_len;
  if (policy.final_length_override) {
    final_len = std::min(*policy.final_length_override, corrected_len);
  } else {
    final_len = recommended_final_length(
        corrected_len, policy.design_qber.value_or(out.session.qber_estimate));
  }

  Rng pub_bob = pub;  // both parties use the identical public matrix
  out.final_alice = privacy_amplify(out.reconciliation.corrected_alice, final_len, pub);
  out.final_bob = privacy_amplify(out.reconciliation.corrected_bob, final_len, pub_bob);
  out.keys_identical = out.final_alice == out.final_bob && !out.final_alice.empty();
  return out;
}

struct ChshEstimate {
  double s_value;
  std::array<double, 4> correlations;  // E(a,b), E(a,b'), E(a',b), E(a',b')
  std::array<std::size_t, 4> counts;
};

/// CHSH correlation estimate on singlet pairs at the standard angles
/// (Alice 0, pi/2; Bob pi/4, 3pi/4), measuring spin in the z-x plane.
/// The quantum value is 2*sqrt(2); any local model stays at or below 2.
inline ChshEstimate chsh_estimate(std::size_t num_pairs, Rng& rng) {
  if (num_pairs == 0) throw std::invalid_argument("chsh_estimate: need pairs");
  const double pi = std::numbers::pi;
  const std::array<double, 2> alice_angles{0.0, pi / 2.0};
  const std::array<double, 2> bob_angles{pi / 4.0, 3.0 * pi / 4.0};

  std::array<double, 4> sums{0.0, 0.0, 0.0, 0.0};
  std::array<std::size_t, 4> counts{0, 0, 0, 0};
  for (std::size_t t = 0; t < num_pairs; ++t) {
    const std::size_t setting = rng.next_below(4);
    const std::size_t ai = setting >> 1, bj = setting & 1;
    PureState pair = bell_state(BellState::PsiMinus);
    const MeasurementRecord ra =
        measure_in_basis(pair, {0}, gates::rotation_y(alice_angles[ai]), rng);
    const MeasurementRecord rb =
        measure_in_basis(ra.post_state, {1}, gates::rotation_y(bob_angles[bj]), rng);
    const int a = ra.outcome_index == 0 ? 1 : -1;
    const int b = rb.outcome_index == 0 ? 1 : -1;
    sums[setting] += a * b;
    counts[setting] += 1;
  }
  std::array<double, 4> corr{};
  for (int k = 0; k < 4; ++k) {
    corr[k] = counts[k] == 0 ? 0.0 : sums[k] / static_cast<double>(counts[k]);
  }
  const double s = corr[0] - corr[1] + corr[2] + corr[3];
  return ChshEstimate{std::abs(s), corr, counts};
}

}  // namespace qinfo

#endif  // QINFO_QKD_HPP
