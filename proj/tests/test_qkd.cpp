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

#include "qinfo/qkd.hpp"

using namespace qinfo;
using Catch::Approx;

TEST_CASE("sift keeps exactly the same-basis positions") {
  SECTION("all bases equal keeps everything") {
    const SiftResult r = sift({0, 1, 0}, {0, 1, 0}, {1, 0, 1}, {1, 0, 1});
    REQUIRE(r.sifted_alice == std::vector<int>{1, 0, 1});
    REQUIRE(r.retained_indices == std::vector<std::size_t>{0, 1, 2});
  }
  SECTION("all bases different keeps nothing") {
    const SiftResult r = sift({0, 1}, {1, 0}, {1, 0}, {0, 1});
    REQUIRE(r.sifted_alice.empty());
    REQUIRE(r.retained_indices.empty());
  }
  SECTION("hand-checked mixed pattern") {
    // Alice (Z,X,Z,X), Bob (Z,Z,Z,X): positions 0, 2, 3 agree.
    const SiftResult r = sift({0, 1, 0, 1}, {0, 0, 0, 1}, {1, 1, 0, 0}, {1, 0, 0, 0});
    REQUIRE(r.retained_indices == std::vector<std::size_t>{0, 2, 3});
    REQUIRE(r.sifted_alice == std::vector<int>{1, 0, 0});
    REQUIRE(r.sifted_bob == std::vector<int>{1, 0, 0});
  }
  REQUIRE_THROWS_AS(sift({0, 1}, {0}, {0, 1}, {0, 1}), std::invalid_argument);
}

TEST_CASE("estimate_qber") {
  SECTION("identical strings") {
    const QberResult r = estimate_qber({1, 0, 1, 1}, {1, 0, 1, 1}, {0, 2});
    REQUIRE(r.qber == 0.0);
    REQUIRE(r.remaining_alice == std::vector<int>{0, 1});
  }
  SECTION("complementary strings") {
    const QberResult r = estimate_qber({1, 0}, {0, 1}, {0, 1});
    REQUIRE(r.qber == 1.0);
    REQUIRE(r.remaining_alice.empty());
  }
  SECTION("3 mismatches in a 12-bit check is 0.25") {
    std::vector<int> alice(12, 0), bob(12, 0);
    bob[1] = 1;
    bob[5] = 1;
    bob[9] = 1;
    std::vector<std::size_t> check(12);
    for (std::size_t i = 0; i < 12; ++i) check[i] = i;
    REQUIRE(estimate_qber(alice, bob, check).qber == Approx(0.25).margin(1e-12));
  }
  REQUIRE_THROWS_AS(estimate_qber({0, 1}, {0, 1}, {5}), std::invalid_argument);
  REQUIRE_THROWS_AS(estimate_qber({0, 1}, {0, 1}, {0, 0}), std::invalid_argument);
}

TEST_CASE("bb84 over a clean channel") {
  Bb84Config cfg;
  cfg.num_qubits_sent = 10000;
  cfg.seed = RngSeed{101};
  const Bb84Session s = bb84_run(cfg);

  REQUIRE(s.qber_estimate == 0.0);  // exactly: nothing disturbs the qubits
  REQUIRE(s.verdict == Bb84Verdict::Completed);
  REQUIRE(s.sift_fraction() == Approx(0.5).margin(0.02));
  REQUIRE(s.sifted_alice == s.sifted_bob);
  REQUIRE(s.raw_key_alice == s.raw_key_bob);
  REQUIRE_FALSE(s.raw_key_alice.empty());

  SECTION("qber stays exactly zero across seeds") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      Bb84Config c;
      c.num_qubits_sent = 400;
      c.seed = RngSeed{seed};
      const Bb84Session session = bb84_run(c);
      REQUIRE(session.qber_estimate == 0.0);
      REQUIRE(session.verdict == Bb84Verdict::Completed);
    }
  }
}

TEST_CASE("bb84 under intercept-resend") {
  Bb84Config cfg;
  cfg.num_qubits_sent = 20000;
  cfg.adversary = AdversaryModel::intercept_resend_zx();
  cfg.seed = RngSeed{202};
  const Bb84Session s = bb84_run(cfg);

  REQUIRE(s.qber_estimate == Approx(0.25).margin(0.02));
  REQUIRE(s.verdict == Bb84Verdict::Aborted);  // threshold 0.11

  SECTION("Eve knows three quarters of the sifted key (oracle)") {
    REQUIRE(eve_sifted_agreement(s) == Approx(0.75).margin(0.02));
  }

  SECTION("half of intercepted qubits land in the wrong basis") {
    std::size_t wrong = 0, total = 0;
    for (std::size_t i = 0; i < s.eve.size(); ++i) {
      REQUIRE(s.eve[i].intercepted);
      ++total;
      if (static_cast<int>(s.eve[i].basis) != s.alice_bases[i]) ++wrong;
    }
    REQUIRE(static_cast<double>(wrong) / total == Approx(0.5).margin(0.02));
  }

  SECTION("fixed-basis interception also causes 25% errors") {
    Bb84Config fixed = cfg;
    fixed.adversary = AdversaryModel::intercept_resend_fixed(Basis::Z);
    const Bb84Session sf = bb84_run(fixed);
    REQUIRE(sf.qber_estimate == Approx(0.25).margin(0.02));
  }
}

TEST_CASE("depolarize(0) reproduces the clean session bit for bit") {
  Bb84Config clean, noisy;
  clean.num_qubits_sent = noisy.num_qubits_sent = 2000;
  clean.seed = noisy.seed = RngSeed{303};
  noisy.adversary = AdversaryModel::depolarizing(0.0);

  const Bb84Session a = bb84_run(clean);
  const Bb84Session b = bb84_run(noisy);
  REQUIRE(a.alice_bits == b.alice_bits);
  REQUIRE(a.alice_bases == b.alice_bases);
  REQUIRE(a.bob_bases == b.bob_bases);
  REQUIRE(a.bob_bits == b.bob_bits);
  REQUIRE(a.raw_key_alice == b.raw_key_alice);
  REQUIRE(a.qber_estimate == b.qber_estimate);
}

TEST_CASE("depolarizing noise raises the error rate to p/2") {
  Bb84Config cfg;
  cfg.num_qubits_sent = 20000;
  cfg.adversary = AdversaryModel::depolarizing(0.2);
  cfg.qber_abort_threshold = 0.15;
  cfg.seed = RngSeed{404};
  const Bb84Session s = bb84_run(cfg);
  REQUIRE(s.qber_estimate == Approx(0.10).margin(0.02));
  REQUIRE(s.verdict == Bb84Verdict::Completed);
}

TEST_CASE("whole sessions are reproducible from the seed") {
  Bb84Config cfg;
  cfg.num_qubits_sent = 3000;
  cfg.adversary = AdversaryModel::intercept_resend_zx();
  cfg.seed = RngSeed{555};
  const Bb84Session a = bb84_run(cfg);
  const Bb84Session b = bb84_run(cfg);
  REQUIRE(a.alice_bits == b.alice_bits);
  REQUIRE(a.bob_bits == b.bob_bits);
  REQUIRE(a.sifted_alice == b.sifted_alice);
  REQUIRE(a.check_indices == b.check_indices);
  REQUIRE(a.qber_estimate == b.qber_estimate);
  REQUIRE(a.verdict == b.verdict);
}

TEST_CASE("entanglement-based variant") {
  Bb84Config cfg;
  cfg.num_qubits_sent = 4000;
  cfg.seed = RngSeed{606};
  const Bb84Session s = bb84_entangled_run(cfg);

  SECTION("clean source gives matching keys and zero qber") {
    REQUIRE(s.qber_estimate == 0.0);
    REQUIRE(s.verdict == Bb84Verdict::Completed);
    REQUIRE(s.raw_key_alice == s.raw_key_bob);
    REQUIRE(s.sift_fraction() == Approx(0.5).margin(0.025));
  }

  SECTION("same-basis raw outcomes are perfectly anticorrelated") {
    for (std::size_t i : s.retained_indices) {
      REQUIRE(s.alice_bits[i] != s.bob_bits[i]);
    }
    // The sifted copy carries Bob's bit-flip.
    for (std::size_t k = 0; k < s.retained_indices.size(); ++k) {
      REQUIRE(s.sifted_bob[k] == 1 - s.bob_bits[s.retained_indices[k]]);
      REQUIRE(s.sifted_alice[k] == s.sifted_bob[k]);
    }
  }
}

TEST_CASE("chsh estimate violates the classical bound on the singlet") {
  Rng rng(707);
  const ChshEstimate r = chsh_estimate(4000, rng);
  REQUIRE(r.s_value > 2.0);
  REQUIRE(r.s_value == Approx(2.0 * std::sqrt(2.0)).margin(0.15));
  std::size_t total = 0;
  for (std::size_t c : r.counts) total += c;
  REQUIRE(total == 4000);
}

TEST_CASE("parity reconciliation") {
  SECTION("identical keys: one round halves the key, zero residual") {
    Rng rng(1);
    const std::vector<int> key{1, 0, 1, 1, 0, 0, 1, 0};
    const ReconciliationResult r = reconcile_parity(key, key, rng, 1);
    REQUIRE(r.corrected_alice.size() == 4);
    REQUIRE(r.corrected_alice == r.corrected_bob);
    REQUIRE(r.residual_mismatch == 0);
    REQUIRE(r.bits_disclosed == 4);
  }

  SECTION("a single error in a length-2 key is always caught") {
    Rng rng(2);
    const ReconciliationResult r = reconcile_parity({0, 0}, {0, 1}, rng, 1);
    REQUIRE(r.corrected_alice.empty());
    REQUIRE(r.corrected_bob.empty());
    REQUIRE(r.residual_mismatch == 0);
  }

  SECTION("10% errors, 4 rounds, length 2^12: residual below 1%") {
    std::size_t residual_total = 0, bits_total = 0;
    for (std::uint64_t trial = 0; trial < 100; ++trial) {
      Rng rng(9000 + trial);
      std::vector<int> alice(4096), bob(4096);
      for (std::size_t i = 0; i < alice.size(); ++i) {
        alice[i] = rng.next_bit();
        bob[i] = alice[i];
        if (rng.next_double() < 0.1) bob[i] ^= 1;
      }
      const ReconciliationResult r = reconcile_parity(alice, bob, rng, 4);
      residual_total += r.residual_mismatch;
      bits_total += r.corrected_alice.size();
    }
    REQUIRE(bits_total > 0);
    REQUIRE(static_cast<double>(residual_total) / static_cast<double>(bits_total) < 0.01);
  }

  Rng rng(3);
  REQUIRE_THROWS_AS(reconcile_parity({0, 1}, {0}, rng), std::invalid_argument);
}

TEST_CASE("privacy amplification") {
  SECTION("identity matrix leaves the key unchanged (test hook)") {
    const std::vector<int> key{1, 0, 1, 1, 0};
    std::vector<std::vector<int>> identity(5, std::vector<int>(5, 0));
    for (std::size_t i = 0; i < 5; ++i) identity[i][i] = 1;
    REQUIRE(apply_gf2_matrix(identity, key) == key);
  }

  SECTION("equal keys map to equal outputs under any seed") {
    const std::vector<int> key{1, 0, 0, 1, 1, 0, 1, 0, 0, 1, 1, 1};
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      Rng a(seed), b(seed);
      REQUIRE(privacy_amplify(key, 6, a) == privacy_amplify(key, 6, b));
    }
  }

  SECTION("output bits are balanced over seeds for a fixed nonzero input") {
    const std::vector<int> key{1, 0, 1, 0, 0, 1, 0, 0};
    std::size_t ones = 0, bits = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
      Rng rng(seed);
      for (int b : privacy_amplify(key, 4, rng)) {
        ones += static_cast<std::size_t>(b);
        ++bits;
      }
    }
    REQUIRE(static_cast<double>(ones) / static_cast<double>(bits) ==
            Approx(0.5).margin(0.05));
  }

  SECTION("output longer than the input is rejected") {
    Rng rng(4);
    REQUIRE_THROWS_AS(privacy_amplify({1, 0}, 3, rng), std::invalid_argument);
  }

  SECTION("length rule: floor(len (1 - 2 h2(q)))") {
    REQUIRE(recommended_final_length(1000, 0.0) == 1000);
    REQUIRE(recommended_final_length(1000, 0.5) == 0);
    // h2(0.1) = 0.4689955935892812; 1000 * (1 - 2 h2) = 62.0088...
    REQUIRE(binary_entropy(0.1) == Approx(0.4689955935892812).margin(1e-12));
    REQUIRE(recommended_final_length(1000, 0.1) == 62);
  }
}

TEST_CASE("full pipeline at 10% channel error") {
  Bb84Config cfg;
  cfg.num_qubits_sent = 12000;
  cfg.adversary = AdversaryModel::depolarizing(0.2);
  cfg.qber_abort_threshold = 0.15;
  Bb84PipelinePolicy policy;
  policy.design_qber = 0.10;

  int identical = 0;
  const int sessions = 20;
  for (std::uint64_t k = 0; k < sessions; ++k) {
    cfg.seed = RngSeed{7000 + k};
    const Bb84PipelineResult r = run_bb84_pipeline(cfg, policy);
    REQUIRE(r.session.verdict == Bb84Verdict::Completed);
    REQUIRE_FALSE(r.final_alice.empty());
    if (r.keys_identical) ++identical;
  }
  REQUIRE(identical == sessions);
}

TEST_CASE("config validation") {
  Bb84Config cfg;
  cfg.num_qubits_sent = 0;
  REQUIRE_THROWS_AS(bb84_run(cfg), std::invalid_argument);
  cfg.num_qubits_sent = 100;
  cfg.check_fraction = 0.0;
  REQUIRE_THROWS_AS(bb84_run(cfg), std::invalid_argument);
  cfg.check_fraction = 0.005;  // expected check bits below 1
  REQUIRE_THROWS_AS(bb84_run(cfg), std::invalid_argument);
  cfg.check_fraction = 0.25;
  cfg.qber_abort_threshold = 1.5;
  REQUIRE_THROWS_AS(bb84_run(cfg), std::invalid_argument);
  REQUIRE_THROWS_AS(AdversaryModel::depolarizing(1.5), std::invalid_argument);
}
