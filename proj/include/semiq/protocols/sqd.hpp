// Copyright 2026 The semiq Authors
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


#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "semiq/protocols/session.hpp"

namespace semiq::protocols {

/// Quantum dialogue between quantum Alice and classical Bob.
struct SqdConfig {
    std::size_t n = 1;
    /// Decoy count; 3n when unset.
    std::optional<std::size_t> m;
    /// Random when unset.
    std::optional<Bits> alice_message;
    std::optional<Bits> bob_message;
    std::uint64_t seed = 0;
    adversary::AttackStrategy attack;
    /// Extra pairs spent on the correlation check; min(m, 2n) when unset.
    std::optional<std::size_t> check_size;
    bool permutation_enabled = true;
    double abort_threshold = 0.0;
    /// Replace Alice's final Bell measurement with two Z measurements.
    bool final_z_measurement = false;
};

/// The other party's bit from a final pair outcome and one's own bit.
constexpr Bit decode_dialogue(BellKind outcome, Bit own_bit) noexcept {
    return static_cast<Bit>(qsim::bell_parity(outcome) ^ own_bit);
}

inline SessionOutcome run_sqd(const SqdConfig &cfg) {
    using adversary::Leg;
    const std::size_t n = cfg.n;
    const std::size_t m = resolve_m(n, cfg.m);
    check_threshold(cfg.abort_threshold);
    const std::size_t N = n + m;
    const std::size_t sc = cfg.check_size.value_or(std::min(m, 2 * n));
    const std::size_t total = N + sc;

    Session s(cfg.seed, cfg.attack, {Leg::Forward, Leg::Return});
    Party alice = s.party("alice", Capability::Quantum, kAliceStream);
    Party bob = s.party("bob", Capability::Classical, kBobStream);

    const Bits M_A = cfg.alice_message.value_or(random_bits(n, alice.rng()));
    const Bits M_B = cfg.bob_message.value_or(random_bits(n, bob.rng()));
    check_length(M_A, n, "Alice's message");
    check_length(M_B, n, "Bob's message");

    std::vector<QubitLabel> home;
    Wire travel;
    for (std::size_t i = 0; i < total; ++i) {
        auto [h, t] = alice.prepare_bell(BellKind::PsiPlus);
        home.push_back(h);
        travel.push_back(t);
    }
    alice.announce(s.transcript, "send_travel", {{"count", total}});
    Wire at_bob = s.eve.intercept(Leg::Forward, std::move(travel));

    // Correlation check: both sides read Z on a few pairs and compare.
    std::vector<std::size_t> checks;
    {
        const auto p = parties::random_permutation(total, alice.rng());
        checks.assign(p.mapping().begin(), p.mapping().begin() + static_cast<std::ptrdiff_t>(sc));
        std::sort(checks.begin(), checks.end());
    }
    alice.announce(s.transcript, "announce_check_positions", {{"positions", checks}});
    CheckResult corr;
    {
        Bits ys;
        for (std::size_t p : checks) {
            ys.push_back(bob.measure_z(at_bob[p]));
        }
        bob.announce(s.transcript, "correlation_outcomes", {{"values", semiq::to_string(ys)}});
        for (std::size_t k = 0; k < checks.size(); ++k) {
            const Bit x = alice.measure_z(home[checks[k]]);
            ++corr.checked;
            if (x != ys[k]) {
                ++corr.mismatches;
            }
        }
        alice.announce(s.transcript, "correlation_result",
                       {{"checked", corr.checked}, {"mismatches", corr.mismatches}});
    }
    s.out.error_rate_observed = corr.rate();
    if (auto reason = judge(corr, cfg.abort_threshold, AbortReason::CorrelationMismatch)) {
        return s.abort(*reason);
    }
    s.eve.drop_forward_positions(checks);
    std::vector<QubitLabel> H;
    Wire B;
    {
        std::size_t k = 0;
        for (std::size_t i = 0; i < total; ++i) {
            if (k < checks.size() && checks[k] == i) {
                ++k;
                continue;
            }
            H.push_back(home[i]);
            B.push_back(at_bob[i]);
        }
    }

    Encoding enc = encode_and_permute(bob, B, M_B, m, cfg.permutation_enabled);
    bob.announce(s.transcript, "return_sequence", {{"count", N}});
    Wire returned = s.eve.intercept(Leg::Return, std::move(enc.returned));
    alice.announce(s.transcript, "ack");

    const auto decoys = enc.decoy_pairs();
    bob.announce(s.transcript, "reveal_Pi_m", {{"pairs", to_json(decoys)}});
    const CheckResult check = bell_check(
        alice, decoys, returned, [&](std::size_t o) { return H[o]; }, [](std::size_t) { return BellKind::PsiPlus; });
    record_check(s.out, check);
    alice.announce(s.transcript, "decoy_check", {{"checked", check.checked}, {"mismatches", check.mismatches}});
    if (auto reason = judge(check, cfg.abort_threshold, AbortReason::BellMismatch)) {
        return s.abort(*reason);
    }

    const auto encoded = enc.encoded_pairs();
    bob.announce(s.transcript, "reveal_Pi_n", {{"pairs", to_json(encoded)}});

    // Alice adds her bits with X and measures each pair.
    std::vector<BellKind> outcomes;
    Bits parities;
    for (std::size_t k = 0; k < n; ++k) {
        const auto &[w, o] = encoded[k];
        if (M_A[k]) {
            alice.x(returned[w]);
        }
        if (cfg.final_z_measurement) {
            const Bit a = alice.measure_z(H[o]);
            const Bit b = alice.measure_z(returned[w]);
            parities.push_back(static_cast<Bit>(a ^ b));
        } else {
            const BellKind kind = alice.measure_bell(H[o], returned[w]);
            outcomes.push_back(kind);
            parities.push_back(qsim::bell_parity(kind));
        }
    }
    if (cfg.final_z_measurement) {
        alice.announce(s.transcript, "announce_outcomes", {{"basis", "z"}, {"parities", semiq::to_string(parities)}});
    } else {
        std::vector<std::string> names;
        for (BellKind k : outcomes) {
            names.emplace_back(qsim::to_string(k));
        }
        alice.announce(s.transcript, "announce_outcomes", {{"basis", "bell"}, {"outcomes", names}});
    }

    // parity(psi) = 0 and parity(phi) = 1, so a Z-parity plays the same role
    // as a Bell outcome here.
    auto decode = [&](std::size_t k, Bit own) {
        return static_cast<Bit>(parities[k] ^ own);
    };
    Bits alice_gets, bob_gets;
    for (std::size_t k = 0; k < n; ++k) {
        if (cfg.final_z_measurement) {
            alice_gets.push_back(decode(k, M_A[k]));
            bob_gets.push_back(decode(k, M_B[k]));
        } else {
            alice_gets.push_back(decode_dialogue(outcomes[k], M_A[k]));
            bob_gets.push_back(decode_dialogue(outcomes[k], M_B[k]));
        }
    }
    s.out.keys["alice"] = alice_gets;
    s.out.keys["bob"] = bob_gets;
    s.out.keys["alice.message"] = M_A;
    s.out.keys["bob.message"] = M_B;
    count_agreement(s.out, M_B, alice_gets);
    count_agreement(s.out, M_A, bob_gets);

    // Eve reads M_B off the wire and recovers M_A from the public parities.
    auto guesses = eve_guesses(s.eve, encoded);
    std::vector<adversary::EveBit> both = guesses;
    for (std::size_t k = 0; k < n; ++k) {
        adversary::EveBit g;
        if (guesses[k].known) {
            g = {static_cast<Bit>(guesses[k].value ^ parities[k]), true};
        }
        both.push_back(g);
    }
    Bits target = M_B;
    target.insert(target.end(), M_A.begin(), M_A.end());
    score_eve(s.out, s.eve, encoded, std::move(both), std::move(target));
    return s.finish();
}

}  // namespace semiq::protocols
