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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "semiq/parties/commitment.hpp"
#include "semiq/protocols/session.hpp"

namespace semiq::protocols {

/// Test hooks for the key-agreement runner.
struct SqkaHooks {
    std::optional<Bits> forced_alice_key;
    std::optional<Bits> forced_bob_key;
    /// Dishonest Alice: reads Bob's raw key early and announces
    /// K_A' = target ^ K_B instead of her committed key.
    std::optional<Bits> alice_forces_key;
    /// Dishonest Bob: after seeing K_A, discloses a forged encoded-position
    /// pairing that steers Alice's decoding towards target ^ K_A.
    std::optional<Bits> bob_forces_key;
};

struct SqkaConfig {
    std::size_t n = 1;
    /// Decoy count; 3n when unset.
    std::optional<std::size_t> m;
    std::uint64_t seed = 0;
    adversary::AttackStrategy attack;
    bool commitments_enabled = true;
    bool permutation_enabled = true;
    /// Decoy error rate above which Alice aborts. 1.0 disables detection.
    double abort_threshold = 0.0;
    SqkaHooks hooks;
};

/// Alice's decoding of one encoded position: home outcome xor travel outcome.
constexpr Bit extract_bob_key_bit(Bit r_A, Bit travel_outcome) noexcept {
    return static_cast<Bit>(r_A ^ travel_outcome);
}

namespace detail {

inline nlohmann::json bits_json(const Bits &b) {
    return semiq::to_string(b);
}

/// Bob's forged disclosure: keep the originals in key order and, for each,
/// pick an unused encoded wire whose value makes Alice decode `want[k]`.
/// Falls back to any unused wire when no value fits.
inline std::vector<WirePair> forge_pairs(const Encoding &enc, const Bits &r_B, const Bits &wire_values,
                                         const Bits &want) {
    auto honest = enc.encoded_pairs();
    std::vector<bool> used(honest.size(), false);
    std::vector<WirePair> out;
    for (std::size_t k = 0; k < honest.size(); ++k) {
        const Bit need = static_cast<Bit>(want[k] ^ r_B[k]);
        std::size_t pick = honest.size();
        for (std::size_t j = 0; j < honest.size(); ++j) {
            if (!used[j] && wire_values[j] == need) {
                pick = j;
                break;
            }
        }
        if (pick == honest.size()) {
            for (std::size_t j = 0; j < honest.size(); ++j) {
                if (!used[j]) {
                    pick = j;
                    break;
                }
            }
        }
        used[pick] = true;
        out.emplace_back(honest[pick].first, honest[k].second);
    }
    return out;
}

/// Key agreement (announce_ka = true) or its deterministic key-distribution
/// reduction (false), where Alice only learns K_B.
inline SessionOutcome run_key_protocol(const SqkaConfig &cfg, bool announce_ka) {
    using adversary::Leg;
    const std::size_t n = cfg.n;
    const std::size_t m = resolve_m(n, cfg.m);
    check_threshold(cfg.abort_threshold);
    const std::size_t N = n + m;

    Session s(cfg.seed, cfg.attack, {Leg::Forward, Leg::Return});
    Party alice = s.party("alice", Capability::Quantum, kAliceStream);
    Party bob = s.party("bob", Capability::Classical, kBobStream);
    parties::CommitmentAuthority authority(derive_seed(cfg.seed, kCommitStream));

    const Bits K_A = cfg.hooks.forced_alice_key.value_or(random_bits(n, alice.rng()));
    const Bits K_B = cfg.hooks.forced_bob_key.value_or(random_bits(n, bob.rng()));
    check_length(K_A, n, "K_A");
    check_length(K_B, n, "K_B");
    if (cfg.hooks.alice_forces_key) {
        check_length(*cfg.hooks.alice_forces_key, n, "Alice's target key");
    }
    if (cfg.hooks.bob_forces_key) {
        check_length(*cfg.hooks.bob_forces_key, n, "Bob's target key");
    }

    std::optional<parties::Commitment> commit_A, commit_B;
    if (cfg.commitments_enabled) {
        if (announce_ka) {
            commit_A = authority.commit(K_A);
            alice.announce(s.transcript, "commit_K_A");
        }
        commit_B = authority.commit(K_B);
        bob.announce(s.transcript, "commit_K_B");
    }

    // Alice: N psi+ pairs, travel halves out.
    std::vector<QubitLabel> home;
    Wire travel;
    for (std::size_t i = 0; i < N; ++i) {
        auto [h, t] = alice.prepare_bell(BellKind::PsiPlus);
        home.push_back(h);
        travel.push_back(t);
    }
    alice.announce(s.transcript, "send_travel", {{"count", N}});
    Wire at_bob = s.eve.intercept(Leg::Forward, std::move(travel));

    // Bob: measure-or-reflect, encode K_B, shuffle, send back.
    Encoding enc = encode_and_permute(bob, at_bob, K_B, m, cfg.permutation_enabled);
    bob.announce(s.transcript, "return_sequence", {{"count", N}});
    Wire at_alice = s.eve.intercept(Leg::Return, std::move(enc.returned));
    alice.announce(s.transcript, "ack");

    // Decoy check.
    const auto decoys = enc.decoy_pairs();
    bob.announce(s.transcript, "reveal_Pi_m", {{"pairs", to_json(decoys)}});
    const CheckResult check = bell_check(
        alice, decoys, at_alice, [&](std::size_t o) { return home[o]; },
        [](std::size_t) { return BellKind::PsiPlus; });
    record_check(s.out, check);
    alice.announce(s.transcript, "decoy_check", {{"checked", check.checked}, {"mismatches", check.mismatches}});
    if (auto reason = judge(check, cfg.abort_threshold, AbortReason::BellMismatch)) {
        return s.abort(*reason);
    }

    // The rest of both strings is now Z-basis data; Alice reads it all.
    std::vector<bool> is_decoy_wire(N, false), is_decoy_orig(N, false);
    for (const auto &[w, o] : decoys) {
        is_decoy_wire[w] = true;
        is_decoy_orig[o] = true;
    }
    std::vector<Bit> home_z(N, 0), wire_z(N, 0);
    std::vector<std::size_t> open_wires, open_origs;
    for (std::size_t i = 0; i < N; ++i) {
        if (!is_decoy_orig[i]) {
            home_z[i] = alice.measure_z(home[i]);
            open_origs.push_back(i);
        }
    }
    for (std::size_t w = 0; w < N; ++w) {
        if (!is_decoy_wire[w]) {
            wire_z[w] = alice.measure_z(at_alice[w]);
            open_wires.push_back(w);
        }
    }
    auto decode = [&](const std::vector<WirePair> &pairs) {
        Bits kb;
        Bits ra;
        for (const auto &[w, o] : pairs) {
            ra.push_back(home_z[o]);
            kb.push_back(extract_bob_key_bit(home_z[o], wire_z[w]));
        }
        return std::pair{kb, ra};
    };

    Bits announced_KA = K_A;
    if (announce_ka) {
        if (cfg.hooks.alice_forces_key) {
            // Pair unrevealed wires with unrevealed originals in order; exact
            // when Bob did not shuffle.
            std::vector<WirePair> guess;
            for (std::size_t k = 0; k < open_wires.size(); ++k) {
                guess.emplace_back(open_wires[k], open_origs[k]);
            }
            announced_KA = xor_bits(*cfg.hooks.alice_forces_key, decode(guess).first);
        }
        alice.announce(s.transcript, "announce_K_A", {{"K_A", bits_json(announced_KA)}});
        if (commit_A) {
            const bool ok = authority.verify(*commit_A, announced_KA);
            bob.announce(s.transcript, "verify_commitment", {{"party", "alice"}, {"ok", ok}});
            if (!ok) {
                return s.abort(AbortReason::CommitmentMismatch);
            }
        }
    }

    Bits bob_key = announce_ka ? xor_bits(announced_KA, K_B) : K_B;
    std::vector<WirePair> disclosed = enc.encoded_pairs();
    if (announce_ka && cfg.hooks.bob_forces_key) {
        Bits wire_values;
        for (const auto &[w, o] : disclosed) {
            wire_values.push_back(wire_z[w]);
        }
        const Bits want = xor_bits(*cfg.hooks.bob_forces_key, announced_KA);
        disclosed = forge_pairs(enc, enc.r, wire_values, want);
        bob_key = *cfg.hooks.bob_forces_key;
    }
    bob.announce(s.transcript, "compute_K_f");
    bob.announce(s.transcript, "reveal_Pi_n", {{"pairs", to_json(disclosed)}});

    auto [decoded_KB, r_A] = decode(disclosed);
    if (commit_B) {
        const bool ok = authority.verify(*commit_B, decoded_KB);
        alice.announce(s.transcript, "verify_commitment", {{"party", "bob"}, {"ok", ok}});
        if (!ok) {
            return s.abort(AbortReason::CommitmentMismatch);
        }
    }
    const Bits alice_key = announce_ka ? xor_bits(announced_KA, decoded_KB) : decoded_KB;
    alice.announce(s.transcript, "compute_K_f");

    s.out.keys["alice"] = alice_key;
    s.out.keys["bob"] = bob_key;
    s.out.raw = RawKeys{announced_KA, K_B, r_A, enc.r, alice_key};
    count_agreement(s.out, alice_key, bob_key);
    score_eve(s.out, s.eve, disclosed, eve_guesses(s.eve, disclosed), K_B);
    return s.finish();
}

}  // namespace detail

/// Semi-quantum key agreement between quantum Alice and classical Bob.
inline SessionOutcome run_sqka(const SqkaConfig &cfg) {
    return detail::run_key_protocol(cfg, true);
}

/// Deterministic key distribution: Alice never announces K_A and both end
/// up with Bob's K_B.
inline SessionOutcome run_sqkd(const SqkaConfig &cfg) {
    return detail::run_key_protocol(cfg, false);
}

}  // namespace semiq::protocols
