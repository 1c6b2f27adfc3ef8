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

enum class CdssqcVariant : std::uint8_t { GhzLike, Switch };

/// Controlled direct communication: Charlie (quantum) controls whether Bob
/// (quantum) can read the message classical Alice sends him.
struct CdssqcConfig {
    std::size_t n = 1;
    /// Decoy count; 3n when unset.
    std::optional<std::size_t> m;
    CdssqcVariant variant = CdssqcVariant::GhzLike;
    /// Branch states of the GHZ-like resource. The switch variant uses
    /// psi1 for every pair.
    BellKind psi1 = BellKind::PsiPlus;
    BellKind psi2 = BellKind::PhiPlus;
    qsim::OrthonormalPair basis = qsim::OrthonormalPair::computational();
    std::uint64_t seed = 0;
    adversary::AttackStrategy attack;
    /// Alice's message; random when unset.
    std::optional<Bits> message;
    /// Extra states spent on the correlation check; min(m, 2n) when unset.
    std::optional<std::size_t> check_size;
    bool permutation_enabled = true;
    double abort_threshold = 0.0;
    /// GHZ-like: Charlie announces his {a,b} outcomes for message positions.
    bool charlie_announces = true;
    /// Switch: Charlie discloses which of Bob's qubits pair with each
    /// message position.
    bool charlie_discloses = true;
    /// Switch test hook: Charlie sends Bob's halves in order.
    bool identity_controller_permutation = false;
};

namespace detail {

inline std::vector<std::size_t> pick_positions(std::size_t total, std::size_t count, RandomSource &rng) {
    const auto p = parties::random_permutation(total, rng);
    std::vector<std::size_t> out(p.mapping().begin(), p.mapping().begin() + static_cast<std::ptrdiff_t>(count));
    std::sort(out.begin(), out.end());
    return out;
}

template <typename T>
std::vector<T> without_positions(const std::vector<T> &v, const std::vector<std::size_t> &sorted_positions) {
    std::vector<T> out;
    std::size_t k = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (k < sorted_positions.size() && sorted_positions[k] == i) {
            ++k;
            continue;
        }
        out.push_back(v[i]);
    }
    return out;
}

inline std::string branch_name(qsim::AbOutcome o) {
    return o == qsim::AbOutcome::A ? "a" : "b";
}

}  // namespace detail

inline SessionOutcome run_cdssqc(const CdssqcConfig &cfg) {
    using adversary::Leg;
    const bool ghz = cfg.variant == CdssqcVariant::GhzLike;
    const std::size_t n = cfg.n;
    const std::size_t m = resolve_m(n, cfg.m);
    check_threshold(cfg.abort_threshold);
    if (ghz && cfg.psi1 == cfg.psi2) {
        throw Error(ErrorCode::EqualBellKinds, "psi1 and psi2 must differ");
    }
    if (!cfg.basis.is_orthonormal()) {
        throw Error(ErrorCode::NonOrthonormalBasis, "controller basis is not orthonormal");
    }
    const std::size_t N = n + m;
    const std::size_t sc = cfg.check_size.value_or(std::min(m, 2 * n));
    const std::size_t total = N + sc;

    Session s(cfg.seed, cfg.attack, {Leg::Forward, Leg::Return, Leg::ControllerToReceiver});
    Party charlie = s.party("charlie", Capability::Quantum, kCharlieStream);
    Party alice = s.party("alice", Capability::Classical, kAliceStream);
    Party bob = s.party("bob", Capability::Quantum, kBobStream);

    const Bits M = cfg.message.value_or(random_bits(n, alice.rng()));
    check_length(M, n, "message");

    // Resource states. `bob_of[i]` is where the partner of Alice's i-th
    // qubit sits on Bob's wire.
    Wire to_alice, to_bob, kept;
    parties::Permutation pi_c = parties::Permutation::identity(total);
    if (ghz) {
        for (std::size_t i = 0; i < total; ++i) {
            auto g = charlie.prepare_ghz_like(cfg.psi1, cfg.psi2, cfg.basis);
            to_alice.push_back(g[0]);
            to_bob.push_back(g[1]);
            kept.push_back(g[2]);
        }
    } else {
        Wire second;
        for (std::size_t i = 0; i < total; ++i) {
            auto [a, b] = charlie.prepare_bell(cfg.psi1);
            to_alice.push_back(a);
            second.push_back(b);
        }
        if (!cfg.identity_controller_permutation) {
            pi_c = parties::random_permutation(total, charlie.rng());
        }
        to_bob = charlie.permute(pi_c, second);
    }
    charlie.announce(s.transcript, "distribute", {{"count", total}});
    Wire at_alice = s.eve.intercept(Leg::Forward, std::move(to_alice));
    Wire at_bob = s.eve.intercept(Leg::ControllerToReceiver, std::move(to_bob));

    // Correlation check on `sc` of the states.
    const auto checks = detail::pick_positions(total, sc, charlie.rng());
    std::vector<std::size_t> bob_checks;
    for (std::size_t p : checks) {
        bob_checks.push_back(pi_c.target(p));
    }
    {
        nlohmann::json payload = {{"alice", checks}};
        if (!ghz) {
            payload["bob"] = bob_checks;
        }
        charlie.announce(s.transcript, "announce_check_positions", payload);
    }
    CheckResult corr;
    {
        Bits xs, ys;
        std::vector<std::string> branches;
        for (std::size_t k = 0; k < checks.size(); ++k) {
            BellKind expected = cfg.psi1;
            if (ghz) {
                const auto ab = charlie.measure_ab(kept[checks[k]], cfg.basis);
                branches.push_back(detail::branch_name(ab));
                expected = ab == qsim::AbOutcome::A ? cfg.psi1 : cfg.psi2;
            }
            const Bit x = alice.measure_z(at_alice[checks[k]]);
            const Bit y = bob.measure_z(at_bob[bob_checks[k]]);
            xs.push_back(x);
            ys.push_back(y);
            ++corr.checked;
            if (static_cast<Bit>(x ^ y) != qsim::bell_parity(expected)) {
                ++corr.mismatches;
            }
        }
        alice.announce(s.transcript, "correlation_outcomes", {{"values", semiq::to_string(xs)}});
        bob.announce(s.transcript, "correlation_outcomes", {{"values", semiq::to_string(ys)}});
        if (ghz) {
            charlie.announce(s.transcript, "correlation_branches", {{"branches", branches}});
        }
    }
    s.out.error_rate_observed = corr.rate();
    if (auto reason = judge(corr, cfg.abort_threshold, AbortReason::CorrelationMismatch)) {
        return s.abort(*reason);
    }
    s.eve.drop_forward_positions(checks);

    // Surviving positions, renumbered from 0.
    std::vector<std::size_t> sorted_bob_checks = bob_checks;
    std::sort(sorted_bob_checks.begin(), sorted_bob_checks.end());
    std::vector<std::size_t> alice_origs, bob_positions(total, 0);
    {
        std::vector<std::size_t> all(total);
        for (std::size_t i = 0; i < total; ++i) {
            all[i] = i;
        }
        alice_origs = detail::without_positions(all, checks);
        const auto bob_left = detail::without_positions(all, sorted_bob_checks);
        for (std::size_t j = 0; j < bob_left.size(); ++j) {
            bob_positions[bob_left[j]] = j;
        }
    }
    const Wire A = detail::without_positions(at_alice, checks);
    const Wire B = detail::without_positions(at_bob, sorted_bob_checks);
    const Wire C = ghz ? detail::without_positions(kept, checks) : Wire{};
    auto partner_index = [&](std::size_t o) { return bob_positions[pi_c.target(alice_origs[o])]; };

    // Alice encodes and sends everything on to Bob.
    Encoding enc = encode_and_permute(alice, A, M, m, cfg.permutation_enabled);
    alice.announce(s.transcript, "send_sequence", {{"count", N}});
    Wire returned = s.eve.intercept(Leg::Return, std::move(enc.returned));
    bob.announce(s.transcript, "ack");

    const auto decoys = enc.decoy_pairs();
    alice.announce(s.transcript, "reveal_Pi_m", {{"pairs", to_json(decoys)}});
    std::vector<bool> consumed(N, false);
    CheckResult check;
    if (ghz) {
        std::vector<BellKind> expect(N, cfg.psi1);
        std::vector<std::string> names;
        for (const auto &[w, o] : decoys) {
            const auto ab = charlie.measure_ab(C[o], cfg.basis);
            names.push_back(detail::branch_name(ab));
            expect[o] = ab == qsim::AbOutcome::A ? cfg.psi1 : cfg.psi2;
        }
        charlie.announce(s.transcript, "announce_decoy_branches", {{"branches", names}});
        check = bell_check(
            bob, decoys, returned, [&](std::size_t o) { return B[o]; }, [&](std::size_t o) { return expect[o]; });
    } else {
        std::vector<std::size_t> partners;
        for (const auto &[w, o] : decoys) {
            partners.push_back(partner_index(o));
            consumed[partner_index(o)] = true;
        }
        charlie.announce(s.transcript, "announce_decoy_partners", {{"positions", partners}});
        const BellKind psi = cfg.psi1;
        check = bell_check(
            bob, decoys, returned, [&](std::size_t o) { return B[partner_index(o)]; },
            [psi](std::size_t) { return psi; });
    }
    record_check(s.out, check);
    bob.announce(s.transcript, "decoy_check", {{"checked", check.checked}, {"mismatches", check.mismatches}});
    if (auto reason = judge(check, cfg.abort_threshold, AbortReason::BellMismatch)) {
        return s.abort(*reason);
    }

    const auto encoded = enc.encoded_pairs();
    alice.announce(s.transcript, "reveal_Pi_n", {{"pairs", to_json(encoded)}});

    Bits decoded;
    if (ghz) {
        Bits t, r_B;
        for (const auto &[w, o] : encoded) {
            t.push_back(bob.measure_z(returned[w]));
            r_B.push_back(bob.measure_z(B[o]));
        }
        Bits hyp_a, hyp_b;
        for (std::size_t k = 0; k < n; ++k) {
            const Bit base = static_cast<Bit>(t[k] ^ r_B[k]);
            hyp_a.push_back(static_cast<Bit>(base ^ qsim::bell_parity(cfg.psi1)));
            hyp_b.push_back(static_cast<Bit>(base ^ qsim::bell_parity(cfg.psi2)));
        }
        if (cfg.charlie_announces) {
            std::vector<std::string> names;
            for (std::size_t k = 0; k < n; ++k) {
                const auto ab = charlie.measure_ab(C[encoded[k].second], cfg.basis);
                names.push_back(detail::branch_name(ab));
                decoded.push_back(ab == qsim::AbOutcome::A ? hyp_a[k] : hyp_b[k]);
            }
            charlie.announce(s.transcript, "announce_branches", {{"branches", names}});
        } else {
            // No branch information: Bob is left with two candidates and
            // reports the first.
            s.out.keys["bob.hypothesis_a"] = hyp_a;
            s.out.keys["bob.hypothesis_b"] = hyp_b;
            decoded = hyp_a;
        }
    } else {
        std::vector<std::size_t> partners;
        for (const auto &[w, o] : encoded) {
            partners.push_back(partner_index(o));
        }
        if (cfg.charlie_discloses) {
            charlie.announce(s.transcript, "disclose_Pi_C", {{"positions", partners}});
        }
        const Bit parity = qsim::bell_parity(cfg.psi1);
        for (std::size_t k = 0; k < n; ++k) {
            const Bit t = bob.measure_z(returned[encoded[k].first]);
            // Without the disclosure Bob can only assume his halves arrived
            // in Alice's order.
            const std::size_t mine = cfg.charlie_discloses ? partners[k] : encoded[k].second;
            if (consumed[mine]) {
                decoded.push_back(bob.rng().bit());
                continue;
            }
            consumed[mine] = true;
            const Bit r = bob.measure_z(B[mine]);
            decoded.push_back(static_cast<Bit>(t ^ r ^ parity));
        }
    }
    bob.announce(s.transcript, "decode_message");

    s.out.keys["alice"] = M;
    s.out.keys["bob"] = decoded;
    count_agreement(s.out, M, decoded);
    score_eve(s.out, s.eve, encoded, eve_guesses(s.eve, encoded), M);
    return s.finish();
}

inline SessionOutcome run_cdssqc_ghz(CdssqcConfig cfg) {
    cfg.variant = CdssqcVariant::GhzLike;
    return run_cdssqc(cfg);
}

inline SessionOutcome run_cdssqc_switch(CdssqcConfig cfg) {
    cfg.variant = CdssqcVariant::Switch;
    return run_cdssqc(cfg);
}

}  // namespace semiq::protocols
