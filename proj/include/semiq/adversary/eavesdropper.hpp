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
#include <string>
#include <vector>

#include "semiq/adversary/attack.hpp"
#include "semiq/parties/party.hpp"

namespace semiq::adversary {

using qsim::QubitLabel;
using Wire = std::vector<QubitLabel>;

/// Forward leg of the CNOT attack: one fresh |0> ancilla per travel qubit,
/// CNOT with the travel qubit as control. The wire passes on untouched.
inline Wire cnot_forward(parties::Party &eve, EveState &st, Wire travel) {
    for (const auto &t : travel) {
        auto a = eve.prepare_z(0);
        eve.cnot(t, a);
        st.ancillas.push_back(a);
    }
    return travel;
}

/// Return leg of the CNOT attack. Wire position j is paired with ancilla j;
/// a second CNOT disentangles reflected qubits and leaves an encoded bit in
/// the ancilla, which Eve reads straight away.
inline Wire cnot_backward(parties::Party &eve, EveState &st, Wire returned) {
    st.inferred_bits.assign(returned.size(), EveBit{});
    st.inferred_positions.assign(returned.size(), PositionGuess::Unknown);
    for (std::size_t j = 0; j < returned.size() && j < st.ancillas.size(); ++j) {
        eve.cnot(returned[j], st.ancillas[j]);
        st.inferred_bits[j] = {eve.measure_z(st.ancillas[j]), true};
    }
    st.ancillas.clear();
    return returned;
}

/// Eve keeps the sender's qubits and forwards halves of her own psi+ pairs.
inline Wire intercept_resend_forward(parties::Party &eve, EveState &st, const Wire &travel) {
    Wire out;
    out.reserve(travel.size());
    for (const auto &t : travel) {
        auto [home, fwd] = eve.prepare_bell(qsim::BellKind::PsiPlus);
        st.retained.push_back(t);
        st.own_halves.push_back(home);
        out.push_back(fwd);
    }
    return out;
}

/// Bell-measures each kept half against the returned qubit. psi- means a
/// measured position carrying 0, phi+/- a measured position carrying 1, psi+
/// is ambiguous. Measured positions get the sender's original back after a Z
/// read, flipped by the inferred bit; ambiguous ones get a fresh psi+ half.
inline Wire intercept_resend_backward(parties::Party &eve, EveState &st, const Wire &returned) {
    Wire out;
    out.reserve(returned.size());
    st.inferred_bits.assign(returned.size(), EveBit{});
    st.inferred_positions.assign(returned.size(), PositionGuess::Unknown);
    for (std::size_t j = 0; j < returned.size(); ++j) {
        if (j >= st.own_halves.size()) {
            out.push_back(returned[j]);
            continue;
        }
        const auto kind = eve.measure_bell(st.own_halves[j], returned[j]);
        if (kind == qsim::BellKind::PsiPlus) {
            st.inferred_positions[j] = PositionGuess::Reflected;
            auto [keep, fwd] = eve.prepare_bell(qsim::BellKind::PsiPlus);
            st.own_halves[j] = keep;
            out.push_back(fwd);
            continue;
        }
        const Bit bit = qsim::bell_parity(kind);
        st.inferred_positions[j] = PositionGuess::Measured;
        st.inferred_bits[j] = {bit, true};
        const Bit t = eve.measure_z(st.retained[j]);
        out.push_back(eve.prepare_z(static_cast<Bit>(t ^ bit)));
    }
    return out;
}

/// Z-measures every qubit on the wire and forwards |outcome>.
inline Wire measure_resend_z(parties::Party &eve, std::vector<Bit> &reads, const Wire &wire) {
    Wire out;
    out.reserve(wire.size());
    reads.clear();
    for (const auto &q : wire) {
        const Bit b = eve.measure_z(q);
        reads.push_back(b);
        out.push_back(eve.prepare_z(b));
    }
    return out;
}

/// Eve wired into a session. Protocols call the hook for each quantum
/// transmission; legs outside the strategy pass through untouched.
class Eavesdropper {
   public:
    Eavesdropper(AttackStrategy strategy, qsim::QuantumLab &lab, RandomSource rng)
        : strategy_(std::move(strategy)), eve_("eve", parties::Capability::Quantum, lab, std::move(rng)) {
    }

    const AttackStrategy &strategy() const noexcept {
        return strategy_;
    }
    bool active() const noexcept {
        return strategy_.kind != AttackKind::None;
    }
    const EveState &state() const noexcept {
        return state_;
    }

    Wire intercept(Leg leg, Wire wire) {
        if (!strategy_.touches(leg)) {
            return wire;
        }
        switch (strategy_.kind) {
            case AttackKind::None:
                return wire;
            case AttackKind::CnotAttack:
                return leg == Leg::Forward ? cnot_forward(eve_, state_, std::move(wire))
                                           : cnot_backward(eve_, state_, std::move(wire));
            case AttackKind::InterceptResendBellPairs:
                return leg == Leg::Forward ? intercept_resend_forward(eve_, state_, wire)
                                           : intercept_resend_backward(eve_, state_, wire);
            case AttackKind::MeasureResendZ:
                return measure_resend(leg, wire);
        }
        return wire;
    }

    /// Forward-wire positions consumed by a public check never come back;
    /// Eve drops her per-position state for them so her return pairing
    /// lines up with the shortened wire. `positions` must be ascending.
    void drop_forward_positions(const std::vector<std::size_t> &positions) {
        drop(state_.ancillas, positions);
        drop(state_.retained, positions);
        drop(state_.own_halves, positions);
        drop(state_.forward_reads, positions);
    }

    /// Eve's guess for the bit carried on return-wire position `wire`.
    EveBit guess_at(std::size_t wire) const {
        if (wire < state_.inferred_bits.size()) {
            return state_.inferred_bits[wire];
        }
        return {};
    }

    PositionGuess position_at(std::size_t wire) const {
        if (wire < state_.inferred_positions.size()) {
            return state_.inferred_positions[wire];
        }
        return PositionGuess::Unknown;
    }

   private:
    Wire measure_resend(Leg leg, const Wire &wire) {
        std::vector<Bit> reads;
        Wire out = measure_resend_z(eve_, reads, wire);
        if (leg == Leg::Forward) {
            state_.forward_reads = std::move(reads);
        } else if (leg == Leg::Return) {
            // The returned value is the forward value xor the encoded bit, so
            // Eve decodes only where she also saw the forward leg.
            state_.inferred_bits.assign(reads.size(), EveBit{});
            state_.inferred_positions.assign(reads.size(), PositionGuess::Unknown);
            for (std::size_t j = 0; j < reads.size() && j < state_.forward_reads.size(); ++j) {
                state_.inferred_bits[j] = {static_cast<Bit>(reads[j] ^ state_.forward_reads[j]), true};
            }
        }
        return out;
    }

    template <typename T>
    static void drop(std::vector<T> &v, const std::vector<std::size_t> &positions) {
        if (v.empty()) {
            return;
        }
        std::vector<T> kept;
        kept.reserve(v.size());
        std::size_t k = 0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (k < positions.size() && positions[k] == i) {
                ++k;
                continue;
            }
            kept.push_back(std::move(v[i]));
        }
        v = std::move(kept);
    }

    AttackStrategy strategy_;
    parties::Party eve_;
    EveState state_;
};

}  // namespace semiq::adversary
