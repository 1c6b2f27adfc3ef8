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
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "semiq/bits.hpp"
#include "semiq/error.hpp"
#include "semiq/qsim/state_vector.hpp"

namespace semiq::adversary {

enum class AttackKind : std::uint8_t { None, CnotAttack, InterceptResendBellPairs, MeasureResendZ };

constexpr std::string_view to_string(AttackKind k) noexcept {
    switch (k) {
        case AttackKind::None: return "none";
        case AttackKind::CnotAttack: return "cnot";
        case AttackKind::InterceptResendBellPairs: return "intercept-resend";
        case AttackKind::MeasureResendZ: return "measure-resend";
    }
    return "?";
}

inline AttackKind attack_from_string(std::string_view s) {
    for (AttackKind k : {AttackKind::None, AttackKind::CnotAttack, AttackKind::InterceptResendBellPairs,
                         AttackKind::MeasureResendZ}) {
        if (to_string(k) == s) {
            return k;
        }
    }
    throw Error(ErrorCode::UnknownAttack, "unknown attack '" + std::string(s) + "'");
}

/// Quantum transmissions a protocol makes.
///  Forward: quantum sender to the classical party (Alice→Bob in the
///           two-party protocols, Charlie→Alice in the controlled ones).
///  Return: classical party back to the quantum receiver.
///  ControllerToReceiver: Charlie→Bob in the controlled protocols.
enum class Leg : std::uint8_t { Forward, Return, ControllerToReceiver };

constexpr std::string_view to_string(Leg l) noexcept {
    switch (l) {
        case Leg::Forward: return "forward";
        case Leg::Return: return "return";
        case Leg::ControllerToReceiver: return "controller-to-receiver";
    }
    return "?";
}

struct AttackStrategy {
    AttackKind kind = AttackKind::None;
    /// Legs Eve touches; empty means the attack's natural legs.
    std::vector<Leg> legs;
    /// Mixed into the session seed to give Eve her own measurement stream.
    std::uint64_t eve_rng_seed = 0;

    std::vector<Leg> effective_legs() const {
        if (kind == AttackKind::None) {
            return {};
        }
        if (!legs.empty()) {
            return legs;
        }
        return {Leg::Forward, Leg::Return};
    }

    bool touches(Leg l) const {
        const auto eff = effective_legs();
        return std::find(eff.begin(), eff.end(), l) != eff.end();
    }

    /// Rejects leg sets the protocol does not have or the attack cannot use.
    /// CNOT and intercept-resend are two-phase attacks and need exactly the
    /// forward/return pair; measure-resend works on any leg.
    void validate(const std::vector<Leg> &available) const {
        const auto eff = effective_legs();
        for (Leg l : eff) {
            if (std::find(available.begin(), available.end(), l) == available.end()) {
                throw Error(ErrorCode::InvalidAttack,
                            std::string(to_string(kind)) + " on leg '" + std::string(to_string(l)) +
                                "' which this protocol does not have");
            }
        }
        if (kind == AttackKind::CnotAttack || kind == AttackKind::InterceptResendBellPairs) {
            const bool exact = eff.size() == 2 && touches(Leg::Forward) && touches(Leg::Return);
            if (!exact) {
                throw Error(ErrorCode::InvalidAttack,
                            std::string(to_string(kind)) + " needs exactly the forward and return legs");
            }
        }
    }
};

/// Eve's reading of a returned wire position.
enum class PositionGuess : std::uint8_t { Unknown, Measured, Reflected };

/// One inferred secret bit; `known == false` means Eve has no information
/// and the bit scores 0.5 in accuracy metrics.
struct EveBit {
    Bit value = 0;
    bool known = false;

    friend bool operator==(const EveBit &, const EveBit &) = default;
};

struct EveState {
    /// CNOT attack: one ancilla per forward-wire position.
    std::vector<qsim::QubitLabel> ancillas;
    /// Intercept-resend: the sender's original qubits, by forward-wire position.
    std::vector<qsim::QubitLabel> retained;
    /// Intercept-resend: Eve's kept halves of the pairs she substituted.
    std::vector<qsim::QubitLabel> own_halves;
    /// Measure-resend: Z outcomes read on the forward leg.
    std::vector<Bit> forward_reads;
    /// Per return-wire position.
    std::vector<EveBit> inferred_bits;
    std::vector<PositionGuess> inferred_positions;
};

/// Score of a guess against the truth: 1 if right, 0 if wrong, 0.5 if unknown.
inline double accuracy_credit(const EveBit &guess, Bit truth) noexcept {
    if (!guess.known) {
        return 0.5;
    }
    return guess.value == truth ? 1.0 : 0.0;
}

}  // namespace semiq::adversary
