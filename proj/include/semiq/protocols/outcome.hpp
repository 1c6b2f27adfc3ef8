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
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "semiq/adversary/attack.hpp"
#include "semiq/bits.hpp"
#include "semiq/parties/transcript.hpp"

namespace semiq::protocols {

enum class AbortReason : std::uint8_t { None, BellMismatch, CorrelationMismatch, CommitmentMismatch, ThresholdExceeded };

constexpr std::string_view to_string(AbortReason r) noexcept {
    switch (r) {
        case AbortReason::None: return "none";
        case AbortReason::BellMismatch: return "bell-mismatch";
        case AbortReason::CorrelationMismatch: return "correlation-mismatch";
        case AbortReason::CommitmentMismatch: return "commitment-mismatch";
        case AbortReason::ThresholdExceeded: return "threshold-exceeded";
    }
    return "?";
}

inline AbortReason abort_reason_from_string(std::string_view s) {
    for (AbortReason r : {AbortReason::None, AbortReason::BellMismatch, AbortReason::CorrelationMismatch,
                          AbortReason::CommitmentMismatch, AbortReason::ThresholdExceeded}) {
        if (to_string(r) == s) {
            return r;
        }
    }
    throw Error(ErrorCode::Validation, "unknown abort reason '" + std::string(s) + "'");
}

/// Intermediate strings of a key-agreement run. In honest psi+ runs
/// r_A == r_B and K_f == K_A ^ K_B.
struct RawKeys {
    Bits K_A;
    Bits K_B;
    Bits r_A;
    Bits r_B;
    Bits K_f;

    friend bool operator==(const RawKeys &, const RawKeys &) = default;
};

struct SessionOutcome {
    bool aborted = false;
    AbortReason abort_reason = AbortReason::None;
    /// Final key or decoded message per role ("alice", "bob", ...).
    std::map<std::string, Bits> keys;
    /// Eve's guess per secret bit, aligned with `eve_target`. Empty when
    /// nobody attacked or the session aborted before any secret was used.
    std::vector<adversary::EveBit> eve_inferences;
    Bits eve_target;
    parties::Transcript transcript;
    /// Mismatch rate of the check that ran last (decoy or correlation).
    double error_rate_observed = 0.0;

    /// Raw counters for aggregation.
    std::size_t decoys_checked = 0;
    std::size_t decoy_mismatches = 0;
    std::size_t compared_bits = 0;
    std::size_t matching_bits = 0;
    std::size_t encoded_positions = 0;
    std::size_t identified_positions = 0;

    std::optional<RawKeys> raw;

    /// Simulator primitives each actor invoked, by name.
    std::map<std::string, std::set<std::string>> primitives_used;

    const Bits &key(const std::string &role) const {
        auto it = keys.find(role);
        if (it == keys.end()) {
            throw Error(ErrorCode::Validation, "no key for role '" + role + "'");
        }
        return it->second;
    }

    friend bool operator==(const SessionOutcome &, const SessionOutcome &) = default;
};

}  // namespace semiq::protocols
