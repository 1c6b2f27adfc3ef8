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

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

#include "semiq/adversary/attack.hpp"
#include "semiq/error.hpp"

namespace semiq::analysis {

using Rational = boost::rational<std::int64_t>;

/// Resource counts of one protocol run.
///  c: message bits delivered
///  q_c: qubits carrying the message
///  d: decoy qubits
///  b: classical bits exchanged, decoy-check traffic excluded
struct EfficiencyInput {
    std::int64_t c = 0;
    std::int64_t q_c = 0;
    std::int64_t d = 0;
    std::int64_t b = 0;
};

/// eta = c / (q_c + d + b), exactly.
inline Rational qubit_efficiency_exact(const EfficiencyInput &in) {
    if (in.c < 0 || in.q_c < 0 || in.d < 0 || in.b < 0) {
        throw Error(ErrorCode::InvalidConfig, "efficiency counts must be nonnegative");
    }
    const std::int64_t denom = in.q_c + in.d + in.b;
    if (denom == 0) {
        throw Error(ErrorCode::DivisionByZero, "qubit efficiency with q + b = 0");
    }
    return Rational(in.c, denom);
}

inline double qubit_efficiency(const EfficiencyInput &in) {
    return boost::rational_cast<double>(qubit_efficiency_exact(in));
}

/// Per-n coefficients of a protocol's resource counts (m = 3n accounting).
struct ProtocolCostRow {
    std::string_view protocol;
    std::int64_t c;
    std::int64_t q_c;
    std::int64_t d;
    std::int64_t b;
    /// Efficiency as published, in percent; differs from the formula for
    /// the switch variant (4.72 printed, 1/21 = 4.76 computed).
    double published_percent;

    EfficiencyInput at(std::int64_t n) const {
        return {c * n, q_c * n, d * n, b * n};
    }
    Rational eta() const {
        return qubit_efficiency_exact(at(1));
    }
    bool matches_published() const {
        return std::abs(100.0 * boost::rational_cast<double>(eta()) - published_percent) < 0.005;
    }
};

inline constexpr std::array<ProtocolCostRow, 4> kCostTable{{
    {"sqka", 1, 2, 3, 5, 10.0},
    {"cdssqc-ghz", 1, 4, 13, 8, 4.0},
    {"cdssqc-switch", 1, 3, 10, 8, 4.72},
    {"sqd", 2, 2, 3, 5, 20.0},
}};

/// Cost row for a protocol name. The key-distribution reduction moves the
/// same qubits as key agreement and is reported against that row.
inline const ProtocolCostRow &cost_row(std::string_view protocol) {
    const std::string_view key = protocol == "sqkd" ? std::string_view("sqka") : protocol;
    for (const auto &row : kCostTable) {
        if (row.protocol == key) {
            return row;
        }
    }
    throw Error(ErrorCode::InvalidConfig, "no cost row for protocol '" + std::string(protocol) + "'");
}

/// Probability that a single decoy shows a wrong Bell outcome.
inline double per_decoy_mismatch(adversary::AttackKind kind) {
    switch (kind) {
        case adversary::AttackKind::None: return 0.0;
        case adversary::AttackKind::CnotAttack: return 0.0;
        case adversary::AttackKind::InterceptResendBellPairs: return 0.75;
        case adversary::AttackKind::MeasureResendZ: return 0.5;
    }
    throw Error(ErrorCode::UnknownAttack, "attack without a per-decoy mismatch probability");
}

/// Abort probability at zero tolerance: 1 - (1 - p)^m.
inline double detection_model(adversary::AttackKind kind, std::uint64_t m) {
    const double p = per_decoy_mismatch(kind);
    return 1.0 - std::pow(1.0 - p, static_cast<double>(m));
}

inline double detection_model(std::string_view attack, std::uint64_t m) {
    return detection_model(adversary::attack_from_string(attack), m);
}

}  // namespace semiq::analysis
