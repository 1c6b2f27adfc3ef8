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

#include <cstdint>
#include <string>
#include <string_view>

#include "semiq/error.hpp"
#include "semiq/qsim/lab.hpp"

namespace semiq::parties {

enum class Capability : std::uint8_t { Classical, Quantum };

constexpr std::string_view to_string(Capability c) noexcept {
    return c == Capability::Classical ? "classical" : "quantum";
}

/// Anything a party can ask to do: the simulator primitives plus the purely
/// classical sequence operations.
enum class Operation : std::uint8_t {
    PrepareZ,
    PrepareQubit,
    PrepareBell,
    PrepareGhzLike,
    ApplyCnot,
    ApplyX,
    MeasureZ,
    MeasureBell,
    MeasureAb,
    Reflect,
    Permute,
    ClassicalMessage,
};

constexpr Operation operation_for(qsim::Primitive p) noexcept {
    switch (p) {
        case qsim::Primitive::PrepareZ: return Operation::PrepareZ;
        case qsim::Primitive::PrepareQubit: return Operation::PrepareQubit;
        case qsim::Primitive::PrepareBell: return Operation::PrepareBell;
        case qsim::Primitive::PrepareGhzLike: return Operation::PrepareGhzLike;
        case qsim::Primitive::ApplyCnot: return Operation::ApplyCnot;
        case qsim::Primitive::ApplyX: return Operation::ApplyX;
        case qsim::Primitive::MeasureZ: return Operation::MeasureZ;
        case qsim::Primitive::MeasureBell: return Operation::MeasureBell;
        case qsim::Primitive::MeasureAb: return Operation::MeasureAb;
    }
    return Operation::ClassicalMessage;
}

constexpr std::string_view to_string(Operation op) noexcept {
    switch (op) {
        case Operation::PrepareZ: return "prepare_z";
        case Operation::PrepareQubit: return "prepare_qubit";
        case Operation::PrepareBell: return "prepare_bell";
        case Operation::PrepareGhzLike: return "prepare_ghz_like";
        case Operation::ApplyCnot: return "apply_cnot";
        case Operation::ApplyX: return "apply_x";
        case Operation::MeasureZ: return "measure_z";
        case Operation::MeasureBell: return "measure_bell";
        case Operation::MeasureAb: return "measure_ab";
        case Operation::Reflect: return "reflect";
        case Operation::Permute: return "permute";
        case Operation::ClassicalMessage: return "classical_message";
    }
    return "?";
}

/// A classical party may measure and prepare in Z, reflect, reorder and talk.
constexpr bool is_permitted(Capability cap, Operation op) noexcept {
    if (cap == Capability::Quantum) {
        return true;
    }
    switch (op) {
        case Operation::PrepareZ:
        case Operation::MeasureZ:
        case Operation::Reflect:
        case Operation::Permute:
        case Operation::ClassicalMessage:
            return true;
        default:
            return false;
    }
}

/// Throws CapabilityViolation naming the offending operation.
inline void restrict(Capability cap, Operation op) {
    if (!is_permitted(cap, op)) {
        throw Error(ErrorCode::CapabilityViolation,
                    std::string(to_string(cap)) + " party may not " + std::string(to_string(op)));
    }
}

}  // namespace semiq::parties
