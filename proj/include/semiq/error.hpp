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

#include <stdexcept>
#include <string>
#include <string_view>

namespace semiq {

enum class ErrorCode {
    // qsim
    EqualBellKinds,
    UnknownLabel,
    NonOrthonormalBasis,
    RegisterTooLarge,
    DuplicateLabel,
    InvalidState,
    // parties
    CapabilityViolation,
    ZeroCount,
    EmptyInput,
    InvalidPermutation,
    // protocols / adversary
    InvalidConfig,
    InvalidAttack,
    // analysis
    DivisionByZero,
    UnknownAttack,
    IoError,
    // cli
    Usage,
    Validation,
};

constexpr std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::EqualBellKinds: return "EqualBellKinds";
        case ErrorCode::UnknownLabel: return "UnknownLabel";
        case ErrorCode::NonOrthonormalBasis: return "NonOrthonormalBasis";
        case ErrorCode::RegisterTooLarge: return "RegisterTooLarge";
        case ErrorCode::DuplicateLabel: return "DuplicateLabel";
        case ErrorCode::InvalidState: return "InvalidState";
        case ErrorCode::CapabilityViolation: return "CapabilityViolation";
        case ErrorCode::ZeroCount: return "ZeroCount";
        case ErrorCode::EmptyInput: return "EmptyInput";
        case ErrorCode::InvalidPermutation: return "InvalidPermutation";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
        case ErrorCode::InvalidAttack: return "InvalidAttack";
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::UnknownAttack: return "UnknownAttack";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::Usage: return "Usage";
        case ErrorCode::Validation: return "Validation";
    }
    return "Unknown";
}

/// Every contract failure in the library surfaces as this exception; `code()`
/// identifies the failure class, `what()` carries the details.
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &detail)
        : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {
    }

    ErrorCode code() const noexcept {
        return code_;
    }

   private:
    ErrorCode code_;
};

}  // namespace semiq
