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
#include <string>
#include <string_view>
#include <vector>

#include "semiq/error.hpp"
#include "semiq/random.hpp"

namespace semiq {

/// A classical bit, always 0 or 1.
using Bit = std::uint8_t;

/// Keys, messages and measurement-outcome strings.
using Bits = std::vector<Bit>;

inline Bits xor_bits(const Bits &a, const Bits &b) {
    if (a.size() != b.size()) {
        throw Error(ErrorCode::InvalidConfig, "xor of bit strings with different lengths");
    }
    Bits out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = static_cast<Bit>(a[i] ^ b[i]);
    }
    return out;
}

inline Bits random_bits(std::size_t n, RandomSource &rng) {
    Bits out(n);
    for (auto &b : out) {
        b = rng.bit();
    }
    return out;
}

inline std::string to_string(const Bits &bits) {
    std::string s;
    s.reserve(bits.size());
    for (Bit b : bits) {
        s.push_back(b ? '1' : '0');
    }
    return s;
}

/// Parses a string of '0'/'1' characters.
inline Bits bits_from_string(std::string_view s) {
    Bits out;
    out.reserve(s.size());
    for (char c : s) {
        if (c != '0' && c != '1') {
            throw Error(ErrorCode::Validation, "not a bit string: " + std::string(s));
        }
        out.push_back(static_cast<Bit>(c - '0'));
    }
    return out;
}

/// Reads the first `n` bits (most significant first) of a hex string. The
/// string must have exactly ceil(n/4) digits and any padding bits past `n`
/// must be zero, so every n-bit message has exactly one spelling.
inline Bits bits_from_hex(std::string_view hex, std::size_t n) {
    if (hex.size() != (n + 3) / 4) {
        throw Error(ErrorCode::Validation, "hex message '" + std::string(hex) + "' must have " +
                                               std::to_string((n + 3) / 4) + " digits for " +
                                               std::to_string(n) + " bits");
    }
    Bits out;
    out.reserve(hex.size() * 4);
    for (char c : hex) {
        int v;
        if (c >= '0' && c <= '9') {
            v = c - '0';
        } else if (c >= 'a' && c <= 'f') {
            v = c - 'a' + 10;
        } else if (c >= 'A' && c <= 'F') {
            v = c - 'A' + 10;
        } else {
            throw Error(ErrorCode::Validation, "not a hex digit in '" + std::string(hex) + "'");
        }
        for (int k = 3; k >= 0; --k) {
            out.push_back(static_cast<Bit>((v >> k) & 1));
        }
    }
    for (std::size_t i = n; i < out.size(); ++i) {
        if (out[i]) {
            throw Error(ErrorCode::Validation, "hex message '" + std::string(hex) + "' has nonzero padding");
        }
    }
    out.resize(n);
    return out;
}

inline std::string bits_to_hex(const Bits &bits) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    for (std::size_t i = 0; i < bits.size(); i += 4) {
        int v = 0;
        for (std::size_t k = 0; k < 4; ++k) {
            v = (v << 1) | (i + k < bits.size() ? bits[i + k] : 0);
        }
        out.push_back(kDigits[v]);
    }
    return out;
}

}  // namespace semiq
