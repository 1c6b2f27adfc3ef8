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
#include <cstdint>
#include <map>

#include "semiq/bits.hpp"
#include "semiq/error.hpp"
#include "semiq/random.hpp"

namespace semiq::parties {

/// Handle returned by a commitment. The digest is an opaque random tag; it
/// carries no information about the committed bits.
struct Commitment {
    std::array<std::uint8_t, 16> digest{};
    bool opened = false;
};

/// Ideal binding-and-hiding commitment functionality. The committed strings
/// stay inside this object, so code holding only `Commitment` values (such
/// as the adversary) never sees a preimage.
class CommitmentAuthority {
   public:
    explicit CommitmentAuthority(std::uint64_t seed) : rng_(seed) {
    }

    Commitment commit(const Bits &bits) {
        if (bits.empty()) {
            throw Error(ErrorCode::EmptyInput, "cannot commit to an empty bit string");
        }
        Commitment c;
        do {
            for (std::size_t i = 0; i < c.digest.size(); i += 8) {
                const std::uint64_t r = rng_.next_u64();
                for (std::size_t k = 0; k < 8; ++k) {
                    c.digest[i + k] = static_cast<std::uint8_t>(r >> (8 * k));
                }
            }
        } while (sealed_.contains(c.digest));
        sealed_.emplace(c.digest, bits);
        return c;
    }

    /// True iff `bits` is exactly what was committed. Marks the commitment opened.
    bool verify(Commitment &c, const Bits &bits) const {
        if (bits.empty()) {
            throw Error(ErrorCode::EmptyInput, "cannot open against an empty bit string");
        }
        auto it = sealed_.find(c.digest);
        c.opened = true;
        return it != sealed_.end() && it->second == bits;
    }

   private:
    RandomSource rng_;
    std::map<std::array<std::uint8_t, 16>, Bits> sealed_;
};

}  // namespace semiq::parties
