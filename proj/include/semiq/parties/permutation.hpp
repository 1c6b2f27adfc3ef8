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
#include <span>
#include <utility>
#include <vector>

#include "semiq/error.hpp"
#include "semiq/random.hpp"

namespace semiq::parties {

/// A bijection on sequence positions. The element at position i moves to
/// position `target(i)`.
class Permutation {
   public:
    static Permutation identity(std::size_t n) {
        std::vector<std::size_t> m(n);
        for (std::size_t i = 0; i < n; ++i) {
            m[i] = i;
        }
        return Permutation(std::move(m));
    }

    explicit Permutation(std::vector<std::size_t> mapping) : mapping_(std::move(mapping)) {
        std::vector<bool> seen(mapping_.size(), false);
        for (std::size_t t : mapping_) {
            if (t >= mapping_.size() || seen[t]) {
                throw Error(ErrorCode::InvalidPermutation, "mapping is not a bijection");
            }
            seen[t] = true;
        }
    }

    std::size_t size() const noexcept {
        return mapping_.size();
    }

    std::size_t target(std::size_t i) const {
        return mapping_.at(i);
    }

    const std::vector<std::size_t> &mapping() const noexcept {
        return mapping_;
    }

    Permutation inverse() const {
        std::vector<std::size_t> inv(mapping_.size());
        for (std::size_t i = 0; i < mapping_.size(); ++i) {
            inv[mapping_[i]] = i;
        }
        return Permutation(std::move(inv));
    }

    template <typename T>
    std::vector<T> apply(std::span<const T> seq) const {
        if (seq.size() != mapping_.size()) {
            throw Error(ErrorCode::InvalidPermutation, "sequence length does not match permutation size");
        }
        std::vector<T> out(seq.size());
        for (std::size_t i = 0; i < seq.size(); ++i) {
            out[mapping_[i]] = seq[i];
        }
        return out;
    }

    template <typename T>
    std::vector<T> apply(const std::vector<T> &seq) const {
        return apply(std::span<const T>(seq));
    }

    bool is_identity() const noexcept {
        for (std::size_t i = 0; i < mapping_.size(); ++i) {
            if (mapping_[i] != i) {
                return false;
            }
        }
        return true;
    }

    friend bool operator==(const Permutation &, const Permutation &) = default;

   private:
    std::vector<std::size_t> mapping_;
};

/// Uniform over the symmetric group (Fisher-Yates).
inline Permutation random_permutation(std::size_t n, RandomSource &rng) {
    std::vector<std::size_t> m(n);
    for (std::size_t i = 0; i < n; ++i) {
        m[i] = i;
    }
    for (std::size_t i = n; i > 1; --i) {
        std::swap(m[i - 1], m[rng.below(i)]);
    }
    return Permutation(std::move(m));
}

enum class ClassicalAction : std::uint8_t { Reflect, MeasureAndPrepare };

/// Uniformly random arrangement with exactly `n_encode` MeasureAndPrepare
/// entries among `n_encode + m_decoy` positions.
inline std::vector<ClassicalAction> choose_actions(std::size_t n_encode, std::size_t m_decoy, RandomSource &rng) {
    if (n_encode == 0 || m_decoy == 0) {
        throw Error(ErrorCode::ZeroCount, "need at least one encoded and one decoy position");
    }
    std::vector<ClassicalAction> actions(n_encode, ClassicalAction::MeasureAndPrepare);
    actions.resize(n_encode + m_decoy, ClassicalAction::Reflect);
    return random_permutation(actions.size(), rng).apply(actions);
}

}  // namespace semiq::parties
