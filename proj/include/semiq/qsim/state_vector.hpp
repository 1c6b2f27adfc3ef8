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
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include "semiq/bits.hpp"
#include "semiq/error.hpp"

namespace semiq::qsim {

using Amplitude = std::complex<double>;

/// Largest register the simulator will build. Amplitudes are stored sparsely,
/// so the cost of a register is its number of nonzero amplitudes, not 2^n.
inline constexpr std::size_t kMaxQubits = 1024;

/// Tolerance on Σ|amp|² = 1 for states handed to the simulator.
inline constexpr double kNormTolerance = 1e-10;

/// Amplitudes with magnitude below this are treated as exact cancellations.
inline constexpr double kPruneTolerance = 1e-13;

/// Opaque identifier tying a register slot to a protocol role.
class QubitLabel {
   public:
    QubitLabel() = default;
    QubitLabel(std::string name) : name_(std::move(name)) {
    }
    QubitLabel(const char *name) : name_(name) {
    }

    const std::string &str() const noexcept {
        return name_;
    }

    friend bool operator==(const QubitLabel &, const QubitLabel &) = default;
    friend auto operator<=>(const QubitLabel &, const QubitLabel &) = default;

   private:
    std::string name_;
};

enum class BellKind : std::uint8_t { PsiPlus, PsiMinus, PhiPlus, PhiMinus };

inline constexpr std::array<BellKind, 4> kAllBellKinds = {
    BellKind::PsiPlus, BellKind::PsiMinus, BellKind::PhiPlus, BellKind::PhiMinus};

/// 0 for ψ± (equal Z bits), 1 for φ± (unequal Z bits).
constexpr Bit bell_parity(BellKind k) noexcept {
    return (k == BellKind::PhiPlus || k == BellKind::PhiMinus) ? 1 : 0;
}

/// 0 for the '+' member of a class, 1 for the '-' member.
constexpr Bit bell_sign(BellKind k) noexcept {
    return (k == BellKind::PsiMinus || k == BellKind::PhiMinus) ? 1 : 0;
}

constexpr BellKind bell_from(Bit parity, Bit sign) noexcept {
    if (parity) {
        return sign ? BellKind::PhiMinus : BellKind::PhiPlus;
    }
    return sign ? BellKind::PsiMinus : BellKind::PsiPlus;
}

constexpr std::string_view to_string(BellKind k) noexcept {
    switch (k) {
        case BellKind::PsiPlus: return "psi+";
        case BellKind::PsiMinus: return "psi-";
        case BellKind::PhiPlus: return "phi+";
        case BellKind::PhiMinus: return "phi-";
    }
    return "?";
}

inline BellKind bell_from_string(std::string_view s) {
    for (BellKind k : kAllBellKinds) {
        if (to_string(k) == s) {
            return k;
        }
    }
    throw Error(ErrorCode::Validation, "unknown Bell state '" + std::string(s) + "'");
}

/// Amplitudes over (00, 01, 10, 11): ψ± = (|00⟩ ± |11⟩)/√2, φ± = (|01⟩ ± |10⟩)/√2.
inline std::array<Amplitude, 4> bell_amplitudes(BellKind k) {
    const double h = 1.0 / std::sqrt(2.0);
    switch (k) {
        case BellKind::PsiPlus: return {h, 0, 0, h};
        case BellKind::PsiMinus: return {h, 0, 0, -h};
        case BellKind::PhiPlus: return {0, h, h, 0};
        case BellKind::PhiMinus: return {0, h, -h, 0};
    }
    return {};
}

/// Outcome of a measurement in a {|a⟩, |b⟩} basis.
enum class AbOutcome : std::uint8_t { A, B };

constexpr std::string_view to_string(AbOutcome o) noexcept {
    return o == AbOutcome::A ? "a" : "b";
}

using Qubit = std::array<Amplitude, 2>;

/// An orthonormal single-qubit basis {|a⟩, |b⟩}. Defaults to {|0⟩, |1⟩}.
struct OrthonormalPair {
    Qubit a{1.0, 0.0};
    Qubit b{0.0, 1.0};

    static OrthonormalPair computational() {
        return {};
    }

    bool is_orthonormal(double tol = 1e-12) const {
        auto dot = [](const Qubit &x, const Qubit &y) {
            return std::conj(x[0]) * y[0] + std::conj(x[1]) * y[1];
        };
        return std::abs(dot(a, a) - 1.0) <= tol && std::abs(dot(b, b) - 1.0) <= tol &&
               std::abs(dot(a, b)) <= tol;
    }
};

/// Computational-basis index of a register. Bit i belongs to register slot i.
/// Dense indices are big-endian: slot 0 is the most significant bit.
class BasisKey {
   public:
    static constexpr std::size_t kWords = kMaxQubits / 64;

    bool test(std::size_t i) const noexcept {
        return (words_[i / 64] >> (i % 64)) & 1U;
    }
    void set(std::size_t i, bool v) noexcept {
        const std::uint64_t mask = std::uint64_t{1} << (i % 64);
        words_[i / 64] = v ? (words_[i / 64] | mask) : (words_[i / 64] & ~mask);
    }
    void flip(std::size_t i) noexcept {
        words_[i / 64] ^= std::uint64_t{1} << (i % 64);
    }

    /// Removes bit i; bits above it move down one slot.
    BasisKey erased(std::size_t i) const noexcept {
        BasisKey out = *this;
        const std::size_t w = i / 64;
        const std::size_t b = i % 64;
        const std::uint64_t low = b == 0 ? 0 : (out.words_[w] & ((std::uint64_t{1} << b) - 1));
        const std::uint64_t high = b == 63 ? 0 : (out.words_[w] >> (b + 1));
        out.words_[w] = low | (high << b);
        for (std::size_t j = w; j < kWords; ++j) {
            if (j > w) {
                out.words_[j] >>= 1;
            }
            if (j + 1 < kWords) {
                out.words_[j] |= (out.words_[j + 1] & 1U) << 63;
            }
        }
        return out;
    }

    /// Big-endian dense index of an n-qubit key (n ≤ 63).
    std::uint64_t dense_index(std::size_t n) const noexcept {
        std::uint64_t idx = 0;
        for (std::size_t i = 0; i < n; ++i) {
            idx = (idx << 1) | static_cast<std::uint64_t>(test(i));
        }
        return idx;
    }

    static BasisKey from_dense_index(std::uint64_t idx, std::size_t n) noexcept {
        BasisKey k;
        for (std::size_t i = 0; i < n; ++i) {
            k.set(i, (idx >> (n - 1 - i)) & 1U);
        }
        return k;
    }

    friend bool operator==(const BasisKey &, const BasisKey &) = default;
    friend auto operator<=>(const BasisKey &, const BasisKey &) = default;

   private:
    std::array<std::uint64_t, kWords> words_{};
};

struct Term {
    BasisKey key;
    Amplitude amp;
};

/// Sorts by key, sums duplicates and drops cancelled amplitudes.
inline std::vector<Term> canonicalize(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term &x, const Term &y) { return x.key < y.key; });
    std::vector<Term> out;
    out.reserve(terms.size());
    for (auto &t : terms) {
        if (!out.empty() && out.back().key == t.key) {
            out.back().amp += t.amp;
        } else {
            out.push_back(t);
        }
    }
    std::erase_if(out, [](const Term &t) { return std::abs(t.amp) < kPruneTolerance; });
    return out;
}

/// Pure state of an ordered, labelled register.
///
/// Zero amplitudes are implicit; `amplitudes()` materializes the dense
/// 2^n vector for small registers. Values are immutable from the outside:
/// every operation in operations.hpp returns a new state.
class StateVector {
   public:
    /// Dense constructor; `amplitudes.size()` must be 2^labels.size().
    StateVector(std::vector<QubitLabel> labels, const std::vector<Amplitude> &amplitudes) : labels_(std::move(labels)) {
        check_labels();
        if (labels_.size() > 63 || amplitudes.size() != (std::uint64_t{1} << labels_.size())) {
            throw Error(ErrorCode::InvalidState, "amplitude count must be 2^num_qubits");
        }
        std::vector<Term> terms;
        for (std::uint64_t i = 0; i < amplitudes.size(); ++i) {
            if (std::abs(amplitudes[i]) >= kPruneTolerance) {
                terms.push_back({BasisKey::from_dense_index(i, labels_.size()), amplitudes[i]});
            }
        }
        terms_ = std::move(terms);
        check_norm();
    }

    /// Sparse constructor used by the operations; canonicalizes and checks the norm.
    static StateVector from_terms(std::vector<QubitLabel> labels, std::vector<Term> terms) {
        StateVector s;
        s.labels_ = std::move(labels);
        s.check_labels();
        s.terms_ = canonicalize(std::move(terms));
        s.check_norm();
        return s;
    }

    std::size_t num_qubits() const noexcept {
        return labels_.size();
    }
    const std::vector<QubitLabel> &labels() const noexcept {
        return labels_;
    }
    std::span<const Term> terms() const noexcept {
        return terms_;
    }

    bool contains(const QubitLabel &label) const noexcept {
        return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
    }

    std::size_t slot_of(const QubitLabel &label) const {
        auto it = std::find(labels_.begin(), labels_.end(), label);
        if (it == labels_.end()) {
            throw Error(ErrorCode::UnknownLabel, "no qubit '" + label.str() + "' in register");
        }
        return static_cast<std::size_t>(it - labels_.begin());
    }

    Amplitude amplitude(std::uint64_t dense_index) const {
        if (num_qubits() > 63) {
            throw Error(ErrorCode::RegisterTooLarge, "dense index needs at most 63 qubits");
        }
        const BasisKey k = BasisKey::from_dense_index(dense_index, num_qubits());
        auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                                   [](const Term &t, const BasisKey &key) { return t.key < key; });
        return (it != terms_.end() && it->key == k) ? it->amp : Amplitude{};
    }

    /// Dense amplitude list, length 2^num_qubits.
    std::vector<Amplitude> amplitudes() const {
        if (num_qubits() > 20) {
            throw Error(ErrorCode::RegisterTooLarge, "dense view limited to 20 qubits");
        }
        std::vector<Amplitude> out(std::size_t{1} << num_qubits());
        for (const auto &t : terms_) {
            out[t.key.dense_index(num_qubits())] = t.amp;
        }
        return out;
    }

    double norm_squared() const noexcept {
        double s = 0;
        for (const auto &t : terms_) {
            s += std::norm(t.amp);
        }
        return s;
    }

   private:
    StateVector() = default;

    void check_labels() const {
        if (labels_.empty()) {
            throw Error(ErrorCode::InvalidState, "register needs at least one qubit");
        }
        if (labels_.size() > kMaxQubits) {
            throw Error(ErrorCode::RegisterTooLarge, std::to_string(labels_.size()) + " qubits exceeds the cap of " +
                                                         std::to_string(kMaxQubits));
        }
        std::vector<QubitLabel> sorted = labels_;
        std::sort(sorted.begin(), sorted.end());
        auto dup = std::adjacent_find(sorted.begin(), sorted.end());
        if (dup != sorted.end()) {
            throw Error(ErrorCode::DuplicateLabel, "label '" + dup->str() + "' appears twice");
        }
    }

    void check_norm() const {
        const double n = norm_squared();
        if (std::abs(n - 1.0) > kNormTolerance) {
            throw Error(ErrorCode::InvalidState, "state is not normalized (norm^2 = " + std::to_string(n) + ")");
        }
    }

    std::vector<QubitLabel> labels_;
    std::vector<Term> terms_;
};

using Outcome = std::variant<Bit, BellKind, AbOutcome>;

/// Result of one measurement: the sampled outcome, its Born weight in the
/// pre-measurement state, and the collapsed remainder (empty when every
/// qubit of the register was measured).
struct MeasurementRecord {
    Outcome outcome;
    double probability = 0;
    std::optional<StateVector> post_state;
};

}  // namespace semiq::qsim

template <>
struct std::hash<semiq::qsim::QubitLabel> {
    std::size_t operator()(const semiq::qsim::QubitLabel &l) const noexcept {
        return std::hash<std::string>{}(l.str());
    }
};
