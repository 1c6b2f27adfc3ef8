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
#include <optional>
#include <utility>
#include <vector>

#include "semiq/qsim/state_vector.hpp"
#include "semiq/random.hpp"

namespace semiq::qsim {

using Matrix2 = std::array<std::array<Amplitude, 2>, 2>;

namespace detail {

inline std::vector<Term> apply_1q(std::span<const Term> terms, std::size_t slot, const Matrix2 &u) {
    std::vector<Term> out;
    out.reserve(terms.size() * 2);
    for (const auto &t : terms) {
        const int v = t.key.test(slot) ? 1 : 0;
        for (int r = 0; r < 2; ++r) {
            const Amplitude c = u[r][v];
            if (c != Amplitude{}) {
                Term n{t.key, c * t.amp};
                n.key.set(slot, r == 1);
                out.push_back(n);
            }
        }
    }
    return canonicalize(std::move(out));
}

inline std::vector<Term> apply_cx(std::span<const Term> terms, std::size_t control, std::size_t target) {
    std::vector<Term> out(terms.begin(), terms.end());
    for (auto &t : out) {
        if (t.key.test(control)) {
            t.key.flip(target);
        }
    }
    return canonicalize(std::move(out));
}

/// Probability that `slot` reads 1.
inline double prob_one(std::span<const Term> terms, std::size_t slot) {
    double p0 = 0, p1 = 0;
    for (const auto &t : terms) {
        (t.key.test(slot) ? p1 : p0) += std::norm(t.amp);
    }
    return p1 / (p0 + p1);
}

inline Bit sample_bit(double p_one, RandomSource &rng) {
    return rng.uniform() < 1.0 - p_one ? 0 : 1;
}

/// Keeps the branch where `slot` reads `value`, removes the slot and renormalizes.
inline std::vector<Term> collapse(std::span<const Term> terms, std::size_t slot, Bit value) {
    std::vector<Term> out;
    double s = 0;
    for (const auto &t : terms) {
        if (t.key.test(slot) == static_cast<bool>(value)) {
            out.push_back({t.key.erased(slot), t.amp});
            s += std::norm(t.amp);
        }
    }
    const double scale = 1.0 / std::sqrt(s);
    for (auto &t : out) {
        t.amp *= scale;
    }
    return out;
}

inline std::vector<QubitLabel> without(std::vector<QubitLabel> labels, std::size_t slot) {
    labels.erase(labels.begin() + static_cast<std::ptrdiff_t>(slot));
    return labels;
}

inline Matrix2 hadamard() {
    const double h = 1.0 / std::sqrt(2.0);
    return {{{h, h}, {h, -h}}};
}

/// Unitary taking |a⟩ → |0⟩ and |b⟩ → |1⟩.
inline Matrix2 basis_change(const OrthonormalPair &basis) {
    return {{{std::conj(basis.a[0]), std::conj(basis.a[1])}, {std::conj(basis.b[0]), std::conj(basis.b[1])}}};
}

}  // namespace detail

inline StateVector prepare_z(Bit bit, QubitLabel label = "q0") {
    BasisKey k;
    k.set(0, bit != 0);
    return StateVector::from_terms({std::move(label)}, {{k, 1.0}});
}

/// Arbitrary normalized single-qubit state. Quantum parties only.
inline StateVector prepare_qubit(const Qubit &amps, QubitLabel label = "q0") {
    return StateVector({std::move(label)}, {amps[0], amps[1]});
}

inline StateVector prepare_bell(BellKind kind, QubitLabel first = "q0", QubitLabel second = "q1") {
    const auto a = bell_amplitudes(kind);
    return StateVector({std::move(first), std::move(second)}, {a.begin(), a.end()});
}

/// (|psi1⟩|a⟩ + |psi2⟩|b⟩)/√2 over (first, second, controller).
inline StateVector prepare_ghz_like(BellKind psi1, BellKind psi2, const OrthonormalPair &controller_basis,
                                    QubitLabel first = "q0", QubitLabel second = "q1",
                                    QubitLabel controller = "q2") {
    if (psi1 == psi2) {
        throw Error(ErrorCode::EqualBellKinds, "GHZ-like state needs two different Bell states");
    }
    if (!controller_basis.is_orthonormal()) {
        throw Error(ErrorCode::NonOrthonormalBasis, "controller basis is not orthonormal");
    }
    const auto b1 = bell_amplitudes(psi1);
    const auto b2 = bell_amplitudes(psi2);
    const double h = 1.0 / std::sqrt(2.0);
    std::vector<Amplitude> amps(8);
    for (std::size_t pair = 0; pair < 4; ++pair) {
        for (std::size_t c = 0; c < 2; ++c) {
            amps[pair * 2 + c] = h * (b1[pair] * controller_basis.a[c] + b2[pair] * controller_basis.b[c]);
        }
    }
    return StateVector({std::move(first), std::move(second), std::move(controller)}, amps);
}

inline StateVector apply_cnot(const StateVector &state, const QubitLabel &control, const QubitLabel &target) {
    const std::size_t c = state.slot_of(control);
    const std::size_t t = state.slot_of(target);
    if (c == t) {
        throw Error(ErrorCode::InvalidState, "CNOT control and target are the same qubit");
    }
    return StateVector::from_terms(state.labels(), detail::apply_cx(state.terms(), c, t));
}

inline StateVector apply_x(const StateVector &state, const QubitLabel &target) {
    return StateVector::from_terms(state.labels(),
                                   detail::apply_1q(state.terms(), state.slot_of(target), {{{0, 1}, {1, 0}}}));
}

inline MeasurementRecord measure_z(const StateVector &state, const QubitLabel &qubit, RandomSource &rng) {
    const std::size_t slot = state.slot_of(qubit);
    const double p1 = detail::prob_one(state.terms(), slot);
    const Bit bit = detail::sample_bit(p1, rng);
    MeasurementRecord rec{bit, bit ? p1 : 1.0 - p1, std::nullopt};
    if (state.num_qubits() > 1) {
        rec.post_state =
            StateVector::from_terms(detail::without(state.labels(), slot), detail::collapse(state.terms(), slot, bit));
    }
    return rec;
}

/// Bell-basis measurement of (q1, q2): CNOT q1→q2 and H on q1 map
/// ψ+, ψ−, φ+, φ− onto |00⟩, |10⟩, |01⟩, |11⟩.
inline MeasurementRecord measure_bell(const StateVector &state, const QubitLabel &q1, const QubitLabel &q2,
                                      RandomSource &rng) {
    const std::size_t s1 = state.slot_of(q1);
    const std::size_t s2 = state.slot_of(q2);
    if (s1 == s2) {
        throw Error(ErrorCode::InvalidState, "Bell measurement needs two distinct qubits");
    }
    auto terms = detail::apply_1q(detail::apply_cx(state.terms(), s1, s2), s1, detail::hadamard());

    const double p_sign = detail::prob_one(terms, s1);
    const Bit sign = detail::sample_bit(p_sign, rng);
    terms = detail::collapse(terms, s1, sign);
    const std::size_t s2_after = s2 > s1 ? s2 - 1 : s2;
    const double p_parity = detail::prob_one(terms, s2_after);
    const Bit parity = detail::sample_bit(p_parity, rng);

    MeasurementRecord rec{bell_from(parity, sign),
                          (sign ? p_sign : 1.0 - p_sign) * (parity ? p_parity : 1.0 - p_parity), std::nullopt};
    if (state.num_qubits() > 2) {
        terms = detail::collapse(terms, s2_after, parity);
        auto labels = detail::without(detail::without(state.labels(), std::max(s1, s2)), std::min(s1, s2));
        rec.post_state = StateVector::from_terms(std::move(labels), std::move(terms));
    }
    return rec;
}

inline MeasurementRecord measure_ab(const StateVector &state, const QubitLabel &qubit, const OrthonormalPair &basis,
                                    RandomSource &rng) {
    if (!basis.is_orthonormal()) {
        throw Error(ErrorCode::NonOrthonormalBasis, "measurement basis is not orthonormal");
    }
    const std::size_t slot = state.slot_of(qubit);
    auto terms = detail::apply_1q(state.terms(), slot, detail::basis_change(basis));
    const double p_b = detail::prob_one(terms, slot);
    const Bit bit = detail::sample_bit(p_b, rng);
    MeasurementRecord rec{bit ? AbOutcome::B : AbOutcome::A, bit ? p_b : 1.0 - p_b, std::nullopt};
    if (state.num_qubits() > 1) {
        rec.post_state =
            StateVector::from_terms(detail::without(state.labels(), slot), detail::collapse(terms, slot, bit));
    }
    return rec;
}

/// Tensor product s1 ⊗ s2; s1's qubits keep the leading (most significant) slots.
inline StateVector merge_registers(const StateVector &s1, const StateVector &s2) {
    const std::size_t n1 = s1.num_qubits();
    if (n1 + s2.num_qubits() > kMaxQubits) {
        throw Error(ErrorCode::RegisterTooLarge, "merged register would hold " +
                                                     std::to_string(n1 + s2.num_qubits()) + " qubits");
    }
    std::vector<QubitLabel> labels = s1.labels();
    labels.insert(labels.end(), s2.labels().begin(), s2.labels().end());
    std::vector<Term> terms;
    terms.reserve(s1.terms().size() * s2.terms().size());
    for (const auto &a : s1.terms()) {
        for (const auto &b : s2.terms()) {
            Term t{a.key, a.amp * b.amp};
            for (std::size_t j = 0; j < s2.num_qubits(); ++j) {
                if (b.key.test(j)) {
                    t.key.set(n1 + j, true);
                }
            }
            terms.push_back(t);
        }
    }
    return StateVector::from_terms(std::move(labels), std::move(terms));
}

/// If the qubit at `slot` is unentangled with the rest of the register,
/// returns (its state, the remainder's terms).
inline std::optional<std::pair<Qubit, std::vector<Term>>> try_factor_slot(std::span<const Term> terms,
                                                                          std::size_t slot) {
    struct Entry {
        BasisKey rest;
        Qubit amps;
    };
    std::vector<Entry> groups;
    {
        std::vector<std::pair<BasisKey, std::pair<int, Amplitude>>> flat;
        flat.reserve(terms.size());
        for (const auto &t : terms) {
            BasisKey rest = t.key;
            rest.set(slot, false);
            flat.push_back({rest, {t.key.test(slot) ? 1 : 0, t.amp}});
        }
        std::sort(flat.begin(), flat.end(), [](const auto &x, const auto &y) { return x.first < y.first; });
        for (const auto &[rest, va] : flat) {
            if (groups.empty() || !(groups.back().rest == rest)) {
                groups.push_back({rest, {0.0, 0.0}});
            }
            groups.back().amps[va.first] += va.second;
        }
    }
    const Entry *ref = &groups.front();
    double best = 0;
    for (const auto &g : groups) {
        const double w = std::norm(g.amps[0]) + std::norm(g.amps[1]);
        if (w > best) {
            best = w;
            ref = &g;
        }
    }
    const double len = std::sqrt(best);
    const Qubit q{ref->amps[0] / len, ref->amps[1] / len};
    for (const auto &g : groups) {
        if (std::abs(g.amps[0] * q[1] - g.amps[1] * q[0]) > 1e-10) {
            return std::nullopt;
        }
    }
    std::vector<Term> rest;
    rest.reserve(groups.size());
    for (const auto &g : groups) {
        rest.push_back({g.rest.erased(slot), std::conj(q[0]) * g.amps[0] + std::conj(q[1]) * g.amps[1]});
    }
    return std::pair{q, std::move(rest)};
}

/// Splits off every qubit that is in a product state with the rest. The
/// entangled remainder (if any qubits remain) comes first, followed by one
/// single-qubit register per separable qubit.
inline std::vector<StateVector> split_separable(const StateVector &state) {
    std::vector<StateVector> singles;
    std::vector<QubitLabel> labels = state.labels();
    std::vector<Term> terms(state.terms().begin(), state.terms().end());
    std::size_t slot = 0;
    while (labels.size() > 1 && slot < labels.size()) {
        auto factored = try_factor_slot(terms, slot);
        if (!factored) {
            ++slot;
            continue;
        }
        singles.push_back(StateVector({labels[slot]}, {factored->first[0], factored->first[1]}));
        labels.erase(labels.begin() + static_cast<std::ptrdiff_t>(slot));
        terms = std::move(factored->second);
    }
    std::vector<StateVector> out;
    out.reserve(singles.size() + 1);
    out.push_back(StateVector::from_terms(std::move(labels), std::move(terms)));
    for (auto &s : singles) {
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace semiq::qsim
