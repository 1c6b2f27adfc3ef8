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
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "semiq/qsim/operations.hpp"

namespace semiq::qsim {

/// Every simulator primitive a party can invoke. The lab logs one entry per
/// invocation so tests can audit what each actor actually did.
enum class Primitive : std::uint8_t {
    PrepareZ,
    PrepareQubit,
    PrepareBell,
    PrepareGhzLike,
    ApplyCnot,
    ApplyX,
    MeasureZ,
    MeasureBell,
    MeasureAb,
};

constexpr std::string_view to_string(Primitive p) noexcept {
    switch (p) {
        case Primitive::PrepareZ: return "prepare_z";
        case Primitive::PrepareQubit: return "prepare_qubit";
        case Primitive::PrepareBell: return "prepare_bell";
        case Primitive::PrepareGhzLike: return "prepare_ghz_like";
        case Primitive::ApplyCnot: return "apply_cnot";
        case Primitive::ApplyX: return "apply_x";
        case Primitive::MeasureZ: return "measure_z";
        case Primitive::MeasureBell: return "measure_bell";
        case Primitive::MeasureAb: return "measure_ab";
    }
    return "?";
}

struct CallRecord {
    std::string actor;
    Primitive primitive;
};

/// The physical world of one session: every live qubit, grouped into
/// registers that are merged when a gate couples them and split again when
/// measurement leaves qubits in product states.
///
/// Qubit labels are global and unique; measured qubits disappear.
class QuantumLab {
   public:
    /// A label no other qubit in this lab has used.
    QubitLabel fresh_label(std::string_view prefix) {
        return QubitLabel(std::string(prefix) + "#" + std::to_string(next_label_++));
    }

    bool contains(const QubitLabel &label) const {
        return owner_.contains(label);
    }

    std::size_t live_qubits() const noexcept {
        return owner_.size();
    }

    std::size_t register_count() const noexcept {
        return registers_.size();
    }

    const StateVector &register_of(const QubitLabel &label) const {
        return registers_.at(owner(label));
    }

    const std::vector<CallRecord> &calls() const noexcept {
        return calls_;
    }

    QubitLabel prepare_z(std::string_view actor, Bit bit, std::string_view prefix) {
        log(actor, Primitive::PrepareZ);
        auto label = fresh_label(prefix);
        insert(qsim::prepare_z(bit, label));
        return label;
    }

    QubitLabel prepare_qubit(std::string_view actor, const Qubit &amps, std::string_view prefix) {
        log(actor, Primitive::PrepareQubit);
        auto label = fresh_label(prefix);
        insert(qsim::prepare_qubit(amps, label));
        return label;
    }

    std::pair<QubitLabel, QubitLabel> prepare_bell(std::string_view actor, BellKind kind, std::string_view first_prefix,
                                                   std::string_view second_prefix) {
        log(actor, Primitive::PrepareBell);
        auto a = fresh_label(first_prefix);
        auto b = fresh_label(second_prefix);
        insert(qsim::prepare_bell(kind, a, b));
        return {a, b};
    }

    std::array<QubitLabel, 3> prepare_ghz_like(std::string_view actor, BellKind psi1, BellKind psi2,
                                               const OrthonormalPair &basis, std::array<std::string_view, 3> prefixes) {
        log(actor, Primitive::PrepareGhzLike);
        std::array<QubitLabel, 3> labels{fresh_label(prefixes[0]), fresh_label(prefixes[1]),
                                         fresh_label(prefixes[2])};
        insert(qsim::prepare_ghz_like(psi1, psi2, basis, labels[0], labels[1], labels[2]));
        return labels;
    }

    void apply_cnot(std::string_view actor, const QubitLabel &control, const QubitLabel &target) {
        log(actor, Primitive::ApplyCnot);
        const std::uint64_t rc = owner(control);
        const std::uint64_t rt = owner(target);
        if (rc != rt) {
            StateVector merged = merge_registers(registers_.at(rc), registers_.at(rt));
            erase_register(rc);
            erase_register(rt);
            insert(std::move(merged));
        }
        const std::uint64_t r = owner(control);
        registers_.at(r) = qsim::apply_cnot(registers_.at(r), control, target);
    }

    void apply_x(std::string_view actor, const QubitLabel &target) {
        log(actor, Primitive::ApplyX);
        const std::uint64_t r = owner(target);
        registers_.at(r) = qsim::apply_x(registers_.at(r), target);
    }

    Bit measure_z(std::string_view actor, const QubitLabel &qubit, RandomSource &rng) {
        log(actor, Primitive::MeasureZ);
        const std::uint64_t r = owner(qubit);
        auto rec = qsim::measure_z(registers_.at(r), qubit, rng);
        replace(r, {qubit}, std::move(rec.post_state));
        return std::get<Bit>(rec.outcome);
    }

    /// Measures two qubits in the Bell basis, merging their registers first
    /// if they are not already entangled with each other.
    BellKind measure_bell(std::string_view actor, const QubitLabel &q1, const QubitLabel &q2, RandomSource &rng) {
        log(actor, Primitive::MeasureBell);
        std::uint64_t r1 = owner(q1);
        const std::uint64_t r2 = owner(q2);
        if (r1 != r2) {
            StateVector merged = merge_registers(registers_.at(r1), registers_.at(r2));
            erase_register(r1);
            erase_register(r2);
            r1 = insert(std::move(merged));
        }
        auto rec = qsim::measure_bell(registers_.at(r1), q1, q2, rng);
        replace(r1, {q1, q2}, std::move(rec.post_state));
        return std::get<BellKind>(rec.outcome);
    }

    AbOutcome measure_ab(std::string_view actor, const QubitLabel &qubit, const OrthonormalPair &basis,
                         RandomSource &rng) {
        log(actor, Primitive::MeasureAb);
        const std::uint64_t r = owner(qubit);
        auto rec = qsim::measure_ab(registers_.at(r), qubit, basis, rng);
        replace(r, {qubit}, std::move(rec.post_state));
        return std::get<AbOutcome>(rec.outcome);
    }

   private:
    std::uint64_t owner(const QubitLabel &label) const {
        auto it = owner_.find(label);
        if (it == owner_.end()) {
            throw Error(ErrorCode::UnknownLabel, "no live qubit '" + label.str() + "'");
        }
        return it->second;
    }

    void log(std::string_view actor, Primitive p) {
        calls_.push_back({std::string(actor), p});
    }

    std::uint64_t insert(StateVector s) {
        const std::uint64_t id = next_register_++;
        for (const auto &l : s.labels()) {
            if (owner_.contains(l)) {
                throw Error(ErrorCode::DuplicateLabel, "qubit '" + l.str() + "' already exists");
            }
            owner_[l] = id;
        }
        registers_.emplace(id, std::move(s));
        return id;
    }

    void erase_register(std::uint64_t id) {
        for (const auto &l : registers_.at(id).labels()) {
            owner_.erase(l);
        }
        registers_.erase(id);
    }

    /// Swaps register `id` for its post-measurement remainder, splitting off
    /// qubits the measurement left unentangled.
    void replace(std::uint64_t id, const std::vector<QubitLabel> &measured, std::optional<StateVector> post) {
        for (const auto &l : measured) {
            owner_.erase(l);
        }
        erase_register(id);
        if (!post) {
            return;
        }
        for (auto &part : split_separable(*post)) {
            insert(std::move(part));
        }
    }

    std::map<std::uint64_t, StateVector> registers_;
    std::unordered_map<QubitLabel, std::uint64_t> owner_;
    std::vector<CallRecord> calls_;
    std::uint64_t next_register_ = 0;
    std::uint64_t next_label_ = 0;
};

}  // namespace semiq::qsim
