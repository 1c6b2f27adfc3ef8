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
#include <string>
#include <utility>
#include <vector>

#include "semiq/parties/capability.hpp"
#include "semiq/parties/permutation.hpp"
#include "semiq/parties/transcript.hpp"
#include "semiq/qsim/lab.hpp"
#include "semiq/random.hpp"

namespace semiq::parties {

/// A protocol participant. Every action is checked against the party's
/// capability before it reaches the lab, so a classical party physically
/// cannot issue anything beyond Z preparation and measurement.
class Party {
   public:
    Party(std::string name, Capability capability, qsim::QuantumLab &lab, RandomSource rng)
        : name_(std::move(name)), capability_(capability), lab_(&lab), rng_(std::move(rng)) {
    }

    const std::string &name() const noexcept {
        return name_;
    }
    Capability capability() const noexcept {
        return capability_;
    }
    RandomSource &rng() noexcept {
        return rng_;
    }

    qsim::QubitLabel prepare_z(Bit bit) {
        restrict(capability_, Operation::PrepareZ);
        return lab_->prepare_z(name_, bit, name_ + ".z");
    }

    qsim::QubitLabel prepare_qubit(const qsim::Qubit &amps) {
        restrict(capability_, Operation::PrepareQubit);
        return lab_->prepare_qubit(name_, amps, name_ + ".q");
    }

    /// Returns (home, travel) labels of a fresh Bell pair.
    std::pair<qsim::QubitLabel, qsim::QubitLabel> prepare_bell(qsim::BellKind kind) {
        restrict(capability_, Operation::PrepareBell);
        return lab_->prepare_bell(name_, kind, name_ + ".H", name_ + ".T");
    }

    std::array<qsim::QubitLabel, 3> prepare_ghz_like(qsim::BellKind psi1, qsim::BellKind psi2,
                                                     const qsim::OrthonormalPair &basis) {
        restrict(capability_, Operation::PrepareGhzLike);
        const std::string p1 = name_ + ".g1", p2 = name_ + ".g2", p3 = name_ + ".g3";
        return lab_->prepare_ghz_like(name_, psi1, psi2, basis, {p1, p2, p3});
    }

    void cnot(const qsim::QubitLabel &control, const qsim::QubitLabel &target) {
        restrict(capability_, Operation::ApplyCnot);
        lab_->apply_cnot(name_, control, target);
    }

    void x(const qsim::QubitLabel &target) {
        restrict(capability_, Operation::ApplyX);
        lab_->apply_x(name_, target);
    }

    Bit measure_z(const qsim::QubitLabel &q) {
        restrict(capability_, Operation::MeasureZ);
        return lab_->measure_z(name_, q, rng_);
    }

    qsim::BellKind measure_bell(const qsim::QubitLabel &q1, const qsim::QubitLabel &q2) {
        restrict(capability_, Operation::MeasureBell);
        return lab_->measure_bell(name_, q1, q2, rng_);
    }

    qsim::AbOutcome measure_ab(const qsim::QubitLabel &q, const qsim::OrthonormalPair &basis) {
        restrict(capability_, Operation::MeasureAb);
        return lab_->measure_ab(name_, q, basis, rng_);
    }

    /// Sends a qubit back untouched.
    qsim::QubitLabel reflect(qsim::QubitLabel q) const {
        restrict(capability_, Operation::Reflect);
        return q;
    }

    template <typename T>
    std::vector<T> permute(const Permutation &p, const std::vector<T> &seq) const {
        restrict(capability_, Operation::Permute);
        return p.apply(seq);
    }

    const Event &announce(Transcript &t, std::string action, nlohmann::json payload = nlohmann::json::object()) const {
        restrict(capability_, Operation::ClassicalMessage);
        return t.record(name_, std::move(action), std::move(payload));
    }

   private:
    std::string name_;
    Capability capability_;
    qsim::QuantumLab *lab_;
    RandomSource rng_;
};

}  // namespace semiq::parties
