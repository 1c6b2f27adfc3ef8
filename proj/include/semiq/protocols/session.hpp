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
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "semiq/adversary/eavesdropper.hpp"
#include "semiq/parties/party.hpp"
#include "semiq/protocols/outcome.hpp"

namespace semiq::protocols {

using adversary::Wire;
using parties::Capability;
using parties::Party;
using parties::Permutation;
using qsim::BellKind;
using qsim::QubitLabel;

/// Substream ids under a session seed.
inline constexpr std::uint64_t kAliceStream = 1;
inline constexpr std::uint64_t kBobStream = 2;
inline constexpr std::uint64_t kCharlieStream = 3;
inline constexpr std::uint64_t kEveStream = 4;
inline constexpr std::uint64_t kCommitStream = 5;

/// (wire position, original position) for one qubit of a permuted sequence.
using WirePair = std::pair<std::size_t, std::size_t>;

inline nlohmann::json to_json(const std::vector<WirePair> &pairs) {
    auto out = nlohmann::json::array();
    for (const auto &[w, o] : pairs) {
        out.push_back({w, o});
    }
    return out;
}

inline std::size_t resolve_m(std::size_t n, std::optional<std::size_t> m) {
    if (n == 0) {
        throw Error(ErrorCode::InvalidConfig, "n must be at least 1");
    }
    const std::size_t v = m.value_or(3 * n);
    if (v == 0) {
        throw Error(ErrorCode::InvalidConfig, "m must be at least 1");
    }
    return v;
}

inline void check_threshold(double t) {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw Error(ErrorCode::InvalidConfig, "abort threshold must lie in [0,1]");
    }
}

inline void check_length(const Bits &b, std::size_t n, const char *what) {
    if (b.size() != n) {
        throw Error(ErrorCode::InvalidConfig, std::string(what) + " must have " + std::to_string(n) + " bits");
    }
}

/// State shared by every runner: one lab, one public transcript, one Eve.
class Session {
   public:
    Session(std::uint64_t seed, const adversary::AttackStrategy &attack, const std::vector<adversary::Leg> &legs)
        : seed_(seed),
          eve(attack, lab, RandomSource(derive_seed(derive_seed(seed, kEveStream), attack.eve_rng_seed))) {
        attack.validate(legs);
    }
    Session(const Session &) = delete;
    Session &operator=(const Session &) = delete;

    Party party(std::string name, Capability cap, std::uint64_t stream) {
        return Party(std::move(name), cap, lab, RandomSource(derive_seed(seed_, stream)));
    }

    std::uint64_t seed() const noexcept {
        return seed_;
    }

    /// Records an abort and hands back the outcome ready to return.
    SessionOutcome abort(AbortReason reason) {
        out.aborted = true;
        out.abort_reason = reason;
        out.keys.clear();
        return finish();
    }

    SessionOutcome finish() {
        out.transcript = transcript;
        for (const auto &c : lab.calls()) {
            out.primitives_used[c.actor].insert(std::string(qsim::to_string(c.primitive)));
        }
        return std::move(out);
    }

   private:
    std::uint64_t seed_;

   public:
    qsim::QuantumLab lab;
    parties::Transcript transcript;
    adversary::Eavesdropper eve;
    SessionOutcome out;
};

/// What a classical party did to a received wire before sending it back.
struct Encoding {
    Wire returned;
    Permutation perm = Permutation::identity(0);
    /// Original positions, ascending; key bit k lives at `encoded[k]`.
    std::vector<std::size_t> encoded;
    std::vector<std::size_t> decoys;
    /// Z outcome at each encoded position, in key order.
    Bits r;

    std::vector<WirePair> encoded_pairs() const {
        return pairs(encoded);
    }
    std::vector<WirePair> decoy_pairs() const {
        return pairs(decoys);
    }

   private:
    std::vector<WirePair> pairs(const std::vector<std::size_t> &origs) const {
        std::vector<WirePair> out;
        out.reserve(origs.size());
        for (std::size_t o : origs) {
            out.emplace_back(perm.target(o), o);
        }
        return out;
    }
};

/// Measure-or-reflect step of the classical party: at n random positions
/// measure Z to get r and resend |r ^ secret_k>, reflect the other m, then
/// shuffle the whole sequence (or not, when permutation is switched off).
inline Encoding encode_and_permute(Party &p, const Wire &received, const Bits &secret, std::size_t m, bool permute) {
    const std::size_t n = secret.size();
    const auto actions = parties::choose_actions(n, m, p.rng());
    Encoding enc;
    Wire seq;
    seq.reserve(received.size());
    for (std::size_t i = 0; i < received.size(); ++i) {
        if (actions[i] == parties::ClassicalAction::MeasureAndPrepare) {
            const Bit r = p.measure_z(received[i]);
            seq.push_back(p.prepare_z(static_cast<Bit>(r ^ secret[enc.encoded.size()])));
            enc.encoded.push_back(i);
            enc.r.push_back(r);
        } else {
            seq.push_back(p.reflect(received[i]));
            enc.decoys.push_back(i);
        }
    }
    enc.perm = permute ? parties::random_permutation(seq.size(), p.rng()) : Permutation::identity(seq.size());
    enc.returned = p.permute(enc.perm, seq);
    return enc;
}

struct CheckResult {
    std::size_t checked = 0;
    std::size_t mismatches = 0;

    double rate() const noexcept {
        return checked == 0 ? 0.0 : static_cast<double>(mismatches) / static_cast<double>(checked);
    }
};

/// Check outcome strictly above the threshold aborts. At threshold 0 the
/// abort carries the check's own reason; a nonzero threshold that is still
/// exceeded reports ThresholdExceeded.
inline std::optional<AbortReason> judge(const CheckResult &c, double threshold, AbortReason primary) {
    if (c.rate() > threshold) {
        return threshold == 0.0 ? primary : AbortReason::ThresholdExceeded;
    }
    return std::nullopt;
}

/// Bell-measures each decoy against its partner and compares with the
/// expected Bell state.
inline CheckResult bell_check(Party &q, const std::vector<WirePair> &decoys, const Wire &returned,
                              const std::function<QubitLabel(std::size_t)> &partner,
                              const std::function<BellKind(std::size_t)> &expected) {
    CheckResult c;
    for (const auto &[w, o] : decoys) {
        const BellKind k = q.measure_bell(partner(o), returned[w]);
        ++c.checked;
        if (k != expected(o)) {
            ++c.mismatches;
        }
    }
    return c;
}

inline void record_check(SessionOutcome &out, const CheckResult &c) {
    out.decoys_checked += c.checked;
    out.decoy_mismatches += c.mismatches;
    out.error_rate_observed = c.rate();
}

inline void count_agreement(SessionOutcome &out, const Bits &a, const Bits &b) {
    const std::size_t n = std::min(a.size(), b.size());
    out.compared_bits += std::max(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        out.matching_bits += a[i] == b[i] ? 1 : 0;
    }
}

/// Eve's guess for each secret bit, read off the return-wire position the
/// public disclosure ties that bit to.
inline std::vector<adversary::EveBit> eve_guesses(const adversary::Eavesdropper &eve,
                                                  const std::vector<WirePair> &encoded) {
    std::vector<adversary::EveBit> g;
    g.reserve(encoded.size());
    for (const auto &[w, o] : encoded) {
        g.push_back(eve.guess_at(w));
    }
    return g;
}

/// Fills Eve's inference and position-identification counters.
inline void score_eve(SessionOutcome &out, const adversary::Eavesdropper &eve, const std::vector<WirePair> &encoded,
                      std::vector<adversary::EveBit> guesses, Bits target) {
    if (!eve.active()) {
        return;
    }
    out.eve_inferences = std::move(guesses);
    out.eve_target = std::move(target);
    if (!eve.state().inferred_positions.empty()) {
        for (const auto &[w, o] : encoded) {
            ++out.encoded_positions;
            if (eve.position_at(w) == adversary::PositionGuess::Measured) {
                ++out.identified_positions;
            }
        }
    }
}

}  // namespace semiq::protocols
