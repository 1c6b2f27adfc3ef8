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
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <stdexcept>
#include <string_view>
#include <thread>
#include <vector>

#include "semiq/analysis/efficiency.hpp"
#include "semiq/protocols.hpp"

namespace semiq::analysis {

enum class ProtocolKind : std::uint8_t { Sqka, Sqkd, CdssqcGhz, CdssqcSwitch, Sqd };

constexpr std::string_view to_string(ProtocolKind k) noexcept {
    switch (k) {
        case ProtocolKind::Sqka: return "sqka";
        case ProtocolKind::Sqkd: return "sqkd";
        case ProtocolKind::CdssqcGhz: return "cdssqc-ghz";
        case ProtocolKind::CdssqcSwitch: return "cdssqc-switch";
        case ProtocolKind::Sqd: return "sqd";
    }
    return "?";
}

inline ProtocolKind protocol_from_string(std::string_view s) {
    for (ProtocolKind k : {ProtocolKind::Sqka, ProtocolKind::Sqkd, ProtocolKind::CdssqcGhz,
                           ProtocolKind::CdssqcSwitch, ProtocolKind::Sqd}) {
        if (to_string(k) == s) {
            return k;
        }
    }
    throw Error(ErrorCode::Validation, "unknown protocol '" + std::string(s) + "'");
}

/// A session configuration with the seed left to the driver. Only the
/// config matching `kind` is used.
struct TrialTemplate {
    ProtocolKind kind = ProtocolKind::Sqka;
    protocols::SqkaConfig sqka;
    protocols::CdssqcConfig cdssqc;
    protocols::SqdConfig sqd;

    std::size_t n() const {
        switch (kind) {
            case ProtocolKind::Sqka:
            case ProtocolKind::Sqkd: return sqka.n;
            case ProtocolKind::CdssqcGhz:
            case ProtocolKind::CdssqcSwitch: return cdssqc.n;
            case ProtocolKind::Sqd: return sqd.n;
        }
        return 0;
    }

    std::size_t m() const {
        switch (kind) {
            case ProtocolKind::Sqka:
            case ProtocolKind::Sqkd: return protocols::resolve_m(sqka.n, sqka.m);
            case ProtocolKind::CdssqcGhz:
            case ProtocolKind::CdssqcSwitch: return protocols::resolve_m(cdssqc.n, cdssqc.m);
            case ProtocolKind::Sqd: return protocols::resolve_m(sqd.n, sqd.m);
        }
        return 0;
    }

    const adversary::AttackStrategy &attack() const {
        switch (kind) {
            case ProtocolKind::Sqka:
            case ProtocolKind::Sqkd: return sqka.attack;
            case ProtocolKind::CdssqcGhz:
            case ProtocolKind::CdssqcSwitch: return cdssqc.attack;
            case ProtocolKind::Sqd: break;
        }
        return sqd.attack;
    }
};

inline protocols::SessionOutcome run_session(const TrialTemplate &t, std::uint64_t seed) {
    switch (t.kind) {
        case ProtocolKind::Sqka: {
            auto c = t.sqka;
            c.seed = seed;
            return protocols::run_sqka(c);
        }
        case ProtocolKind::Sqkd: {
            auto c = t.sqka;
            c.seed = seed;
            return protocols::run_sqkd(c);
        }
        case ProtocolKind::CdssqcGhz: {
            auto c = t.cdssqc;
            c.seed = seed;
            return protocols::run_cdssqc_ghz(c);
        }
        case ProtocolKind::CdssqcSwitch: {
            auto c = t.cdssqc;
            c.seed = seed;
            return protocols::run_cdssqc_switch(c);
        }
        case ProtocolKind::Sqd: {
            auto c = t.sqd;
            c.seed = seed;
            return protocols::run_sqd(c);
        }
    }
    throw Error(ErrorCode::InvalidConfig, "unknown protocol kind");
}

/// Integer tallies over a batch. Addition is commutative and associative,
/// so the fold order never changes the result.
struct TrialCounters {
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
    std::uint64_t aborts = 0;
    std::uint64_t compared_bits = 0;
    std::uint64_t matching_bits = 0;
    std::uint64_t eve_bits = 0;
    /// Eve's score in half points: 2 right, 1 unknown, 0 wrong.
    std::uint64_t eve_half_points = 0;
    std::uint64_t encoded_positions = 0;
    std::uint64_t identified_positions = 0;
    std::uint64_t decoys_checked = 0;
    std::uint64_t decoy_mismatches = 0;

    TrialCounters &operator+=(const TrialCounters &o) {
        trials += o.trials;
        failures += o.failures;
        aborts += o.aborts;
        compared_bits += o.compared_bits;
        matching_bits += o.matching_bits;
        eve_bits += o.eve_bits;
        eve_half_points += o.eve_half_points;
        encoded_positions += o.encoded_positions;
        identified_positions += o.identified_positions;
        decoys_checked += o.decoys_checked;
        decoy_mismatches += o.decoy_mismatches;
        return *this;
    }

    void add(const protocols::SessionOutcome &o) {
        ++trials;
        if (o.aborted) {
            ++aborts;
        }
        compared_bits += o.compared_bits;
        matching_bits += o.matching_bits;
        for (std::size_t k = 0; k < o.eve_inferences.size() && k < o.eve_target.size(); ++k) {
            ++eve_bits;
            const auto &g = o.eve_inferences[k];
            eve_half_points += !g.known ? 1 : (g.value == o.eve_target[k] ? 2 : 0);
        }
        encoded_positions += o.encoded_positions;
        identified_positions += o.identified_positions;
        decoys_checked += o.decoys_checked;
        decoy_mismatches += o.decoy_mismatches;
    }

    friend bool operator==(const TrialCounters &, const TrialCounters &) = default;
};

/// 99% two-sided normal quantile.
inline constexpr double kZ99 = 2.5758293035489004;

/// Normal-approximation half-width of a binomial proportion.
inline double half_width(double p, std::uint64_t count) {
    if (count == 0) {
        return 0.0;
    }
    return kZ99 * std::sqrt(p * (1.0 - p) / static_cast<double>(count));
}

inline double ratio(std::uint64_t num, std::uint64_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

struct TrialStats {
    std::string protocol;
    std::string attack;
    std::uint64_t n = 0;
    std::uint64_t m = 0;
    TrialCounters counters;

    std::uint64_t trials() const {
        return counters.trials;
    }
    double abort_rate() const {
        return ratio(counters.aborts, counters.trials);
    }
    /// Over the bits the parties compared in completed sessions.
    double key_match_rate() const {
        return ratio(counters.matching_bits, counters.compared_bits);
    }
    /// Unknown guesses count as half right.
    double eve_accuracy() const {
        return ratio(counters.eve_half_points, 2 * counters.eve_bits);
    }
    double eve_position_id_rate() const {
        return ratio(counters.identified_positions, counters.encoded_positions);
    }
    double decoy_detection_rate() const {
        return ratio(counters.decoy_mismatches, counters.decoys_checked);
    }
    double eta() const {
        return boost::rational_cast<double>(cost_row(protocol).eta());
    }

    double abort_rate_hw() const {
        return half_width(abort_rate(), counters.trials);
    }
    double key_match_rate_hw() const {
        return half_width(key_match_rate(), counters.compared_bits);
    }
    double eve_accuracy_hw() const {
        return half_width(eve_accuracy(), counters.eve_bits);
    }
    double eve_position_id_rate_hw() const {
        return half_width(eve_position_id_rate(), counters.encoded_positions);
    }
    double decoy_detection_rate_hw() const {
        return half_width(decoy_detection_rate(), counters.decoys_checked);
    }

    friend bool operator==(const TrialStats &, const TrialStats &) = default;
};

/// Tallies trials [begin, end) of a batch. Session errors are counted as
/// failures and never escape.
inline TrialCounters run_range(const TrialTemplate &t, std::uint64_t master_seed, std::uint64_t begin,
                               std::uint64_t end) {
    TrialCounters c;
    for (std::uint64_t i = begin; i < end; ++i) {
        try {
            c.add(run_session(t, derive_seed(master_seed, i)));
        } catch (const std::exception &) {
            ++c.trials;
            ++c.failures;
        }
    }
    return c;
}

/// Runs `trials` independent sessions with seeds derive_seed(master_seed, i).
/// The result does not depend on `threads`.
inline TrialStats run_trials(const TrialTemplate &t, std::uint64_t trials, std::uint64_t master_seed,
                             unsigned threads = 1) {
    if (trials == 0) {
        throw Error(ErrorCode::ZeroCount, "trials must be at least 1");
    }
    TrialStats stats;
    stats.protocol = std::string(to_string(t.kind));
    stats.attack = std::string(adversary::to_string(t.attack().kind));
    stats.n = t.n();
    stats.m = t.m();
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::min<std::uint64_t>(trials, 64))));
    if (threads == 1) {
        stats.counters = run_range(t, master_seed, 0, trials);
        return stats;
    }
    std::vector<TrialCounters> parts(threads);
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < threads; ++k) {
        const std::uint64_t b = trials * k / threads;
        const std::uint64_t e = trials * (k + 1) / threads;
        pool.emplace_back([&, k, b, e] { parts[k] = run_range(t, master_seed, b, e); });
    }
    for (auto &th : pool) {
        th.join();
    }
    for (const auto &p : parts) {
        stats.counters += p;
    }
    return stats;
}

}  // namespace semiq::analysis
