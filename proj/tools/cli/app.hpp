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

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "semiq/semiq.hpp"

namespace semiq::cli {

struct CliConfig {
    analysis::ProtocolKind protocol = analysis::ProtocolKind::Sqka;
    std::size_t n = 8;
    std::optional<std::size_t> m;
    adversary::AttackKind attack = adversary::AttackKind::None;
    std::uint64_t trials = 1;
    std::uint64_t seed = 0;
    double threshold = 0.0;
    bool permutation = true;
    bool commitments = true;
    std::optional<std::string> out;
    analysis::StatsFormat format = analysis::StatsFormat::Csv;
    /// Alice's message first, then Bob's (sqd only).
    std::vector<Bits> messages;

    analysis::TrialTemplate to_template() const {
        analysis::TrialTemplate t;
        t.kind = protocol;
        adversary::AttackStrategy a;
        a.kind = attack;
        t.sqka.n = t.cdssqc.n = t.sqd.n = n;
        t.sqka.m = t.cdssqc.m = t.sqd.m = m;
        t.sqka.attack = t.cdssqc.attack = t.sqd.attack = a;
        t.sqka.abort_threshold = t.cdssqc.abort_threshold = t.sqd.abort_threshold = threshold;
        t.sqka.permutation_enabled = t.cdssqc.permutation_enabled = t.sqd.permutation_enabled = permutation;
        t.sqka.commitments_enabled = commitments;
        if (!messages.empty()) {
            t.cdssqc.message = messages[0];
            t.sqd.alice_message = messages[0];
        }
        if (messages.size() > 1) {
            t.sqd.bob_message = messages[1];
        }
        return t;
    }
};

/// Thrown for --help; carries the text to print.
struct HelpRequested {
    std::string text;
};

using EnvLookup = std::function<std::optional<std::string>(const char *)>;

inline std::optional<std::string> process_env(const char *name) {
    const char *v = std::getenv(name);
    if (v == nullptr) {
        return std::nullopt;
    }
    return std::string(v);
}

inline std::uint64_t parse_u64(const std::string &s, const char *what) {
    std::size_t used = 0;
    std::uint64_t v = 0;
    try {
        if (!s.empty() && s[0] == '-') {
            throw std::invalid_argument("negative");
        }
        v = std::stoull(s, &used, 0);
    } catch (const std::logic_error &) {
        used = 0;
    }
    if (used == 0 || used != s.size()) {
        throw Error(ErrorCode::Validation, std::string(what) + " is not an unsigned 64-bit integer: '" + s + "'");
    }
    return v;
}

/// Parses and validates the command line. Throws Error with code Usage for
/// malformed invocations and Validation for well-formed but inconsistent
/// ones; both map to exit status 2.
inline CliConfig parse_args(const std::vector<std::string> &args, const EnvLookup &env = process_env) {
    CLI::App app{"Simulate semi-quantum key agreement, controlled communication and dialogue protocols.", "semiq"};
    std::string protocol = "sqka", attack = "none", permutation = "on", commitments = "on", format = "csv";
    std::string seed_text, messages;
    std::size_t n = 8;
    std::optional<std::size_t> m;
    std::uint64_t trials = 1;
    double threshold = 0.0;
    std::string out;

    app.add_option("--protocol", protocol, "Protocol to run")
        ->check(CLI::IsMember({"sqka", "sqkd", "cdssqc-ghz", "cdssqc-switch", "sqd"}));
    app.add_option("--n", n, "Key or message length in bits");
    app.add_option("--m", m, "Decoy count (default 3n)");
    app.add_option("--attack", attack, "Eavesdropping strategy")
        ->check(CLI::IsMember({"none", "cnot", "intercept-resend", "measure-resend"}));
    app.add_option("--trials", trials, "Number of sessions; 1 prints the transcript");
    app.add_option("--seed", seed_text, "Master seed (falls back to SEMIQ_SEED, then 0)");
    app.add_option("--threshold", threshold, "Abort when the check error rate exceeds this");
    app.add_option("--permutation", permutation, "Sequence permutation countermeasure")
        ->check(CLI::IsMember({"on", "off"}));
    app.add_option("--commitments", commitments, "Raw-key commitments (key agreement)")
        ->check(CLI::IsMember({"on", "off"}));
    app.add_option("--out", out, "Write output here instead of stdout");
    app.add_option("--format", format, "Batch statistics format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--messages", messages, "Hex messages: alice[,bob]");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp &) {
        throw HelpRequested{app.help()};
    } catch (const CLI::ParseError &e) {
        throw Error(ErrorCode::Usage, e.what());
    }

    CliConfig c;
    c.protocol = analysis::protocol_from_string(protocol);
    c.n = n;
    c.m = m;
    c.attack = adversary::attack_from_string(attack);
    c.trials = trials;
    c.threshold = threshold;
    c.permutation = permutation == "on";
    c.commitments = commitments == "on";
    c.format = format == "json" ? analysis::StatsFormat::Json : analysis::StatsFormat::Csv;
    if (!out.empty()) {
        c.out = out;
    }
    if (!seed_text.empty()) {
        c.seed = parse_u64(seed_text, "--seed");
    } else if (auto e = env("SEMIQ_SEED"); e && !e->empty()) {
        c.seed = parse_u64(*e, "SEMIQ_SEED");
    }

    if (c.n == 0) {
        throw Error(ErrorCode::Validation, "--n must be at least 1");
    }
    if (c.m && *c.m == 0) {
        throw Error(ErrorCode::Validation, "--m must be at least 1");
    }
    if (c.trials == 0) {
        throw Error(ErrorCode::Validation, "--trials must be at least 1");
    }
    if (!(c.threshold >= 0.0 && c.threshold <= 1.0)) {
        throw Error(ErrorCode::Validation, "--threshold must lie in [0,1]");
    }
    if (!messages.empty()) {
        std::vector<std::string> parts;
        std::stringstream ss(messages);
        for (std::string p; std::getline(ss, p, ',');) {
            parts.push_back(p);
        }
        if (messages.back() == ',') {
            parts.emplace_back();
        }
        std::size_t want = 0;
        switch (c.protocol) {
            case analysis::ProtocolKind::Sqd: want = 2; break;
            case analysis::ProtocolKind::CdssqcGhz:
            case analysis::ProtocolKind::CdssqcSwitch: want = 1; break;
            default:
                throw Error(ErrorCode::Validation, "--messages applies to sqd and cdssqc protocols only");
        }
        if (parts.size() != want) {
            throw Error(ErrorCode::Validation,
                        "--messages expects " + std::to_string(want) + " comma-separated hex string(s)");
        }
        for (const auto &p : parts) {
            c.messages.push_back(bits_from_hex(p, c.n));
        }
    }

    const std::vector<adversary::Leg> legs =
        (c.protocol == analysis::ProtocolKind::CdssqcGhz || c.protocol == analysis::ProtocolKind::CdssqcSwitch)
            ? std::vector<adversary::Leg>{adversary::Leg::Forward, adversary::Leg::Return,
                                          adversary::Leg::ControllerToReceiver}
            : std::vector<adversary::Leg>{adversary::Leg::Forward, adversary::Leg::Return};
    try {
        c.to_template().attack().validate(legs);
    } catch (const Error &e) {
        throw Error(ErrorCode::Validation, e.what());
    }
    return c;
}

/// Runs the configured session or batch and returns the rendered output.
inline std::string render(const CliConfig &c) {
    const auto t = c.to_template();
    if (c.trials == 1) {
        return analysis::emit_transcript(analysis::run_session(t, derive_seed(c.seed, 0)));
    }
    return analysis::emit_stats(analysis::run_trials(t, c.trials, c.seed), c.format);
}

/// Whole program: returns the process exit status.
inline int main(const std::vector<std::string> &args, std::ostream &out, std::ostream &err,
                const EnvLookup &env = process_env) {
    CliConfig c;
    try {
        c = parse_args(args, env);
    } catch (const HelpRequested &h) {
        out << h.text;
        return 0;
    } catch (const Error &e) {
        err << "semiq: " << e.what() << "\n";
        return 2;
    }
    try {
        const std::string text = render(c);
        if (c.out) {
            analysis::write_atomic(*c.out, text);
        } else {
            out << text;
        }
    } catch (const Error &e) {
        err << "semiq: " << e.what() << "\n";
        return e.code() == ErrorCode::IoError ? 1 : 2;
    }
    return 0;
}

}  // namespace semiq::cli
