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
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>
#include "semiq/analysis/trials.hpp"

namespace semiq::analysis {

inline constexpr int kSchemaVersion = 1;

/// Column order of the stats CSV.
inline constexpr std::string_view kCsvHeader =
    "protocol,attack,n,m,trials,abort_rate,key_match_rate,eve_accuracy,eve_position_id_rate,eta";

enum class StatsFormat : std::uint8_t { Json, Csv };

/// Rates are printed with six digits after the point.
inline std::string format_rate(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

namespace detail {

inline std::string inferences_to_string(const std::vector<adversary::EveBit> &v) {
    std::string s;
    for (const auto &b : v) {
        s.push_back(!b.known ? '?' : (b.value ? '1' : '0'));
    }
    return s;
}

inline std::vector<adversary::EveBit> inferences_from_string(std::string_view s) {
    std::vector<adversary::EveBit> v;
    for (char c : s) {
        if (c == '?') {
            v.push_back({});
        } else if (c == '0' || c == '1') {
            v.push_back({static_cast<Bit>(c - '0'), true});
        } else {
            throw Error(ErrorCode::Validation, "bad inference string");
        }
    }
    return v;
}

inline nlohmann::json parse_json(std::string_view text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw Error(ErrorCode::Validation, std::string("malformed JSON: ") + e.what());
    }
}

template <typename F>
auto guarded(F &&f) -> decltype(f()) {
    try {
        return f();
    } catch (const nlohmann::json::exception &e) {
        throw Error(ErrorCode::Validation, std::string("unexpected document shape: ") + e.what());
    }
}

inline void check_schema(const nlohmann::json &j, std::string_view name) {
    if (j.value("schema", "") != name || j.value("version", 0) != kSchemaVersion) {
        throw Error(ErrorCode::Validation, "expected " + std::string(name) + " v" + std::to_string(kSchemaVersion));
    }
}

}  // namespace detail

inline nlohmann::json transcript_json(const protocols::SessionOutcome &o) {
    nlohmann::json j;
    j["schema"] = "semiq.transcript";
    j["version"] = kSchemaVersion;
    j["aborted"] = o.aborted;
    j["abort_reason"] = protocols::to_string(o.abort_reason);
    j["error_rate_observed"] = o.error_rate_observed;
    j["keys"] = nlohmann::json::object();
    for (const auto &[role, bits] : o.keys) {
        j["keys"][role] = semiq::to_string(bits);
    }
    j["eve_inferences"] = detail::inferences_to_string(o.eve_inferences);
    j["eve_target"] = semiq::to_string(o.eve_target);
    j["counters"] = {
        {"decoys_checked", o.decoys_checked},         {"decoy_mismatches", o.decoy_mismatches},
        {"compared_bits", o.compared_bits},           {"matching_bits", o.matching_bits},
        {"encoded_positions", o.encoded_positions},   {"identified_positions", o.identified_positions},
    };
    if (o.raw) {
        j["raw"] = {{"K_A", semiq::to_string(o.raw->K_A)}, {"K_B", semiq::to_string(o.raw->K_B)}, {"r_A", semiq::to_string(o.raw->r_A)},
                    {"r_B", semiq::to_string(o.raw->r_B)}, {"K_f", semiq::to_string(o.raw->K_f)}};
    }
    j["primitives_used"] = o.primitives_used;
    auto events = nlohmann::json::array();
    for (const auto &e : o.transcript.events()) {
        events.push_back({{"index", e.index}, {"actor", e.actor}, {"action", e.action}, {"payload", e.payload}});
    }
    j["events"] = std::move(events);
    return j;
}

inline std::string emit_transcript(const protocols::SessionOutcome &o) {
    return transcript_json(o).dump(2) + "\n";
}

inline protocols::SessionOutcome parse_transcript(std::string_view text) {
    const auto j = detail::parse_json(text);
    detail::check_schema(j, "semiq.transcript");
    return detail::guarded([&] {
        protocols::SessionOutcome o;
        o.aborted = j.at("aborted").get<bool>();
        o.abort_reason = protocols::abort_reason_from_string(j.at("abort_reason").get<std::string>());
        o.error_rate_observed = j.at("error_rate_observed").get<double>();
        for (const auto &[role, bits] : j.at("keys").items()) {
            o.keys[role] = bits_from_string(bits.get<std::string>());
        }
        o.eve_inferences = detail::inferences_from_string(j.at("eve_inferences").get<std::string>());
        o.eve_target = bits_from_string(j.at("eve_target").get<std::string>());
        const auto &c = j.at("counters");
        o.decoys_checked = c.at("decoys_checked").get<std::size_t>();
        o.decoy_mismatches = c.at("decoy_mismatches").get<std::size_t>();
        o.compared_bits = c.at("compared_bits").get<std::size_t>();
        o.matching_bits = c.at("matching_bits").get<std::size_t>();
        o.encoded_positions = c.at("encoded_positions").get<std::size_t>();
        o.identified_positions = c.at("identified_positions").get<std::size_t>();
        if (j.contains("raw")) {
            const auto &r = j.at("raw");
            auto field = [&](const char *k) { return bits_from_string(r.at(k).get<std::string>()); };
            o.raw = protocols::RawKeys{field("K_A"), field("K_B"), field("r_A"), field("r_B"), field("K_f")};
        }
        o.primitives_used = j.at("primitives_used").get<std::map<std::string, std::set<std::string>>>();
        std::vector<parties::Event> events;
        for (const auto &e : j.at("events")) {
            events.push_back({e.at("index").get<std::size_t>(), e.at("actor").get<std::string>(),
                              e.at("action").get<std::string>(), e.at("payload")});
        }
        o.transcript = parties::Transcript::from_events(std::move(events));
        return o;
    });
}

inline nlohmann::json stats_json(const TrialStats &s) {
    const auto &c = s.counters;
    auto rate = [](double v) { return nlohmann::json::parse(format_rate(v)); };
    return {
        {"schema", "semiq.stats"},
        {"version", kSchemaVersion},
        {"protocol", s.protocol},
        {"attack", s.attack},
        {"n", s.n},
        {"m", s.m},
        {"trials", c.trials},
        {"abort_rate", rate(s.abort_rate())},
        {"key_match_rate", rate(s.key_match_rate())},
        {"eve_accuracy", rate(s.eve_accuracy())},
        {"eve_position_id_rate", rate(s.eve_position_id_rate())},
        {"decoy_detection_rate", rate(s.decoy_detection_rate())},
        {"eta", rate(s.eta())},
        {"half_width_99",
         {{"abort_rate", rate(s.abort_rate_hw())},
          {"key_match_rate", rate(s.key_match_rate_hw())},
          {"eve_accuracy", rate(s.eve_accuracy_hw())},
          {"eve_position_id_rate", rate(s.eve_position_id_rate_hw())},
          {"decoy_detection_rate", rate(s.decoy_detection_rate_hw())}}},
        {"counters",
         {{"trials", c.trials},
          {"failures", c.failures},
          {"aborts", c.aborts},
          {"compared_bits", c.compared_bits},
          {"matching_bits", c.matching_bits},
          {"eve_bits", c.eve_bits},
          {"eve_half_points", c.eve_half_points},
          {"encoded_positions", c.encoded_positions},
          {"identified_positions", c.identified_positions},
          {"decoys_checked", c.decoys_checked},
          {"decoy_mismatches", c.decoy_mismatches}}},
    };
}

inline std::string stats_csv(const TrialStats &s) {
    std::ostringstream out;
    out << kCsvHeader << "\n"
        << s.protocol << "," << s.attack << "," << s.n << "," << s.m << "," << s.counters.trials << ","
        << format_rate(s.abort_rate()) << "," << format_rate(s.key_match_rate()) << ","
        << format_rate(s.eve_accuracy()) << "," << format_rate(s.eve_position_id_rate()) << ","
        << format_rate(s.eta()) << "\n";
    return out.str();
}

inline std::string emit_stats(const TrialStats &s, StatsFormat f) {
    return f == StatsFormat::Json ? stats_json(s).dump(2) + "\n" : stats_csv(s);
}

/// Rebuilds stats from the JSON form. Rates are recomputed from the
/// integer counters, so nothing is lost to rounding.
inline TrialStats parse_stats_json(std::string_view text) {
    const auto j = detail::parse_json(text);
    detail::check_schema(j, "semiq.stats");
    return detail::guarded([&] {
        TrialStats s;
        s.protocol = j.at("protocol").get<std::string>();
        s.attack = j.at("attack").get<std::string>();
        s.n = j.at("n").get<std::uint64_t>();
        s.m = j.at("m").get<std::uint64_t>();
        const auto &c = j.at("counters");
        auto get = [&](const char *k) { return c.at(k).get<std::uint64_t>(); };
        s.counters = {get("trials"),         get("failures"),          get("aborts"),
                      get("compared_bits"),  get("matching_bits"),     get("eve_bits"),
                      get("eve_half_points"), get("encoded_positions"), get("identified_positions"),
                      get("decoys_checked"), get("decoy_mismatches")};
        return s;
    });
}

/// One data row of the stats CSV, as printed.
struct StatsRow {
    std::string protocol;
    std::string attack;
    std::uint64_t n = 0;
    std::uint64_t m = 0;
    std::uint64_t trials = 0;
    double abort_rate = 0;
    double key_match_rate = 0;
    double eve_accuracy = 0;
    double eve_position_id_rate = 0;
    double eta = 0;

    std::string to_csv() const {
        std::ostringstream out;
        out << kCsvHeader << "\n"
            << protocol << "," << attack << "," << n << "," << m << "," << trials << "," << format_rate(abort_rate)
            << "," << format_rate(key_match_rate) << "," << format_rate(eve_accuracy) << ","
            << format_rate(eve_position_id_rate) << "," << format_rate(eta) << "\n";
        return out.str();
    }
};

inline StatsRow parse_stats_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string header, row;
    if (!std::getline(in, header) || header != kCsvHeader || !std::getline(in, row)) {
        throw Error(ErrorCode::Validation, "stats CSV must be the header followed by one row");
    }
    std::vector<std::string> cells;
    std::stringstream ss(row);
    for (std::string cell; std::getline(ss, cell, ',');) {
        cells.push_back(cell);
    }
    if (cells.size() != 10) {
        throw Error(ErrorCode::Validation, "stats CSV row must have 10 cells");
    }
    try {
        return {cells[0],
                cells[1],
                std::stoull(cells[2]),
                std::stoull(cells[3]),
                std::stoull(cells[4]),
                std::stod(cells[5]),
                std::stod(cells[6]),
                std::stod(cells[7]),
                std::stod(cells[8]),
                std::stod(cells[9])};
    } catch (const std::logic_error &) {
        throw Error(ErrorCode::Validation, "non-numeric cell in stats CSV");
    }
}

/// Writes `content` to `path` through a sibling temp file and a rename, so
/// readers never see a partial file.
inline void write_atomic(const std::filesystem::path &path, std::string_view content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) {
            throw Error(ErrorCode::IoError, "cannot open " + tmp.string() + " for writing");
        }
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        f.flush();
        if (!f) {
            throw Error(ErrorCode::IoError, "write to " + tmp.string() + " failed");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error(ErrorCode::IoError, "cannot move output into place at " + path.string());
    }
}

}  // namespace semiq::analysis
