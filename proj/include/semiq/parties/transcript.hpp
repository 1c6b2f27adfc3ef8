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
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>
#include "semiq/error.hpp"

namespace semiq::parties {

struct Event {
    std::size_t index = 0;
    std::string actor;
    std::string action;
    nlohmann::json payload = nlohmann::json::object();

    friend bool operator==(const Event &, const Event &) = default;
};

/// Ordered, reliable log of everything that happened in a session. Public
/// announcements on the authenticated classical channel are recorded here
/// too, and the adversary reads them through a const reference.
class Transcript {
   public:
    Transcript() = default;

    /// Rebuilds a transcript from parsed events; indices must run 0, 1, 2, ...
    static Transcript from_events(std::vector<Event> events) {
        for (std::size_t i = 0; i < events.size(); ++i) {
            if (events[i].index != i) {
                throw Error(ErrorCode::InvalidConfig, "transcript event indices are not sequential");
            }
        }
        Transcript t;
        t.events_ = std::move(events);
        return t;
    }

    const Event &record(std::string actor, std::string action, nlohmann::json payload = nlohmann::json::object()) {
        events_.push_back({events_.size(), std::move(actor), std::move(action), std::move(payload)});
        return events_.back();
    }

    const std::vector<Event> &events() const noexcept {
        return events_;
    }

    const Event *find(std::string_view action) const {
        for (const auto &e : events_) {
            if (e.action == action) {
                return &e;
            }
        }
        return nullptr;
    }

    std::optional<std::size_t> index_of(std::string_view action) const {
        const Event *e = find(action);
        return e ? std::optional<std::size_t>(e->index) : std::nullopt;
    }

    std::size_t count(std::string_view action) const {
        std::size_t n = 0;
        for (const auto &e : events_) {
            n += e.action == action ? 1 : 0;
        }
        return n;
    }

    friend bool operator==(const Transcript &, const Transcript &) = default;

   private:
    std::vector<Event> events_;
};

}  // namespace semiq::parties
