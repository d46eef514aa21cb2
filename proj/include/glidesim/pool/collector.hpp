// Copyright 2026 The glidesim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "glidesim/common/time.hpp"
#include "glidesim/matchlang/ad.hpp"
#include "glidesim/matchlang/expr.hpp"

namespace glidesim::pool {

struct CollectorConfig {
    Duration update_interval = 5 * kMinute;
    int missed_updates_limit = 3;
};

/// Registry of advertised ads keyed by (name, kind). Iteration and query
/// results are in name order.
class Collector {
public:
    explicit Collector(CollectorConfig config = {}) : config_(config) {}

    const CollectorConfig& config() const { return config_; }

    /// Upserts the ad and stamps it heard at `now`. Throws matchlang::InvalidAd
    /// when the ad has no text `name`.
    void advertise(matchlang::Ad ad, SimTime now);

    /// Heartbeat without content change. Returns false if the ad is unknown.
    bool refresh(matchlang::AdKind kind, const std::string& name, SimTime now);

    bool invalidate(matchlang::AdKind kind, const std::string& name);

    /// Removes every ad silent for longer than missed_updates_limit x update_interval.
    std::vector<matchlang::Ad> expire(SimTime now);

    /// Ads for which `constraint` (SELF = ad, no TARGET) is Boolean(true).
    std::vector<matchlang::Ad> query(const matchlang::Expr& constraint) const;

    const matchlang::Ad* find(matchlang::AdKind kind, const std::string& name) const;
    std::optional<SimTime> last_heard(matchlang::AdKind kind, const std::string& name) const;
    std::size_t size() const { return ads_.size(); }

    /// Whole registry in the ad text form.
    std::string dump() const;

private:
    struct Entry {
        matchlang::Ad ad;
        SimTime last_heard;
    };
    using Key = std::pair<std::string, matchlang::AdKind>;

    CollectorConfig config_;
    std::map<Key, Entry> ads_;
};

}  // namespace glidesim::pool
