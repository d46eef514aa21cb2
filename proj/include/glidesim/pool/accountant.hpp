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

#include <cstdint>
#include <string>

#include "glidesim/common/time.hpp"

namespace glidesim::pool {

struct PriorityConfig {
    double floor = 0.5;
    Duration half_life = 24 * kHour;
};

/// Fair-share state of one submitter. Lower effective priority is better.
struct UserRecord {
    std::string user;
    /// Core-hours consumed, derived from the exact integer core-seconds below.
    double accumulated_usage = 0.0;
    std::int64_t accumulated_core_seconds = 0;
    double real_priority = 0.5;
    double priority_factor = 1.0;
    Duration half_life = 24 * kHour;

    double effective_priority() const { return real_priority * priority_factor; }
    void add_usage(std::int64_t core_seconds);
};

/// Moves real priority toward `current_usage` (cores in use): the gap halves
/// every half-life. Result is clamped below at `floor`. Throws
/// std::invalid_argument when dt <= 0.
UserRecord decay_user_priority(UserRecord record, double current_usage, Duration dt, double floor = 0.5);

}  // namespace glidesim::pool
