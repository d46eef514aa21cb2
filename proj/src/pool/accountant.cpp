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

#include "glidesim/pool/accountant.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace glidesim::pool {

void UserRecord::add_usage(std::int64_t core_seconds) {
    accumulated_core_seconds += core_seconds;
    accumulated_usage = to_hours(accumulated_core_seconds);
}

UserRecord decay_user_priority(UserRecord record, double current_usage, Duration dt, double floor) {
    if (dt <= 0) throw std::invalid_argument("priority decay needs dt > 0");
    const double keep = std::pow(0.5, static_cast<double>(dt) / static_cast<double>(record.half_life));
    const double next = current_usage + (record.real_priority - current_usage) * keep;
    record.real_priority = std::max(floor, next);
    return record;
}

}  // namespace glidesim::pool
