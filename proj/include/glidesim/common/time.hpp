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
#include <string_view>

namespace glidesim {

/// Simulation time and durations are integer seconds.
using SimTime = std::int64_t;
using Duration = std::int64_t;

inline constexpr Duration kMinute = 60;
inline constexpr Duration kHour = 3600;
inline constexpr Duration kDay = 86400;

/// Parses "45", "45s", "30m", "12h", "30d" (optionally fractional, e.g. "1.5h").
/// Throws std::invalid_argument on malformed or negative input.
Duration parse_duration(std::string_view text);

/// Shortest exact unit form: 86400 -> "1d", 90 -> "90s".
std::string format_duration(Duration d);

inline constexpr double to_hours(std::int64_t seconds) {
    return static_cast<double>(seconds) / static_cast<double>(kHour);
}

}  // namespace glidesim
