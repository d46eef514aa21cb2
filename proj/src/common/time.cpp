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

#include "glidesim/common/time.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace glidesim {

Duration parse_duration(std::string_view text) {
    if (text.empty()) {
        throw std::invalid_argument("empty duration");
    }
    Duration unit = 1;
    std::string_view number = text;
    switch (text.back()) {
        case 's': unit = 1; number.remove_suffix(1); break;
        case 'm': unit = kMinute; number.remove_suffix(1); break;
        case 'h': unit = kHour; number.remove_suffix(1); break;
        case 'd': unit = kDay; number.remove_suffix(1); break;
        default: break;
    }
    double value = 0;
    auto [ptr, ec] = std::from_chars(number.data(), number.data() + number.size(), value);
    if (ec != std::errc{} || ptr != number.data() + number.size() || number.empty()) {
        throw std::invalid_argument("malformed duration '" + std::string(text) + "'");
    }
    if (!std::isfinite(value) || value < 0) {
        throw std::invalid_argument("negative or non-finite duration '" + std::string(text) + "'");
    }
    return static_cast<Duration>(std::llround(value * static_cast<double>(unit)));
}

std::string format_duration(Duration d) {
    if (d != 0 && d % kDay == 0) return std::to_string(d / kDay) + "d";
    if (d != 0 && d % kHour == 0) return std::to_string(d / kHour) + "h";
    if (d != 0 && d % kMinute == 0) return std::to_string(d / kMinute) + "m";
    return std::to_string(d) + "s";
}

}  // namespace glidesim
