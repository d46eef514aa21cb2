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

#include <filesystem>
#include <string>
#include <string_view>

#include "glidesim/gridsim/scenario.hpp"

namespace glidesim::gridsim {

struct LoadedScenario {
    Scenario scenario;
    /// FNV-1a of the canonical JSON form, 16 hex digits.
    std::string hash;
};

/// Parses a JSON scenario (format in docs/scenario.md) and validates it.
/// Throws ScenarioError on malformed JSON, unknown keys, bad values or failed
/// validation.
LoadedScenario parse_scenario(std::string_view json_text);
LoadedScenario load_scenario(const std::filesystem::path& path);

}  // namespace glidesim::gridsim
