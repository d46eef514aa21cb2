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
#include <map>
#include <string>

#include "glidesim/gridsim/scenario.hpp"
#include "glidesim/gridsim/trace.hpp"

namespace glidesim::gridsim {

struct RunOptions {
    std::uint64_t seed = 1;
    Duration until = 30 * kDay;
    /// Written into the trace header.
    std::string scenario_hash = "-";
};

struct RunResult {
    Trace trace;
    /// Core-seconds charged to each user by the accountant.
    std::map<std::string, std::int64_t> user_core_seconds;
    /// Final real priority per user.
    std::map<std::string, double> user_priority;
};

/// Runs the scenario to `until` and returns the full trace. The result
/// depends only on (scenario, seed, until). Throws ScenarioError if the
/// scenario does not validate.
RunResult simulate(const Scenario& scenario, const RunOptions& options);

inline Trace run(const Scenario& scenario, const RunOptions& options) { return simulate(scenario, options).trace; }

}  // namespace glidesim::gridsim
