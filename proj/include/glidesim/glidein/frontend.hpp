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
#include <span>
#include <string>
#include <vector>

#include "glidesim/glidein/entry.hpp"
#include "glidesim/pool/job.hpp"

namespace glidesim::glidein {

/// Live pilots at one entry. `queued` covers pilots not yet advertised
/// (requested, CE-queued, bootstrapping); `idle` are advertised pilots
/// without a job.
struct PilotCounts {
    int idle = 0;
    int queued = 0;
    int alive = 0;
    friend bool operator==(const PilotCounts&, const PilotCounts&) = default;
};

struct PilotRequest {
    std::string entry;
    int count = 0;
    std::uint64_t cycle = 0;
    friend bool operator==(const PilotRequest&, const PilotRequest&) = default;
};

/// Pilot request for an entry given how many idle jobs match it:
///
///     desired = ceil(matchable * fraction) + (matchable > 0 ? min_idle : 0)
///     request = clamp(desired - idle - queued, 0,
///                     min(max_pilots - alive, max_idle_pilots - idle - queued))
int pressure(const EntryPoint& entry, int matchable, const PilotCounts& counts, const FrontendConfig& frontend);

/// Number of `idle_jobs` that symmetric-match the entry's synthetic slot.
/// Jobs sharing an autocluster id are evaluated once.
int count_matchable(const EntryPoint& entry, const FrontendConfig& frontend,
                    std::span<const pool::JobState* const> idle_jobs);

PilotRequest compute_pressure(const EntryPoint& entry, std::span<const pool::JobState* const> idle_jobs,
                              const PilotCounts& counts, const FrontendConfig& frontend, std::uint64_t cycle);

/// One request per entry, in entry order. A job counts toward every entry it
/// matches. Entries missing from `counts` have no pilots.
std::vector<PilotRequest> frontend_cycle(std::span<const EntryPoint> entries,
                                         std::span<const pool::JobState* const> idle_jobs,
                                         const std::map<std::string, PilotCounts>& counts,
                                         const FrontendConfig& frontend, std::uint64_t cycle);

}  // namespace glidesim::glidein
