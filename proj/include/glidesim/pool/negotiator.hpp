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

#include "glidesim/pool/accountant.hpp"
#include "glidesim/pool/job.hpp"
#include "glidesim/pool/slot.hpp"

namespace glidesim::pool {

/// One submitter's idle jobs in submission order.
struct OwnerQueue {
    std::string owner;
    std::vector<const JobState*> jobs;
};

struct Match {
    std::string job_id;
    std::string slot_name;
    std::string schedd;
    std::uint64_t cycle = 0;

    friend bool operator==(const Match&, const Match&) = default;
};

/// Hamilton apportionment of `total` seats by `weights`: floors first, then
/// one extra seat each to the largest fractional remainders. Remainder ties
/// go to the lower index.
std::vector<int> largest_remainder(int total, std::span<const double> weights);

/// One negotiation cycle.
///
/// Submitters are served in ascending effective priority (ties by name).
/// Each spin of the pie apportions the matchable idle slots plus the slots the
/// active submitters already hold (`running`) in proportion to
/// 1/effective priority, and lets each submitter take its apportioned share
/// minus what it holds. Within a submitter, jobs go in submission order and
/// each takes the best remaining slot by rank. Spins repeat, dropping
/// submitters with nothing left that matches, until no job/slot pair
/// matches. When every active submitter already holds its share, the idle
/// slots alone are apportioned.
///
/// Users missing from `users` get a default record. Jobs with an
/// `autocluster` id share match results within the cycle.
std::vector<Match> negotiate(std::uint64_t cycle, std::span<const OwnerQueue> idle_jobs,
                             std::span<const SlotState* const> idle_slots,
                             const std::map<std::string, UserRecord>& users,
                             const std::map<std::string, int>& running = {});

}  // namespace glidesim::pool
