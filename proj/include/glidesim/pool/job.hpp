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
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "glidesim/common/time.hpp"
#include "glidesim/matchlang/ad.hpp"

namespace glidesim::pool {

enum class JobStatus { Idle, Matched, Running, Completed, Held };

std::string_view to_string(JobStatus s);

/// Forward path IDLE->MATCHED->RUNNING->COMPLETED, any->HELD, HELD->IDLE,
/// plus the two requeue edges MATCHED->IDLE (lost claim race) and
/// RUNNING->IDLE (preempted).
bool valid_transition(JobStatus from, JobStatus to);

class InvalidTransition : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct JobState {
    std::string id;
    matchlang::Ad ad{matchlang::AdKind::Job};
    std::string owner;
    std::string schedd;
    JobStatus status = JobStatus::Idle;
    std::uint64_t submit_order = 0;
    SimTime submitted_at = 0;
    /// Jobs sharing a cluster id are indistinguishable to every requirements
    /// and rank expression in the pool (see Autoclusterer).
    std::optional<std::uint64_t> autocluster;

    // Set while RUNNING.
    std::string claim_id;
    std::string slot;
    SimTime started_at = 0;

    void transition(JobStatus to);

    int request_cpus() const;
    int request_gpus() const;
};

/// Throws std::invalid_argument unless requestcpus >= 1, requestgpus >= 0 and
/// the ad carries `requirements`.
void validate_job(const JobState& job);

}  // namespace glidesim::pool
