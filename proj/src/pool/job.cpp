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

#include "glidesim/pool/job.hpp"

namespace glidesim::pool {

std::string_view to_string(JobStatus s) {
    switch (s) {
        case JobStatus::Idle: return "IDLE";
        case JobStatus::Matched: return "MATCHED";
        case JobStatus::Running: return "RUNNING";
        case JobStatus::Completed: return "COMPLETED";
        case JobStatus::Held: return "HELD";
    }
    return "?";
}

bool valid_transition(JobStatus from, JobStatus to) {
    if (to == JobStatus::Held) return from != JobStatus::Held;
    switch (from) {
        case JobStatus::Idle: return to == JobStatus::Matched;
        case JobStatus::Matched: return to == JobStatus::Running || to == JobStatus::Idle;
        case JobStatus::Running: return to == JobStatus::Completed || to == JobStatus::Idle;
        case JobStatus::Held: return to == JobStatus::Idle;
        case JobStatus::Completed: return false;
    }
    return false;
}

void JobState::transition(JobStatus to) {
    if (!valid_transition(status, to)) {
        throw InvalidTransition("job " + id + ": " + std::string(to_string(status)) + " -> " +
                                std::string(to_string(to)));
    }
    status = to;
}

int JobState::request_cpus() const { return static_cast<int>(ad.get_integer("requestcpus").value_or(1)); }

int JobState::request_gpus() const { return static_cast<int>(ad.get_integer("requestgpus").value_or(0)); }

void validate_job(const JobState& job) {
    if (job.id.empty()) throw std::invalid_argument("job without id");
    if (job.request_cpus() < 1) throw std::invalid_argument("job " + job.id + ": requestcpus must be >= 1");
    if (job.request_gpus() < 0) throw std::invalid_argument("job " + job.id + ": requestgpus must be >= 0");
    if (auto why = matchlang::check_required_attributes(job.ad)) {
        throw std::invalid_argument("job " + job.id + ": " + *why);
    }
}

}  // namespace glidesim::pool
