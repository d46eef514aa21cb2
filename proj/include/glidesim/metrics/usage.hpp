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
#include <vector>

#include "glidesim/gridsim/trace.hpp"

namespace glidesim::metrics {

/// One RUNNING interval of a job on a slot, recovered from the trace.
struct JobInterval {
    std::string job;
    std::string site;
    std::string claim;
    SimTime start = 0;
    SimTime end = 0;
    int cpus = 0;
    int gpus = 0;
    /// Ended by JOB_DONE (false: preempted or still running at the horizon).
    bool completed = false;
    /// Still running at the horizon; `end` is the horizon.
    bool open = false;
};

/// Intervals in JOB_START order. Open intervals are clipped at the trace's
/// `until`.
std::vector<JobInterval> running_intervals(const gridsim::Trace& trace);

struct UsageBucket {
    std::string site;
    SimTime window_start = 0;
    double window_hours = 0.0;
    std::int64_t core_seconds = 0;
    std::int64_t gpu_seconds = 0;
    double core_hours() const { return to_hours(core_seconds); }
    double gpu_hours() const { return to_hours(gpu_seconds); }
};

/// Busy core- and GPU-seconds per site and fixed-width window over
/// [0, until). Intervals are split at window boundaries in whole seconds, so
/// bucket sums equal interval totals exactly. Sites come in trace-header
/// order, windows in time order. Throws std::invalid_argument unless
/// bucket_hours is at least one second.
std::vector<UsageBucket> aggregate_usage(const gridsim::Trace& trace, double bucket_hours);

/// Average concurrent cores over a window. Throws std::invalid_argument
/// unless window_hours > 0.
double avg_cores(double core_hours, double window_hours);

/// baseline / accelerated. Throws std::invalid_argument unless accelerated > 0.
double speedup(double baseline, double accelerated);

}  // namespace glidesim::metrics
