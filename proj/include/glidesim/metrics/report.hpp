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
#include "glidesim/metrics/usage.hpp"

namespace glidesim::metrics {

struct Percentiles {
    std::size_t count = 0;
    std::int64_t p50 = 0;
    std::int64_t p90 = 0;
    std::int64_t p99 = 0;
    std::int64_t max = 0;
};

/// Nearest-rank percentiles of `values` (sorted internally). All zero when empty.
Percentiles percentiles(std::vector<std::int64_t> values);

struct SiteTotals {
    std::string site;
    int cores = 0;
    int gpus = 0;
    std::int64_t core_seconds = 0;
    std::int64_t gpu_seconds = 0;
    /// Pilot lifetime x pilot cpus, clipped at the horizon.
    std::int64_t pilot_core_seconds = 0;
};

struct RunReport {
    gridsim::TraceHeader header;
    double bucket_hours = 0;
    std::vector<UsageBucket> buckets;
    std::vector<SiteTotals> sites;
    std::int64_t core_seconds = 0;
    std::int64_t gpu_seconds = 0;
    std::int64_t pilot_core_seconds = 0;
    Percentiles submit_to_start;  // first start of each job
    Percentiles start_to_done;    // completed intervals
    std::vector<gridsim::CacheCounters> caches;
    gridsim::Summary summary;
};

/// Pure function of the trace.
RunReport make_report(const gridsim::Trace& trace, double bucket_hours);

/// Text form (layout in docs/formats.md).
std::string format_report(const RunReport& report);
/// "site,windowStart,coreHours,gpuHours" table.
std::string format_usage_csv(const std::vector<UsageBucket>& buckets);

/// Shortest decimal that round-trips the double.
std::string format_real(double v);

}  // namespace glidesim::metrics
