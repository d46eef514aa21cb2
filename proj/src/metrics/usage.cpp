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

#include "glidesim/metrics/usage.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace glidesim::metrics {

using gridsim::Record;
using gridsim::RecordKind;

std::vector<JobInterval> running_intervals(const gridsim::Trace& trace) {
    std::vector<JobInterval> out;
    std::map<std::string, std::size_t> open;  // claim -> index
    for (const Record& r : trace.records()) {
        if (r.kind == RecordKind::JobStart) {
            JobInterval iv;
            iv.job = r.text("job");
            iv.site = r.text("site");
            iv.claim = r.text("claim");
            iv.start = r.time;
            iv.cpus = static_cast<int>(r.integer("cpus"));
            iv.gpus = static_cast<int>(r.integer("gpus"));
            open[iv.claim] = out.size();
            out.push_back(std::move(iv));
        } else if (r.kind == RecordKind::JobDone || r.kind == RecordKind::Preempt) {
            auto it = open.find(r.text("claim"));
            if (it == open.end()) throw gridsim::TraceFormatError("interval end without start: " + r.text("claim"));
            JobInterval& iv = out[it->second];
            iv.end = r.time;
            iv.completed = r.kind == RecordKind::JobDone;
            open.erase(it);
        }
    }
    for (const auto& [claim, idx] : open) {
        out[idx].end = std::max(out[idx].start, trace.header.until);
        out[idx].open = true;
    }
    return out;
}

std::vector<UsageBucket> aggregate_usage(const gridsim::Trace& trace, double bucket_hours) {
    const auto width = static_cast<SimTime>(std::llround(bucket_hours * static_cast<double>(kHour)));
    if (!(bucket_hours > 0) || width < 1) throw std::invalid_argument("bucket width must be at least one second");
    const SimTime until = trace.header.until;
    const auto windows = static_cast<std::size_t>(std::max<SimTime>(1, (until + width - 1) / width));

    std::map<std::string, std::size_t> site_index;
    std::vector<UsageBucket> out;
    for (const auto& s : trace.header.sites) {
        site_index[s.name] = out.size();
        for (std::size_t w = 0; w < windows; ++w) {
            UsageBucket b;
            b.site = s.name;
            b.window_start = static_cast<SimTime>(w) * width;
            b.window_hours = to_hours(width);
            out.push_back(b);
        }
    }
    for (const JobInterval& iv : running_intervals(trace)) {
        auto si = site_index.find(iv.site);
        if (si == site_index.end()) throw gridsim::TraceFormatError("interval at unknown site " + iv.site);
        for (SimTime t = iv.start; t < iv.end;) {
            const auto w = static_cast<std::size_t>(std::min<SimTime>(t / width, static_cast<SimTime>(windows) - 1));
            const SimTime edge = w + 1 == windows ? iv.end : std::min(iv.end, static_cast<SimTime>(w + 1) * width);
            UsageBucket& b = out[si->second + w];
            b.core_seconds += static_cast<std::int64_t>(iv.cpus) * (edge - t);
            b.gpu_seconds += static_cast<std::int64_t>(iv.gpus) * (edge - t);
            t = edge;
        }
    }
    return out;
}

double avg_cores(double core_hours, double window_hours) {
    if (!(window_hours > 0)) throw std::invalid_argument("window must be positive");
    return core_hours / window_hours;
}

double speedup(double baseline, double accelerated) {
    if (!(accelerated > 0)) throw std::invalid_argument("accelerated time must be positive");
    return baseline / accelerated;
}

}  // namespace glidesim::metrics
