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

#include "glidesim/glidein/frontend.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "glidesim/matchlang/match.hpp"

namespace glidesim::glidein {

int pressure(const EntryPoint& entry, int matchable, const PilotCounts& counts, const FrontendConfig& frontend) {
    if (matchable <= 0) return 0;
    const int desired = static_cast<int>(std::ceil(matchable * frontend.fraction)) + frontend.min_idle;
    const int pending = counts.idle + counts.queued;
    const int cap = std::min(entry.max_pilots - counts.alive, entry.max_idle_pilots - pending);
    return std::clamp(desired - pending, 0, std::max(0, cap));
}

int count_matchable(const EntryPoint& entry, const FrontendConfig& frontend,
                    std::span<const pool::JobState* const> idle_jobs) {
    const matchlang::Ad slot = synthetic_slot_ad(entry, frontend);
    std::unordered_map<std::uint64_t, bool> memo;
    int n = 0;
    for (const pool::JobState* job : idle_jobs) {
        bool ok;
        if (job->autocluster) {
            auto [it, fresh] = memo.try_emplace(*job->autocluster, false);
            if (fresh) it->second = matchlang::symmetric_match(job->ad, slot);
            ok = it->second;
        } else {
            ok = matchlang::symmetric_match(job->ad, slot);
        }
        n += ok ? 1 : 0;
    }
    return n;
}

PilotRequest compute_pressure(const EntryPoint& entry, std::span<const pool::JobState* const> idle_jobs,
                              const PilotCounts& counts, const FrontendConfig& frontend, std::uint64_t cycle) {
    const int matchable = count_matchable(entry, frontend, idle_jobs);
    return PilotRequest{entry.name, pressure(entry, matchable, counts, frontend), cycle};
}

std::vector<PilotRequest> frontend_cycle(std::span<const EntryPoint> entries,
                                         std::span<const pool::JobState* const> idle_jobs,
                                         const std::map<std::string, PilotCounts>& counts,
                                         const FrontendConfig& frontend, std::uint64_t cycle) {
    std::vector<PilotRequest> out;
    out.reserve(entries.size());
    for (const EntryPoint& e : entries) {
        auto it = counts.find(e.name);
        out.push_back(compute_pressure(e, idle_jobs, it == counts.end() ? PilotCounts{} : it->second, frontend, cycle));
    }
    return out;
}

}  // namespace glidesim::glidein
