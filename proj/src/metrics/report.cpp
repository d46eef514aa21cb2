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

#include "glidesim/metrics/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <unordered_map>

namespace glidesim::metrics {

using gridsim::Record;
using gridsim::RecordKind;

std::string format_real(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

Percentiles percentiles(std::vector<std::int64_t> values) {
    Percentiles p;
    p.count = values.size();
    if (values.empty()) return p;
    std::sort(values.begin(), values.end());
    auto rank = [&](int pct) {
        const auto n = values.size();
        auto k = static_cast<std::size_t>((static_cast<unsigned long long>(pct) * n + 99) / 100);
        return values[std::max<std::size_t>(k, 1) - 1];
    };
    p.p50 = rank(50);
    p.p90 = rank(90);
    p.p99 = rank(99);
    p.max = values.back();
    return p;
}

RunReport make_report(const gridsim::Trace& trace, double bucket_hours) {
    RunReport rep;
    rep.header = trace.header;
    rep.bucket_hours = bucket_hours;
    rep.buckets = aggregate_usage(trace, bucket_hours);
    rep.summary = trace.summary;
    rep.caches = trace.summary.caches;

    std::map<std::string, std::size_t> idx;
    for (const auto& s : trace.header.sites) {
        idx[s.name] = rep.sites.size();
        rep.sites.push_back({s.name, s.cores, s.gpus, 0, 0, 0});
    }
    for (const auto& b : rep.buckets) {
        auto& st = rep.sites[idx.at(b.site)];
        st.core_seconds += b.core_seconds;
        st.gpu_seconds += b.gpu_seconds;
        rep.core_seconds += b.core_seconds;
        rep.gpu_seconds += b.gpu_seconds;
    }

    std::unordered_map<std::string, SimTime> submitted;
    std::unordered_map<std::string, bool> seen_start;
    std::map<std::string, std::pair<SimTime, std::int64_t>> pilot_start;  // pilot -> (start, cpus)
    std::vector<std::int64_t> waits;
    for (const Record& r : trace.records()) {
        switch (r.kind) {
            case RecordKind::JobSubmit: submitted[r.text("job")] = r.time; break;
            case RecordKind::JobStart: {
                const std::string& job = r.text("job");
                if (!seen_start[job]) {
                    seen_start[job] = true;
                    auto it = submitted.find(job);
                    if (it != submitted.end()) waits.push_back(r.time - it->second);
                }
                break;
            }
            case RecordKind::PilotStart:
                pilot_start[r.text("pilot")] = {r.time, r.integer("cpus")};
                break;
            case RecordKind::PilotDead: {
                auto it = pilot_start.find(r.text("pilot"));
                if (it == pilot_start.end()) break;
                const std::int64_t cs = it->second.second * (r.time - it->second.first);
                rep.sites[idx.at(r.text("site"))].pilot_core_seconds += cs;
                rep.pilot_core_seconds += cs;
                pilot_start.erase(it);
                break;
            }
            default: break;
        }
    }
    // Pilots alive at the horizon.
    std::map<std::string, std::string> pilot_site;
    for (const Record& r : trace.records()) {
        if (r.kind == RecordKind::PilotStart) pilot_site[r.text("pilot")] = r.text("site");
    }
    for (const auto& [pilot, st] : pilot_start) {
        const std::int64_t cs = st.second * std::max<SimTime>(0, trace.header.until - st.first);
        rep.sites[idx.at(pilot_site.at(pilot))].pilot_core_seconds += cs;
        rep.pilot_core_seconds += cs;
    }
    rep.submit_to_start = percentiles(std::move(waits));

    std::vector<std::int64_t> runs;
    for (const auto& iv : running_intervals(trace)) {
        if (iv.completed) runs.push_back(iv.end - iv.start);
    }
    rep.start_to_done = percentiles(std::move(runs));
    return rep;
}

namespace {

void line(std::string& out, const char* fmt, auto... args) {
    const int n = std::snprintf(nullptr, 0, fmt, args...);
    const std::size_t at = out.size();
    out.resize(at + static_cast<std::size_t>(n) + 1);
    std::snprintf(out.data() + at, static_cast<std::size_t>(n) + 1, fmt, args...);
    out.pop_back();
}

void percentile_line(std::string& out, const char* name, const Percentiles& p) {
    line(out, "%s count=%zu p50=%lld p90=%lld p99=%lld max=%lld\n", name, p.count, static_cast<long long>(p.p50),
         static_cast<long long>(p.p90), static_cast<long long>(p.p99), static_cast<long long>(p.max));
}

}  // namespace

std::string format_report(const RunReport& r) {
    std::string out;
    const double horizon_h = to_hours(r.header.until);
    out += "glidesim report 1\n";
    line(out, "scenario %s hash=%s\n", r.header.scenario.c_str(), r.header.hash.c_str());
    line(out, "seed %llu\n", static_cast<unsigned long long>(r.header.seed));
    line(out, "until %lld\n", static_cast<long long>(r.header.until));
    line(out, "bucket_hours %s\n", format_real(r.bucket_hours).c_str());

    out += "\n[totals]\n";
    line(out, "core_hours %s\n", format_real(to_hours(r.core_seconds)).c_str());
    line(out, "gpu_hours %s\n", format_real(to_hours(r.gpu_seconds)).c_str());
    line(out, "pilot_core_hours %s\n", format_real(to_hours(r.pilot_core_seconds)).c_str());
    line(out, "pilot_idle_core_hours %s\n", format_real(to_hours(r.pilot_core_seconds - r.core_seconds)).c_str());
    line(out, "avg_cores %s\n", format_real(horizon_h > 0 ? avg_cores(to_hours(r.core_seconds), horizon_h) : 0.0).c_str());
    line(out, "avg_gpus %s\n", format_real(horizon_h > 0 ? avg_cores(to_hours(r.gpu_seconds), horizon_h) : 0.0).c_str());

    out += "\n[sites]\n";
    for (const auto& s : r.sites) {
        line(out, "%s cores=%d gpus=%d core_hours=%s gpu_hours=%s pilot_core_hours=%s\n", s.site.c_str(), s.cores,
             s.gpus, format_real(to_hours(s.core_seconds)).c_str(), format_real(to_hours(s.gpu_seconds)).c_str(),
             format_real(to_hours(s.pilot_core_seconds)).c_str());
    }

    out += "\n[usage]\n";
    for (const auto& b : r.buckets) {
        line(out, "%s %lld core_hours=%s gpu_hours=%s avg_cores=%s\n", b.site.c_str(),
             static_cast<long long>(b.window_start), format_real(b.core_hours()).c_str(),
             format_real(b.gpu_hours()).c_str(), format_real(avg_cores(b.core_hours(), b.window_hours)).c_str());
    }

    out += "\n[latency_seconds]\n";
    percentile_line(out, "submit_to_start", r.submit_to_start);
    percentile_line(out, "start_to_done", r.start_to_done);

    out += "\n[caches]\n";
    for (const auto& c : r.caches) {
        const auto total = c.hits + c.misses;
        line(out, "%s hits=%lld misses=%lld hit_ratio=%s bytes_from_cache=%lld bytes_from_origin=%lld evictions=%lld\n",
             c.name.c_str(), static_cast<long long>(c.hits), static_cast<long long>(c.misses),
             format_real(total ? static_cast<double>(c.hits) / static_cast<double>(total) : 0.0).c_str(),
             static_cast<long long>(c.bytes_from_cache), static_cast<long long>(c.bytes_from_origin),
             static_cast<long long>(c.evictions));
    }

    out += "\n[counters]\n";
    for (const auto& [k, v] : r.summary.counters) line(out, "%s %lld\n", k.c_str(), static_cast<long long>(v));
    return out;
}

std::string format_usage_csv(const std::vector<UsageBucket>& buckets) {
    std::string out = "site,windowStart,coreHours,gpuHours\n";
    for (const auto& b : buckets) {
        line(out, "%s,%lld,%s,%s\n", b.site.c_str(), static_cast<long long>(b.window_start),
             format_real(b.core_hours()).c_str(), format_real(b.gpu_hours()).c_str());
    }
    return out;
}

}  // namespace glidesim::metrics
