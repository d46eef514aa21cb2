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

#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

#include "glidesim/gridsim/trace.hpp"
#include "glidesim/metrics/report.hpp"
#include "glidesim/metrics/usage.hpp"

using namespace glidesim;
using namespace glidesim::metrics;
using gridsim::RecordKind;
using gridsim::Trace;

namespace {

struct Interval {
    std::string job;
    std::string site;
    SimTime start;
    SimTime end;  // == until and open when `open`
    int cpus;
    int gpus;
    bool open = false;
};

Trace make_trace(SimTime until, std::vector<gridsim::SiteInfo> sites, std::vector<Interval> ivs) {
    Trace t;
    t.header.scenario = "synthetic";
    t.header.hash = "0";
    t.header.until = until;
    t.header.sites = std::move(sites);
    struct Ev {
        SimTime time;
        int order;  // starts before ends at the same second
        std::size_t idx;
    };
    std::vector<Ev> evs;
    for (std::size_t i = 0; i < ivs.size(); ++i) {
        evs.push_back({ivs[i].start, 0, i});
        if (!ivs[i].open) evs.push_back({ivs[i].end, 1, i});
    }
    std::stable_sort(evs.begin(), evs.end(),
                     [](const Ev& a, const Ev& b) { return std::tie(a.time, a.order) < std::tie(b.time, b.order); });
    for (std::size_t i = 0; i < ivs.size(); ++i) {
        t.add(0, RecordKind::JobSubmit, {{"job", ivs[i].job}, {"owner", "u"}});
    }
    for (const auto& e : evs) {
        const auto& iv = ivs[e.idx];
        const std::string claim = "c" + std::to_string(e.idx);
        const std::vector<gridsim::Field> common{{"job", iv.job},
                                                 {"owner", "u"},
                                                 {"slot", "slot_" + iv.job},
                                                 {"site", iv.site},
                                                 {"claim", claim},
                                                 {"cpus", std::to_string(iv.cpus)},
                                                 {"gpus", std::to_string(iv.gpus)}};
        if (e.order == 0) {
            auto f = common;
            f.push_back({"cache", "-"});
            t.add(e.time, RecordKind::JobStart, f);
        } else {
            auto f = common;
            f.push_back({"started", std::to_string(iv.start)});
            t.add(e.time, RecordKind::JobDone, f);
        }
    }
    t.summary = gridsim::replay_summary(t);
    return t;
}

double bucket_core_hours(const std::vector<UsageBucket>& bs, const std::string& site, SimTime start) {
    for (const auto& b : bs) {
        if (b.site == site && b.window_start == start) return b.core_hours();
    }
    throw std::runtime_error("no bucket");
}

}  // namespace

TEST_CASE("average cores and speedup") {
    CHECK(avg_cores(4.5e6, 720) == 6250.0);
    CHECK(avg_cores(45000, 720) == 62.5);
    CHECK(avg_cores(0, 17) == 0.0);
    CHECK_THROWS_AS(avg_cores(1, 0), std::invalid_argument);
    CHECK(speedup(463, 23) == doctest::Approx(20.13).epsilon(0.0005));
    CHECK(speedup(228, 14) == doctest::Approx(16.29).epsilon(0.0005));
    CHECK(speedup(7, 7) == 1.0);
    CHECK_THROWS_AS(speedup(1, 0), std::invalid_argument);
}

TEST_CASE("aggregate_usage: single window and boundary split") {
    const std::vector<gridsim::SiteInfo> sites{{"a", 8, 0}, {"b", 4, 2}};
    const auto t = make_trace(4 * kHour, sites,
                              {{"j1", "a", 0, 2 * kHour, 4, 0}, {"j2", "b", kHour, 3 * kHour, 2, 1}});
    const auto one = aggregate_usage(t, 4);
    CHECK(bucket_core_hours(one, "a", 0) == 8.0);
    const auto halves = aggregate_usage(t, 2);
    CHECK(bucket_core_hours(halves, "b", 0) == 2.0);
    CHECK(bucket_core_hours(halves, "b", 2 * kHour) == 2.0);
    CHECK(bucket_core_hours(halves, "a", 2 * kHour) == 0.0);
    CHECK(halves.size() == 4);
    CHECK_THROWS_AS(aggregate_usage(t, 0), std::invalid_argument);
}

TEST_CASE("aggregate_usage: per-second oracle and conservation on random traces") {
    std::mt19937_64 rng(31);
    auto pick = [&](std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng); };
    for (int round = 0; round < 60; ++round) {
        const SimTime until = pick(500, 5000);
        const std::vector<gridsim::SiteInfo> sites{{"x", 100, 10}, {"y", 100, 10}, {"z", 100, 10}};
        std::vector<Interval> ivs;
        const int n = static_cast<int>(pick(0, 40));
        for (int i = 0; i < n; ++i) {
            Interval iv;
            iv.job = "j" + std::to_string(i);
            iv.site = sites[static_cast<std::size_t>(pick(0, 2))].name;
            iv.start = pick(0, until - 1);
            iv.open = pick(0, 5) == 0;
            iv.end = iv.open ? until : pick(iv.start, until);
            iv.cpus = static_cast<int>(pick(1, 8));
            iv.gpus = static_cast<int>(pick(0, 2));
            ivs.push_back(iv);
        }
        const auto t = make_trace(until, sites, ivs);
        const double width_h = static_cast<double>(pick(60, 1200)) / 3600.0;
        const SimTime width = static_cast<SimTime>(std::llround(width_h * 3600));
        const auto bs = aggregate_usage(t, width_h);

        // second-by-second integration
        std::map<std::pair<std::string, SimTime>, std::int64_t> cores, gpus;
        std::int64_t total = 0;
        const SimTime last_window = ((until - 1) / width) * width;
        for (const auto& iv : ivs) {
            for (SimTime s = iv.start; s < iv.end; ++s) {
                const SimTime w = std::min((s / width) * width, last_window);
                cores[{iv.site, w}] += iv.cpus;
                gpus[{iv.site, w}] += iv.gpus;
                total += iv.cpus;
            }
        }
        std::int64_t bucket_sum = 0;
        for (const auto& b : bs) {
            CHECK(b.core_seconds == cores[{b.site, b.window_start}]);
            CHECK(b.gpu_seconds == gpus[{b.site, b.window_start}]);
            bucket_sum += b.core_seconds;
        }
        CHECK(bucket_sum == total);

        const auto rep = make_report(t, width_h);
        CHECK(rep.core_seconds == total);
        std::int64_t site_sum = 0;
        for (const auto& s : rep.sites) site_sum += s.core_seconds;
        CHECK(site_sum == total);

        // time-averaged concurrency, sampled per second
        double conc = 0;
        for (SimTime s = 0; s < until; ++s) {
            for (const auto& iv : ivs) conc += (s >= iv.start && s < iv.end) ? iv.cpus : 0;
        }
        const double direct = conc / static_cast<double>(until);
        const double via_hours = avg_cores(to_hours(rep.core_seconds), to_hours(until));
        CHECK(std::abs(via_hours - direct) <= 1e-9 * std::max(1.0, direct));
    }
}

TEST_CASE("percentiles: nearest rank") {
    const auto p = percentiles({5, 1, 4, 2, 3, 10, 9, 8, 7, 6});
    CHECK(p.count == 10);
    CHECK(p.p50 == 5);
    CHECK(p.p90 == 9);
    CHECK(p.p99 == 10);
    CHECK(p.max == 10);
    const auto e = percentiles({});
    CHECK(e.count == 0);
    CHECK(e.max == 0);
    std::mt19937_64 rng(4);
    for (int round = 0; round < 100; ++round) {
        std::vector<std::int64_t> v(static_cast<std::size_t>(1 + rng() % 300));
        for (auto& x : v) x = static_cast<std::int64_t>(rng() % 1000);
        auto sorted = v;
        std::sort(sorted.begin(), sorted.end());
        auto rank = [&](double q) {
            const auto k = static_cast<std::size_t>(std::ceil(q / 100.0 * static_cast<double>(sorted.size())));
            return sorted[std::max<std::size_t>(k, 1) - 1];
        };
        const auto got = percentiles(v);
        CHECK(got.p50 == rank(50));
        CHECK(got.p90 == rank(90));
        CHECK(got.p99 == rank(99));
    }
}

TEST_CASE("format_real and csv") {
    CHECK(format_real(0.1) == "0.1");
    CHECK(format_real(6250) == "6250");
    CHECK(format_real(1.0 / 3.0) == "0.3333333333333333");
    const std::vector<UsageBucket> bs{{"a", 0, 1.0, 7200, 3600}};
    CHECK(format_usage_csv(bs) == "site,windowStart,coreHours,gpuHours\na,0,2,1\n");
}

TEST_CASE("report is a pure function of the trace") {
    const std::vector<gridsim::SiteInfo> sites{{"a", 8, 0}};
    const auto t = make_trace(10 * kHour, sites, {{"j1", "a", 100, 5000, 2, 0}, {"j2", "a", 50, 0, 1, 0, true}});
    const auto text = format_report(make_report(t, 1));
    const auto again = Trace::parse(t.serialize());
    CHECK(format_report(make_report(again, 1)) == text);
    const auto ivs = running_intervals(t);
    REQUIRE(ivs.size() == 2);
    CHECK(ivs[0].job == "j2");
    CHECK(ivs[0].open);
    CHECK(ivs[0].end == 10 * kHour);
    CHECK(ivs[1].completed);
}
